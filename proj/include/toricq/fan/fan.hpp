#pragma once

#include "toricq/errors.hpp"
#include "toricq/exactlin/lp.hpp"
#include "toricq/exactlin/matrix.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace toricq {

using Cone = std::vector<std::size_t>;

/// A simplicial fan given by primitive ray generators in Z^n and its maximal
/// cones as ray-index lists. Index order inside a cone is significant: it
/// fixes the chart coordinate order z_1, ..., z_n.
struct Fan {
  std::size_t rank = 0;
  std::vector<IntVector> rays;
  std::vector<Cone> maxcones;

  std::size_t num_rays() const noexcept { return rays.size(); }

  /// |rays| x rank matrix whose rows are the ray generators.
  IntMatrix ray_matrix() const {
    IntMatrix m(rays.size(), rank, Integer(0));
    for (std::size_t r = 0; r < rays.size(); ++r)
      for (std::size_t j = 0; j < rank; ++j) m(r, j) = rays[r][j];
    return m;
  }

  /// rank x rank matrix whose columns are the rays of a maximal cone.
  IntMatrix cone_matrix(std::size_t sigma) const {
    IntMatrix m(rank, rank, Integer(0));
    const auto &c = maxcones.at(sigma);
    for (std::size_t j = 0; j < c.size(); ++j)
      for (std::size_t i = 0; i < rank; ++i) m(i, j) = rays.at(c[j])[i];
    return m;
  }

  friend bool operator==(const Fan &, const Fan &) = default;
};

struct Diagnostics {
  std::vector<std::string> violations;
  bool ok() const noexcept { return violations.empty(); }
};

namespace detail {

inline std::string vec_str(const IntVector &v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i].get_str();
  return s + ")";
}

inline std::set<std::size_t> as_set(const Cone &c) { return {c.begin(), c.end()}; }

// Cones meet in a common face iff some m vanishes on the shared rays and is
// strictly positive on the rest of a and strictly negative on the rest of b.
inline bool meet_properly(const Fan &f, const Cone &a, const Cone &b) {
  auto sa = as_set(a), sb = as_set(b);
  std::vector<RatVector> eq, strict;
  for (auto r : sa) {
    RatVector u = to_rationals(f.rays[r]);
    if (sb.count(r)) eq.push_back(u);
    else strict.push_back(u);
  }
  for (auto r : sb) {
    if (sa.count(r)) continue;
    RatVector u = to_rationals(f.rays[r]);
    for (auto &x : u) x = -x;
    strict.push_back(u);
  }
  return lp::strictly_feasible(f.rank, eq, strict).has_value();
}

// wall (sorted ray subset of size n-1) -> maximal cones containing it
inline std::map<std::vector<std::size_t>, std::vector<std::size_t>> walls(const Fan &f) {
  std::map<std::vector<std::size_t>, std::vector<std::size_t>> w;
  for (std::size_t s = 0; s < f.maxcones.size(); ++s) {
    auto sorted = f.maxcones[s];
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t drop = 0; drop < sorted.size(); ++drop) {
      std::vector<std::size_t> wall;
      for (std::size_t k = 0; k < sorted.size(); ++k)
        if (k != drop) wall.push_back(sorted[k]);
      w[wall].push_back(s);
    }
  }
  return w;
}

} // namespace detail

/// Checks every structural invariant of a fan; violations are reported, not thrown.
inline Diagnostics validate(const Fan &f) {
  Diagnostics d;
  auto fail = [&](std::string msg) { d.violations.push_back(std::move(msg)); };
  const std::size_t n = f.rank;
  if (n == 0) fail("rank must be positive");
  if (f.rays.empty()) fail("fan has no rays");
  if (f.maxcones.empty()) fail("fan has no maximal cones");

  bool rays_ok = true;
  for (std::size_t r = 0; r < f.rays.size(); ++r) {
    const auto &u = f.rays[r];
    if (u.size() != n) {
      fail("ray " + std::to_string(r) + " has length " + std::to_string(u.size()) + ", expected " + std::to_string(n));
      rays_ok = false;
      continue;
    }
    Integer g = content(u);
    if (g == 0) {
      fail("ray " + std::to_string(r) + " is zero");
      rays_ok = false;
    } else if (g != 1) {
      fail("ray " + std::to_string(r) + " " + detail::vec_str(u) + " is not primitive");
    }
    for (std::size_t s = 0; s < r; ++s)
      if (f.rays[s] == u) fail("rays " + std::to_string(s) + " and " + std::to_string(r) + " coincide");
  }

  std::vector<bool> used(f.rays.size(), false);
  bool cones_ok = rays_ok;
  std::set<std::set<std::size_t>> seen;
  for (std::size_t s = 0; s < f.maxcones.size(); ++s) {
    const auto &c = f.maxcones[s];
    const std::string name = "cone " + std::to_string(s);
    if (c.size() != n) {
      fail(name + " has " + std::to_string(c.size()) + " rays, expected " + std::to_string(n));
      cones_ok = false;
    }
    bool in_range = true;
    for (auto r : c) {
      if (r >= f.rays.size()) {
        fail(name + " refers to missing ray " + std::to_string(r));
        in_range = false;
        cones_ok = false;
      } else {
        used[r] = true;
      }
    }
    auto set = detail::as_set(c);
    if (set.size() != c.size()) {
      fail(name + " repeats a ray");
      cones_ok = false;
    }
    if (!seen.insert(set).second) {
      fail(name + " duplicates an earlier cone");
      cones_ok = false;
    }
    if (in_range && c.size() == n && rays_ok && determinant(f.cone_matrix(s)) == 0) {
      fail(name + " has linearly dependent rays");
      cones_ok = false;
    }
  }
  for (std::size_t r = 0; r < f.rays.size(); ++r)
    if (!used[r]) fail("ray " + std::to_string(r) + " lies in no maximal cone");

  if (cones_ok)
    for (std::size_t a = 0; a < f.maxcones.size(); ++a)
      for (std::size_t b = a + 1; b < f.maxcones.size(); ++b)
        if (!detail::meet_properly(f, f.maxcones[a], f.maxcones[b]))
          fail("cones " + std::to_string(a) + " and " + std::to_string(b) + " do not meet in a common face");
  return d;
}

/// Every maximal cone is generated by a basis of Z^n.
inline bool is_smooth(const Fan &f) {
  for (std::size_t s = 0; s < f.maxcones.size(); ++s)
    if (abs(determinant(f.cone_matrix(s))) != 1) return false;
  return true;
}

/// Wall criterion: every facet of a maximal cone lies in exactly two maximal
/// cones and the cone adjacency graph is connected.
inline bool is_complete(const Fan &f) {
  if (f.maxcones.empty()) return false;
  auto w = detail::walls(f);
  std::vector<std::vector<std::size_t>> adj(f.maxcones.size());
  for (const auto &[wall, cones] : w) {
    if (cones.size() != 2) return false;
    adj[cones[0]].push_back(cones[1]);
    adj[cones[1]].push_back(cones[0]);
  }
  std::vector<bool> seen(f.maxcones.size(), false);
  std::vector<std::size_t> stack{0};
  seen[0] = true;
  std::size_t count = 1;
  while (!stack.empty()) {
    auto s = stack.back();
    stack.pop_back();
    for (auto t : adj[s])
      if (!seen[t]) {
        seen[t] = true;
        ++count;
        stack.push_back(t);
      }
  }
  return count == f.maxcones.size();
}

/// Existence of a strictly convex support function, decided exactly.
///
/// Unknowns are the values h_rho on the rays. Across each wall
/// sigma = tau + {rho}, sigma' = tau + {rho'} write u_rho' = sum_j c_j u_j over the
/// rays of sigma; strict convexity asks h_rho' - sum_j c_j h_j > 0. The
/// system is homogeneous, so it is solved with a gap variable (lp::strictly_feasible).
inline bool is_projective(const Fan &f) {
  const std::size_t N = f.num_rays();
  std::vector<RatVector> strict;
  for (const auto &[wall, cones] : detail::walls(f)) {
    if (cones.size() != 2) continue;
    for (int side = 0; side < 2; ++side) {
      const auto &sigma = f.maxcones[cones[side]];
      const auto &other = f.maxcones[cones[1 - side]];
      std::size_t outside = *std::find_if(other.begin(), other.end(), [&](std::size_t r) {
        return std::find(sigma.begin(), sigma.end(), r) == sigma.end();
      });
      RatVector c = solve(to_rational(f.cone_matrix(cones[side])), to_rationals(f.rays[outside]));
      RatVector row(N, 0);
      row[outside] += 1;
      for (std::size_t j = 0; j < sigma.size(); ++j) row[sigma[j]] -= c[j];
      strict.push_back(std::move(row));
    }
  }
  return lp::strictly_feasible(N, {}, strict).has_value();
}

/// Chart data of a smooth maximal cone: the dual basis m_i with
/// <m_i, u_{rho_j}> = delta_ij and the exponent table E[i][rho] = <m_i, u_rho>,
/// i.e. z_i = prod_rho x_rho^{E[i][rho]}.
struct ChartFrame {
  std::size_t cone = 0;
  std::vector<std::size_t> rays;
  std::vector<IntVector> dual_basis;
  IntMatrix exponents;
};

inline ChartFrame chart_frame(const Fan &f, std::size_t sigma) {
  if (sigma >= f.maxcones.size()) throw std::out_of_range("chart_frame: no maximal cone " + std::to_string(sigma));
  IntMatrix c = f.cone_matrix(sigma);
  if (abs(determinant(c)) != 1)
    throw Error(ErrorKind::NotSmoothCone, "maximal cone " + std::to_string(sigma) + " is not smooth");
  // rows of C^-1 are the dual basis
  RatMatrix inv = inverse(to_rational(c));
  ChartFrame frame{sigma, f.maxcones[sigma], {}, IntMatrix(f.rank, f.num_rays(), Integer(0))};
  for (std::size_t i = 0; i < f.rank; ++i) {
    IntVector m(f.rank);
    for (std::size_t j = 0; j < f.rank; ++j) m[j] = inv(i, j).get_num();
    for (std::size_t r = 0; r < f.num_rays(); ++r) {
      Integer s = 0;
      for (std::size_t j = 0; j < f.rank; ++j) s += m[j] * f.rays[r][j];
      frame.exponents(i, r) = s;
    }
    frame.dual_basis.push_back(std::move(m));
  }
  return frame;
}

} // namespace toricq

#pragma once

#include "toricq/coxring/polynomial.hpp"
#include "toricq/exactlin/fp_linalg.hpp"
#include "toricq/exactlin/polytope.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace toricq {

/// All monomials of class d, as lattice points of
/// P_b = {m : <m, u_rho> + b_rho >= 0} for a representative divisor b of d,
/// mapped to exponent vectors (<m, u_rho> + b_rho)_rho. Sorted descending, so
/// x0 comes before x1. Empty when the class is not effective.
inline std::vector<Monomial> graded_piece(const Fan &f, const ClassGroup &cg, const ClassVector &d) {
  const IntVector b = cg.representative(d);
  std::vector<Halfspace> system;
  for (std::size_t r = 0; r < f.num_rays(); ++r) system.push_back({to_rationals(f.rays[r]), Rational(b[r])});
  std::vector<Monomial> out;
  for (const auto &m : integer_points(system, f.rank)) {
    Monomial mono{std::vector<std::int64_t>(f.num_rays())};
    for (std::size_t r = 0; r < f.num_rays(); ++r) {
      Integer e = b[r];
      for (std::size_t j = 0; j < f.rank; ++j) e += m[j] * f.rays[r][j];
      mono.exponents[r] = e.get_si();
    }
    out.push_back(std::move(mono));
  }
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

/// V_rho = H^0(X, O(D_rho)) = S_{[D_rho]}.
inline std::vector<Monomial> v_rho(const Fan &f, const ClassGroup &cg, std::size_t rho) {
  return graded_piece(f, cg, cg.degree_of_ray(rho));
}

/// dim H^0(X, T_X) = sum_rho dim V_rho - rank of the Euler span in (+)V_rho,
/// the rank taken by exact elimination over Q.
inline std::size_t h0_tangent_dim(const Fan &f, const ClassGroup &cg) {
  std::size_t total = 0;
  std::vector<std::size_t> diag_coord(f.num_rays());
  for (std::size_t r = 0; r < f.num_rays(); ++r) {
    auto basis = v_rho(f, cg, r);
    auto it = std::find(basis.begin(), basis.end(), Monomial::variable(f.num_rays(), r));
    diag_coord[r] = total + static_cast<std::size_t>(it - basis.begin());
    total += basis.size();
  }
  RatMatrix euler(cg.rank, total, Rational(0));
  for (std::size_t i = 0; i < cg.rank; ++i)
    for (std::size_t r = 0; r < f.num_rays(); ++r) euler(i, diag_coord[r]) = cg.degrees(i, r);
  return total - rank(euler);
}

/// Coordinates of a homogeneous polynomial in a monomial basis of its piece.
inline FpVector coordinates(const GradedPolynomial &q, const std::vector<Monomial> &basis) {
  FpVector v;
  v.reserve(basis.size());
  for (const auto &m : basis) v.push_back(q.coefficient(m));
  return v;
}

inline GradedPolynomial from_coordinates(const FieldPtr &F, const ClassVector &d, const std::vector<Monomial> &basis,
                                         const FpVector &v) {
  GradedPolynomial q(F, d);
  for (std::size_t i = 0; i < basis.size(); ++i) q.add_term(basis[i], v[i]);
  return q;
}

/// Distinct classes sum_rho c_rho [D_rho] with c >= 0 and sum c_rho <= bound,
/// sorted. These are the effective classes reached by monomials of total
/// degree at most `bound`.
inline std::vector<ClassVector> effective_classes(const ClassGroup &cg, std::int64_t bound) {
  std::set<ClassVector> seen;
  const std::size_t N = cg.num_rays();
  std::vector<std::int64_t> c(N, 0);
  std::function<void(std::size_t, std::int64_t)> rec = [&](std::size_t r, std::int64_t left) {
    if (r == N) {
      seen.insert(cg.degree(Monomial{c}));
      return;
    }
    for (std::int64_t k = 0; k <= left; ++k) {
      c[r] = k;
      rec(r + 1, left - k);
    }
    c[r] = 0;
  };
  rec(0, bound);
  return {seen.begin(), seen.end()};
}

} // namespace toricq

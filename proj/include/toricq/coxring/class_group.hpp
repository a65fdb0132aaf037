#pragma once

#include "toricq/errors.hpp"
#include "toricq/exactlin/normal_form.hpp"
#include "toricq/fan/fan.hpp"

#include <compare>

namespace toricq {

using ClassVector = IntVector;

/// A monomial of the Cox ring, exponents indexed by the fan's ray order.
struct Monomial {
  std::vector<std::int64_t> exponents;

  static Monomial one(std::size_t rays) { return {std::vector<std::int64_t>(rays, 0)}; }
  static Monomial variable(std::size_t rays, std::size_t rho) {
    auto m = one(rays);
    m.exponents[rho] = 1;
    return m;
  }

  std::size_t size() const noexcept { return exponents.size(); }
  std::int64_t operator[](std::size_t i) const { return exponents[i]; }

  friend Monomial operator*(const Monomial &a, const Monomial &b) {
    Monomial m = a;
    for (std::size_t i = 0; i < m.exponents.size(); ++i) m.exponents[i] += b.exponents[i];
    return m;
  }
  bool divides(const Monomial &b) const {
    for (std::size_t i = 0; i < exponents.size(); ++i)
      if (exponents[i] > b.exponents[i]) return false;
    return true;
  }
  std::int64_t total_degree() const {
    std::int64_t s = 0;
    for (auto e : exponents) s += e;
    return s;
  }

  friend auto operator<=>(const Monomial &, const Monomial &) = default;
  friend bool operator==(const Monomial &, const Monomial &) = default;

  std::string to_string() const {
    std::string s;
    for (std::size_t i = 0; i < exponents.size(); ++i) {
      if (exponents[i] == 0) continue;
      if (!s.empty()) s += "*";
      s += "x" + std::to_string(i);
      if (exponents[i] != 1) s += "^" + std::to_string(exponents[i]);
    }
    return s.empty() ? "1" : s;
  }
};

/// Cl(X) = Z^{Sigma(1)} / {(<m, u_rho>)_rho}, torsion free of rank r = |Sigma(1)| - n
/// for smooth complete fans. Coordinates are canonical: `degrees` is the row
/// Hermite normal form of any surjection Z^{Sigma(1)} -> Z^r killing the
/// ray-pairing image, so they depend only on the fan.
struct ClassGroup {
  std::size_t rank = 0;
  IntMatrix degrees; // r x |Sigma(1)|
  IntMatrix section; // |Sigma(1)| x r, degrees * section = identity

  std::size_t num_rays() const noexcept { return degrees.cols(); }

  ClassVector degree(const Monomial &m) const {
    ClassVector d(rank, 0);
    for (std::size_t i = 0; i < rank; ++i)
      for (std::size_t r = 0; r < m.size(); ++r) d[i] += degrees(i, r) * m[r];
    return d;
  }
  ClassVector degree_of_ray(std::size_t rho) const {
    ClassVector d(rank);
    for (std::size_t i = 0; i < rank; ++i) d[i] = degrees(i, rho);
    return d;
  }
  /// A divisor (integer vector over the rays) with the given class.
  IntVector representative(const ClassVector &d) const {
    if (d.size() != rank)
      throw Error(ErrorKind::InvalidClass, "class vector has length " + std::to_string(d.size()) + ", expected " + std::to_string(rank));
    IntVector b(num_rays(), 0);
    for (std::size_t r = 0; r < num_rays(); ++r)
      for (std::size_t i = 0; i < rank; ++i) b[r] += section(r, i) * d[i];
    return b;
  }
};

inline ClassGroup class_group(const Fan &f) {
  const std::size_t N = f.num_rays(), n = f.rank;
  auto snf = smith_normal_form(f.ray_matrix());
  auto factors = snf.invariant_factors();
  if (factors.size() != n)
    throw Error(ErrorKind::TorsionClassGroup, "rays do not span N; class group has free part of unexpected rank");
  for (const auto &d : factors)
    if (d != 1) throw Error(ErrorKind::TorsionClassGroup, "class group has torsion (invariant factor " + d.get_str() + ")");

  const std::size_t r = N - n;
  ClassGroup cg;
  cg.rank = r;
  if (r == 0) {
    cg.degrees = IntMatrix(0, N, std::vector<Integer>{});
    cg.section = IntMatrix(N, 0, std::vector<Integer>{});
    return cg;
  }
  // R = U S V, so the last r rows of U^-1 map Z^N onto coker R
  IntMatrix raw(r, N, Integer(0));
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < N; ++j) raw(i, j) = snf.U_inv(n + i, j);
  cg.degrees = hermite_rows(raw);

  auto dsnf = smith_normal_form(cg.degrees); // = U' [I 0] V'
  IntMatrix sel(N, r, Integer(0));
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < r; ++j) sel(i, j) = dsnf.V_inv(i, j);
  cg.section = sel * dsnf.U_inv;
  return cg;
}

} // namespace toricq

#pragma once

#include "toricq/exactlin/normal_form.hpp"

#include <stdexcept>

namespace toricq {

/// Full-rank lattice in Q^n, stored by its canonical basis: the columns of
/// `basis()` are in column Hermite normal form (lower triangular, positive
/// pivots, entries left of each pivot reduced modulo it). Two lattices are
/// equal exactly when their bases are equal.
class Lattice {
public:
  /// Lattice generated by `gens` (and Z^n when `include_standard`).
  static Lattice from_generators(std::size_t n, const std::vector<RatVector> &gens,
                                 bool include_standard = true) {
    std::vector<RatVector> all;
    if (include_standard)
      for (std::size_t i = 0; i < n; ++i) {
        RatVector e(n, 0);
        e[i] = 1;
        all.push_back(std::move(e));
      }
    for (const auto &g : gens) {
      if (g.size() != n) throw std::invalid_argument("Lattice: generator of wrong length");
      all.push_back(g);
    }
    Integer den = 1;
    for (const auto &g : all)
      for (const auto &x : g) den = lcm(den, x.get_den());

    IntMatrix rows(all.size(), n, Integer(0));
    for (std::size_t i = 0; i < all.size(); ++i)
      for (std::size_t j = 0; j < n; ++j) {
        Rational s = all[i][j] * den;
        rows(i, j) = s.get_num();
      }
    IntMatrix h = hermite_rows(rows);
    if (h.rows() != n) throw std::invalid_argument("Lattice: generators do not span Q^n");

    RatMatrix basis(n, n, Rational(0));
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t i = 0; i < n; ++i) {
        Rational q(h(k, i), den);
        q.canonicalize();
        basis(i, k) = q;
      }
    return Lattice(std::move(basis));
  }

  static Lattice standard(std::size_t n) { return from_generators(n, {}); }

  std::size_t rank() const noexcept { return basis_.rows(); }
  const RatMatrix &basis() const noexcept { return basis_; }
  RatVector basis_vector(std::size_t k) const { return basis_.column(k); }

  /// [L : Z^n] as a rational (1 / |det basis|); an integer for overlattices.
  Rational index() const {
    Rational det = 1;
    for (std::size_t i = 0; i < rank(); ++i) det *= basis_(i, i);
    return 1 / abs(det);
  }

  /// Coordinates of v in the canonical basis.
  RatVector coordinates(const RatVector &v) const { return solve(basis_, v); }

  bool contains(const RatVector &v) const {
    for (const auto &c : coordinates(v))
      if (c.get_den() != 1) return false;
    return true;
  }

  bool is_overlattice() const {
    for (std::size_t i = 0; i < rank(); ++i) {
      RatVector e(rank(), 0);
      e[i] = 1;
      if (!contains(e)) return false;
    }
    return true;
  }

  /// {m : <m, v> integral for all v in L}.
  Lattice dual() const {
    RatMatrix inv = inverse(basis_);
    std::vector<RatVector> gens;
    for (std::size_t i = 0; i < rank(); ++i) gens.push_back(inv.row_vector(i));
    return from_generators(rank(), gens, false);
  }

  friend bool operator==(const Lattice &a, const Lattice &b) { return a.basis_ == b.basis_; }

private:
  explicit Lattice(RatMatrix basis) : basis_(std::move(basis)) {}
  RatMatrix basis_;
};

} // namespace toricq

#pragma once

#include "toricq/exactlin/galois_field.hpp"
#include "toricq/exactlin/matrix.hpp"

#include <map>

namespace toricq {

using FpMatrix = Matrix<FieldElement>;
using FpVector = std::vector<FieldElement>;

inline FpMatrix fp_identity(const GaloisField &F, std::size_t n) {
  return FpMatrix::identity(n, F.zero(), F.one());
}

inline FpMatrix fp_multiply(const FpMatrix &a, const FpMatrix &b, const GaloisField &F) {
  return multiply(a, b, F.zero());
}

inline FpVector fp_apply(const FpMatrix &a, const FpVector &x, const GaloisField &F) {
  return apply(a, x, F.zero());
}

/// Reduced row echelon form in place; returns the pivot columns.
inline std::vector<std::size_t> fp_rref(FpMatrix &a) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
    std::size_t piv = r;
    while (piv < a.rows() && a(piv, c).is_zero()) ++piv;
    if (piv == a.rows()) continue;
    a.swap_rows(r, piv);
    FieldElement s = a(r, c).inverse();
    for (std::size_t j = c; j < a.cols(); ++j) a(r, j) *= s;
    for (std::size_t i = 0; i < a.rows(); ++i) {
      if (i == r || a(i, c).is_zero()) continue;
      FieldElement f = a(i, c);
      for (std::size_t j = c; j < a.cols(); ++j) a(i, j) -= f * a(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

inline std::size_t fp_rank(const FpMatrix &m) {
  FpMatrix a = m;
  return fp_rref(a).size();
}

/// Basis of {x : m·x = 0}, one vector per free column, in column order.
inline std::vector<FpVector> fp_kernel(const FpMatrix &m, const GaloisField &F) {
  FpMatrix a = m;
  auto pivots = fp_rref(a);
  std::vector<bool> is_pivot(a.cols(), false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<FpVector> basis;
  for (std::size_t f = 0; f < a.cols(); ++f) {
    if (is_pivot[f]) continue;
    FpVector v(a.cols(), F.zero());
    v[f] = F.one();
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -a(i, f);
    basis.push_back(std::move(v));
  }
  return basis;
}

/// Inverse of a square matrix; throws std::domain_error when singular.
inline FpMatrix fp_inverse(const FpMatrix &m, const GaloisField &F) {
  const std::size_t n = m.rows();
  if (n == 0) return m;
  FpMatrix aug(n, 2 * n, F.zero());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = F.one();
  }
  auto pivots = fp_rref(aug);
  if (pivots.size() < n || pivots[n - 1] != n - 1) throw std::domain_error("fp_inverse: singular matrix");
  FpMatrix inv(n, n, F.zero());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
  return inv;
}

inline FpMatrix fp_power(const FpMatrix &m, std::uint64_t k, const GaloisField &F) {
  FpMatrix r = fp_identity(F, m.rows());
  FpMatrix b = m;
  while (k) {
    if (k & 1) r = fp_multiply(r, b, F);
    b = fp_multiply(b, b, F);
    k >>= 1;
  }
  return r;
}

/// Eigenspaces of a matrix with mx^p = mx. Such a matrix is diagonalizable
/// with eigenvalues in F_p since its minimal polynomial divides t^p - t.
/// Only nonzero eigenspaces appear in the result, keyed by residue 0..p-1.
inline std::map<std::int64_t, std::vector<FpVector>> fp_eigendecompose(const FpMatrix &mx,
                                                                         const GaloisField &F) {
  if (mx.rows() != mx.cols()) throw std::invalid_argument("fp_eigendecompose: matrix not square");
  const auto p = F.characteristic();
  if (!(fp_power(mx, static_cast<std::uint64_t>(p), F) == mx))
    throw Error(ErrorKind::NotIdempotentUnderP, "matrix does not satisfy M^p = M");
  std::map<std::int64_t, std::vector<FpVector>> spaces;
  for (std::int64_t c = 0; c < p; ++c) {
    FpMatrix shifted = mx;
    for (std::size_t i = 0; i < mx.rows(); ++i) shifted(i, i) -= F.from_int(c);
    auto ker = fp_kernel(shifted, F);
    if (!ker.empty()) spaces.emplace(c, std::move(ker));
  }
  return spaces;
}

} // namespace toricq

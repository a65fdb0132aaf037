#pragma once

#include "toricq/exactlin/matrix.hpp"

#include <optional>
#include <utility>

namespace toricq {

/// Smith normal form A = U·S·V with U, V unimodular and S diagonal,
/// d_1 | d_2 | ... , all d_i >= 0. The inverses of U and V are kept as well
/// since every caller that needs a transform also needs its inverse.
struct SmithForm {
  IntMatrix U, S, V;
  IntMatrix U_inv, V_inv;

  std::vector<Integer> invariant_factors() const {
    std::vector<Integer> d;
    for (std::size_t i = 0; i < std::min(S.rows(), S.cols()); ++i)
      if (S(i, i) != 0) d.push_back(S(i, i));
    return d;
  }
};

namespace detail {

// Tracks S = L·A·R together with U = L^-1 and V = R^-1 under elementary ops.
struct SmithState {
  IntMatrix S, L, U, R, V;

  void swap_rows(std::size_t i, std::size_t j) {
    S.swap_rows(i, j);
    L.swap_rows(i, j);
    U.swap_cols(i, j);
  }
  void swap_cols(std::size_t i, std::size_t j) {
    S.swap_cols(i, j);
    R.swap_cols(i, j);
    V.swap_rows(i, j);
  }
  // row_dst += k * row_src
  void add_row(std::size_t dst, std::size_t src, const Integer &k) {
    if (k == 0) return;
    for (std::size_t c = 0; c < S.cols(); ++c) S(dst, c) += k * S(src, c);
    for (std::size_t c = 0; c < L.cols(); ++c) L(dst, c) += k * L(src, c);
    for (std::size_t r = 0; r < U.rows(); ++r) U(r, src) -= k * U(r, dst);
  }
  // col_dst += k * col_src
  void add_col(std::size_t dst, std::size_t src, const Integer &k) {
    if (k == 0) return;
    for (std::size_t r = 0; r < S.rows(); ++r) S(r, dst) += k * S(r, src);
    for (std::size_t r = 0; r < R.rows(); ++r) R(r, dst) += k * R(r, src);
    for (std::size_t c = 0; c < V.cols(); ++c) V(src, c) -= k * V(dst, c);
  }
  void negate_row(std::size_t i) {
    for (std::size_t c = 0; c < S.cols(); ++c) S(i, c) = -S(i, c);
    for (std::size_t c = 0; c < L.cols(); ++c) L(i, c) = -L(i, c);
    for (std::size_t r = 0; r < U.rows(); ++r) U(r, i) = -U(r, i);
  }
};

} // namespace detail

inline SmithForm smith_normal_form(const IntMatrix &A) {
  const std::size_t m = A.rows(), n = A.cols();
  detail::SmithState st{A, identity_int(m), identity_int(m), identity_int(n), identity_int(n)};
  auto &S = st.S;

  for (std::size_t t = 0; t < std::min(m, n); ++t) {
    // pivot: smallest nonzero magnitude in the trailing block
    std::optional<std::pair<std::size_t, std::size_t>> best;
    for (std::size_t i = t; i < m; ++i)
      for (std::size_t j = t; j < n; ++j)
        if (S(i, j) != 0 && (!best || abs(S(i, j)) < abs(S(best->first, best->second))))
          best = {i, j};
    if (!best) break;
    st.swap_rows(t, best->first);
    st.swap_cols(t, best->second);

    for (;;) {
      bool clean = true;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (S(i, t) == 0) continue;
        st.add_row(i, t, -floor_div(S(i, t), S(t, t)));
        if (S(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (S(t, j) == 0) continue;
        st.add_col(j, t, -floor_div(S(t, j), S(t, t)));
        if (S(t, j) != 0) clean = false;
      }
      if (!clean) {
        // a remainder smaller than the pivot exists; move it in and repeat
        std::size_t bi = t, bj = t;
        for (std::size_t i = t + 1; i < m; ++i)
          if (S(i, t) != 0 && abs(S(i, t)) < abs(S(bi, bj))) bi = i, bj = t;
        for (std::size_t j = t + 1; j < n; ++j)
          if (S(t, j) != 0 && abs(S(t, j)) < abs(S(bi, bj))) bi = t, bj = j;
        st.swap_rows(t, bi);
        st.swap_cols(t, bj);
        continue;
      }
      std::optional<std::size_t> bad_row;
      for (std::size_t i = t + 1; i < m && !bad_row; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (S(i, j) % S(t, t) != 0) {
            bad_row = i;
            break;
          }
      if (!bad_row) break;
      st.add_row(t, *bad_row, 1);
    }
    if (S(t, t) < 0) st.negate_row(t);
  }
  return SmithForm{st.U, st.S, st.V, st.L, st.R};
}

/// Row-style Hermite normal form: echelon, positive pivots, entries above
/// each pivot reduced into [0, pivot). Zero rows are dropped, so the result
/// has exactly rank(A) rows. Unique for the row lattice of A.
inline IntMatrix hermite_rows(const IntMatrix &A) {
  IntMatrix H = A;
  const std::size_t m = H.rows(), n = H.cols();
  auto add_row = [&](std::size_t dst, std::size_t src, const Integer &k) {
    if (k == 0) return;
    for (std::size_t c = 0; c < n; ++c) H(dst, c) += k * H(src, c);
  };
  std::size_t r = 0;
  for (std::size_t c = 0; c < n && r < m; ++c) {
    for (;;) {
      std::optional<std::size_t> best;
      std::size_t nonzero = 0;
      for (std::size_t i = r; i < m; ++i)
        if (H(i, c) != 0) {
          ++nonzero;
          if (!best || abs(H(i, c)) < abs(H(*best, c))) best = i;
        }
      if (!best) break;
      H.swap_rows(r, *best);
      if (nonzero == 1) break;
      for (std::size_t i = r + 1; i < m; ++i)
        if (H(i, c) != 0) add_row(i, r, -floor_div(H(i, c), H(r, c)));
    }
    if (H(r, c) == 0) continue;
    if (H(r, c) < 0)
      for (std::size_t j = 0; j < n; ++j) H(r, j) = -H(r, j);
    for (std::size_t i = 0; i < r; ++i) add_row(i, r, -floor_div(H(i, c), H(r, c)));
    ++r;
  }
  std::vector<Integer> data(H.entries().begin(), H.entries().begin() + static_cast<std::ptrdiff_t>(r * n));
  return IntMatrix(r, n, std::move(data));
}

} // namespace toricq

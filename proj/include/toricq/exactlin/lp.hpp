#pragma once

#include "toricq/exactlin/matrix.hpp"

#include <optional>

namespace toricq::lp {

enum class Sense { GreaterEq, LessEq, Equal };

struct Constraint {
  RatVector coeffs;
  Sense sense;
  Rational rhs;
};

enum class Status { Optimal, Infeasible, Unbounded };

struct Result {
  Status status;
  Rational value;
  RatVector point;
};

namespace detail {

// Dense tableau; the last column is the right-hand side and the last row the
// objective (reduced costs). Bland's rule throughout, so no cycling.
class Tableau {
public:
  Tableau(std::size_t rows, std::size_t vars) : t_(rows + 1, vars + 1, Rational(0)), basis_(rows) {}

  Rational &at(std::size_t i, std::size_t j) { return t_(i, j); }
  Rational &rhs(std::size_t i) { return t_(i, t_.cols() - 1); }
  std::size_t rows() const { return t_.rows() - 1; }
  std::size_t vars() const { return t_.cols() - 1; }
  std::size_t obj() const { return t_.rows() - 1; }
  std::vector<std::size_t> &basis() { return basis_; }

  void pivot(std::size_t r, std::size_t c) {
    Rational s = 1 / t_(r, c);
    for (std::size_t j = 0; j < t_.cols(); ++j) t_(r, j) *= s;
    for (std::size_t i = 0; i < t_.rows(); ++i) {
      if (i == r || t_(i, c) == 0) continue;
      Rational f = t_(i, c);
      for (std::size_t j = 0; j < t_.cols(); ++j) t_(i, j) -= f * t_(r, j);
    }
    basis_[r] = c;
  }

  // Maximizes over columns < active; false when unbounded.
  bool run(std::size_t active) {
    for (;;) {
      std::size_t enter = active;
      for (std::size_t j = 0; j < active; ++j)
        if (t_(obj(), j) < 0) {
          enter = j;
          break;
        }
      if (enter == active) return true;
      std::optional<std::size_t> leave;
      Rational best;
      for (std::size_t i = 0; i < rows(); ++i) {
        if (t_(i, enter) <= 0) continue;
        Rational ratio = rhs(i) / t_(i, enter);
        if (!leave || ratio < best || (ratio == best && basis_[i] < basis_[*leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (!leave) return false;
      pivot(*leave, enter);
    }
  }

  void drop_row(std::size_t r) {
    RatMatrix n(t_.rows() - 1, t_.cols(), Rational(0));
    for (std::size_t i = 0, k = 0; i < t_.rows(); ++i) {
      if (i == r) continue;
      for (std::size_t j = 0; j < t_.cols(); ++j) n(k, j) = t_(i, j);
      ++k;
    }
    t_ = std::move(n);
    basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(r));
  }

private:
  RatMatrix t_;
  std::vector<std::size_t> basis_;
};

} // namespace detail

/// Maximize objective·y over free variables y subject to the constraints,
/// in exact rational arithmetic (two-phase simplex).
inline Result maximize(const RatVector &objective, const std::vector<Constraint> &cons) {
  const std::size_t n = objective.size(), m = cons.size();
  std::size_t slacks = 0;
  for (const auto &c : cons) {
    if (c.coeffs.size() != n) throw std::invalid_argument("lp::maximize: constraint of wrong length");
    if (c.sense != Sense::Equal) ++slacks;
  }
  // columns: y+ (n), y- (n), slacks, artificials (m)
  const std::size_t structural = 2 * n + slacks, total = structural + m;
  detail::Tableau T(m, total);
  for (std::size_t i = 0, s = 0; i < m; ++i) {
    const auto &c = cons[i];
    Rational sign = c.rhs < 0 ? -1 : 1;
    for (std::size_t j = 0; j < n; ++j) {
      T.at(i, j) = sign * c.coeffs[j];
      T.at(i, n + j) = -sign * c.coeffs[j];
    }
    if (c.sense == Sense::GreaterEq) T.at(i, 2 * n + s++) = -sign;
    else if (c.sense == Sense::LessEq) T.at(i, 2 * n + s++) = sign;
    T.at(i, structural + i) = 1;
    T.rhs(i) = sign * c.rhs;
    T.basis()[i] = structural + i;
  }

  // phase 1: maximize -(sum of artificials)
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < structural; ++j) T.at(T.obj(), j) -= T.at(i, j);
    T.rhs(T.obj()) -= T.rhs(i);
  }
  T.run(total);
  if (T.rhs(T.obj()) != 0) return {Status::Infeasible, 0, {}};

  for (std::size_t i = 0; i < T.rows();) {
    if (T.basis()[i] < structural) {
      ++i;
      continue;
    }
    std::optional<std::size_t> col;
    for (std::size_t j = 0; j < structural && !col; ++j)
      if (T.at(i, j) != 0) col = j;
    if (col) {
      T.pivot(i, *col);
      ++i;
    } else {
      T.drop_row(i);
    }
  }

  // phase 2
  for (std::size_t j = 0; j <= total; ++j) T.at(T.obj(), j) = 0;
  for (std::size_t j = 0; j < n; ++j) {
    T.at(T.obj(), j) = -objective[j];
    T.at(T.obj(), n + j) = objective[j];
  }
  for (std::size_t i = 0; i < T.rows(); ++i) {
    Rational f = T.at(T.obj(), T.basis()[i]);
    if (f == 0) continue;
    for (std::size_t j = 0; j <= total; ++j) T.at(T.obj(), j) -= f * T.at(i, j);
  }
  if (!T.run(structural)) return {Status::Unbounded, 0, {}};

  RatVector x(total, 0);
  for (std::size_t i = 0; i < T.rows(); ++i) x[T.basis()[i]] = T.rhs(i);
  RatVector y(n);
  for (std::size_t j = 0; j < n; ++j) y[j] = x[j] - x[n + j];
  return {Status::Optimal, T.rhs(T.obj()), y};
}

/// Decides whether the homogeneous system
///   a·y = 0 (equalities), a·y > 0 (strict)
/// has a solution, via a gap variable t: maximize t with a·y >= t, t <= 1.
/// Returns a witness y when the maximal gap is positive.
inline std::optional<RatVector> strictly_feasible(std::size_t n, const std::vector<RatVector> &equalities,
                                                  const std::vector<RatVector> &strict) {
  std::vector<Constraint> cons;
  for (const auto &a : equalities) {
    RatVector c(a);
    c.push_back(0);
    cons.push_back({c, Sense::Equal, 0});
  }
  for (const auto &a : strict) {
    RatVector c(a);
    c.push_back(-1);
    cons.push_back({c, Sense::GreaterEq, 0});
  }
  RatVector bound(n + 1, 0);
  bound[n] = 1;
  cons.push_back({bound, Sense::LessEq, 1});
  RatVector objective(n + 1, 0);
  objective[n] = 1;
  auto res = maximize(objective, cons);
  if (res.status != Status::Optimal || res.value <= 0) return std::nullopt;
  res.point.pop_back();
  return res.point;
}

} // namespace toricq::lp

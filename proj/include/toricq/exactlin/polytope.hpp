#pragma once

#include "toricq/errors.hpp"
#include "toricq/exactlin/matrix.hpp"

#include <algorithm>
#include <set>

namespace toricq {

/// The half-space coeffs·x + offset >= 0.
struct Halfspace {
  RatVector coeffs;
  Rational offset;
};

namespace detail {

inline Halfspace normalized(Halfspace h) {
  Rational scale = 0;
  for (const auto &c : h.coeffs)
    if (c != 0) {
      scale = abs(c);
      break;
    }
  if (scale == 0) scale = abs(h.offset) == 0 ? Rational(1) : abs(h.offset);
  for (auto &c : h.coeffs) c /= scale;
  h.offset /= scale;
  return h;
}

struct HalfspaceLess {
  bool operator()(const Halfspace &a, const Halfspace &b) const {
    if (a.coeffs != b.coeffs) return a.coeffs < b.coeffs;
    return a.offset < b.offset;
  }
};

// Eliminates the last variable. Returns nullopt if a contradiction appears.
inline std::optional<std::vector<Halfspace>> eliminate_last(const std::vector<Halfspace> &sys) {
  std::vector<Halfspace> pos, neg;
  std::set<Halfspace, HalfspaceLess> out;
  auto keep = [&](Halfspace h) -> bool {
    h.coeffs.pop_back();
    bool constant = std::all_of(h.coeffs.begin(), h.coeffs.end(), [](const Rational &c) { return c == 0; });
    if (constant) return h.offset >= 0;
    out.insert(normalized(std::move(h)));
    return true;
  };
  for (const auto &h : sys) {
    const Rational &c = h.coeffs.back();
    if (c > 0) pos.push_back(h);
    else if (c < 0) neg.push_back(h);
    else if (!keep(h)) return std::nullopt;
  }
  for (const auto &a : pos)
    for (const auto &b : neg) {
      Rational ca = a.coeffs.back(), cb = -b.coeffs.back();
      Halfspace h{RatVector(a.coeffs.size()), cb * a.offset + ca * b.offset};
      for (std::size_t j = 0; j < h.coeffs.size(); ++j) h.coeffs[j] = cb * a.coeffs[j] + ca * b.coeffs[j];
      if (!keep(std::move(h))) return std::nullopt;
    }
  return std::vector<Halfspace>(out.begin(), out.end());
}

inline void enumerate_points(const std::vector<Halfspace> &sys, std::size_t dim, IntVector &prefix,
                             std::vector<IntVector> &out) {
  if (dim == 0) {
    for (const auto &h : sys)
      if (h.offset < 0) return;
    out.push_back(prefix);
    return;
  }
  std::vector<Halfspace> proj = sys;
  for (std::size_t k = dim; k > 1; --k) {
    auto next = eliminate_last(proj);
    if (!next) return;
    proj = std::move(*next);
  }
  std::optional<Rational> lo, hi;
  for (const auto &h : proj) {
    const Rational &c = h.coeffs[0];
    if (c == 0) {
      if (h.offset < 0) return;
      continue;
    }
    Rational bound = -h.offset / c;
    if (c > 0) lo = lo ? std::max(*lo, bound) : bound;
    else hi = hi ? std::min(*hi, bound) : bound;
  }
  if (lo && hi && *lo > *hi) return;
  if (!lo || !hi) throw Error(ErrorKind::NotComplete, "lattice-point enumeration region is unbounded");
  for (Integer v = ceil(*lo); v <= floor(*hi); ++v) {
    std::vector<Halfspace> slice;
    slice.reserve(sys.size());
    for (const auto &h : sys) {
      Halfspace s{RatVector(h.coeffs.begin() + 1, h.coeffs.end()), h.offset + h.coeffs[0] * v};
      slice.push_back(std::move(s));
    }
    prefix.push_back(v);
    enumerate_points(slice, dim - 1, prefix, out);
    prefix.pop_back();
  }
}

} // namespace detail

/// All integer points of {x in Q^dim : coeffs·x + offset >= 0 for every half-space},
/// in lexicographic order. Coordinate ranges come from exact Fourier–Motzkin
/// projection; throws NotComplete if the region is unbounded.
inline std::vector<IntVector> integer_points(const std::vector<Halfspace> &system, std::size_t dim) {
  for (const auto &h : system)
    if (h.coeffs.size() != dim) throw std::invalid_argument("integer_points: half-space of wrong dimension");
  std::vector<IntVector> out;
  IntVector prefix;
  detail::enumerate_points(system, dim, prefix, out);
  return out;
}

} // namespace toricq

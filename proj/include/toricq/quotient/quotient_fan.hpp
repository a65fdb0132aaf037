#pragma once

#include "toricq/exactlin/lattice.hpp"
#include "toricq/quotient/diagonalize.hpp"

namespace toricq {

/// The fan of X / mu_p for a diagonal action with weights a: same cones, rays
/// re-expressed in the overlattice N' = N + Z (1/p) sum_i alpha_i(sigma) u_{rho_i}.
struct QuotientFan {
  std::vector<std::vector<std::int64_t>> chart_alphas;
  Lattice overlattice = Lattice::standard(1);
  Integer index = 1;
  Fan fan;
  std::vector<Integer> cone_determinants;
  std::vector<bool> cone_smooth;
};

/// Overlattice read off from a single chart.
inline Lattice chart_overlattice(const Fan &fan, std::size_t sigma, const std::vector<std::int64_t> &alpha,
                                 std::int64_t p) {
  const auto &cone = fan.maxcones.at(sigma);
  RatVector v(fan.rank, 0);
  for (std::size_t i = 0; i < cone.size(); ++i)
    for (std::size_t k = 0; k < fan.rank; ++k) v[k] += Rational(fan.rays[cone[i]][k] * alpha[i], p);
  for (auto &x : v) x.canonicalize();
  return Lattice::from_generators(fan.rank, {v});
}

inline QuotientFan quotient_fan(const Fan &fan, const std::vector<std::int64_t> &a, std::int64_t p) {
  QuotientFan q;
  bool trivial = true;
  for (std::size_t s = 0; s < fan.maxcones.size(); ++s) {
    q.chart_alphas.push_back(local_exponents(chart_frame(fan, s), a, p));
    for (auto x : q.chart_alphas.back())
      if (x != 0) trivial = false;
  }
  if (trivial) throw Error(ErrorKind::TrivialAction, "all chart weights vanish; mu_p acts trivially");

  q.overlattice = chart_overlattice(fan, 0, q.chart_alphas[0], p);
  for (std::size_t s = 1; s < fan.maxcones.size(); ++s)
    if (!(chart_overlattice(fan, s, q.chart_alphas[s], p) == q.overlattice))
      throw Error(ErrorKind::InconsistentOverlattice,
                  "chart " + std::to_string(s) + " gives a different overlattice than chart 0");
  Rational idx = q.overlattice.index();
  q.index = idx.get_num();
  if (q.index == 1) throw Error(ErrorKind::TrivialAction, "overlattice equals N");

  q.fan.rank = fan.rank;
  q.fan.maxcones = fan.maxcones;
  for (const auto &u : fan.rays) {
    auto c = q.overlattice.coordinates(to_rationals(u));
    IntVector w;
    for (const auto &x : c) w.push_back(x.get_num()); // u lies in N, a sublattice of N'
    Integer g = content(w);
    for (auto &x : w) x /= g;
    q.fan.rays.push_back(std::move(w));
  }
  for (std::size_t s = 0; s < q.fan.maxcones.size(); ++s) {
    Integer d = abs(determinant(q.fan.cone_matrix(s)));
    q.cone_determinants.push_back(d);
    q.cone_smooth.push_back(d == 1);
  }
  return q;
}

} // namespace toricq

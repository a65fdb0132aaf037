#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

namespace toricq {

using Integer = mpz_class;
using Rational = mpq_class;
using IntVector = std::vector<Integer>;
using RatVector = std::vector<Rational>;

inline Integer gcd(const Integer &a, const Integer &b) {
  Integer g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

inline Integer lcm(const Integer &a, const Integer &b) {
  Integer l;
  mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return l;
}

/// Non-negative gcd of all entries; 0 for the zero vector.
inline Integer content(const IntVector &v) {
  Integer g = 0;
  for (const auto &x : v) g = gcd(g, x);
  return g;
}

inline Integer floor_div(const Integer &a, const Integer &b) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

/// Least non-negative residue of a modulo m (m > 0).
inline std::int64_t mod_residue(const Integer &a, std::int64_t m) {
  Integer r;
  mpz_fdiv_r_ui(r.get_mpz_t(), a.get_mpz_t(), static_cast<unsigned long>(m));
  return r.get_si();
}

inline Integer floor(const Rational &q) {
  Integer r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

inline Integer ceil(const Rational &q) {
  Integer r;
  mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

inline IntVector to_integers(const std::vector<std::int64_t> &v) {
  return IntVector(v.begin(), v.end());
}

inline RatVector to_rationals(const IntVector &v) { return RatVector(v.begin(), v.end()); }

inline bool fits_long(const Integer &x) { return x.fits_slong_p(); }

inline std::string to_string(const Rational &q) { return q.get_str(); }

} // namespace toricq

#pragma once

#include "toricq/quotient/quotient_fan.hpp"

#include <nlohmann/json.hpp>

namespace toricq {

/// Outcome of one verification; `counterexample` is set on failure.
struct CheckResult {
  CheckResult(std::string n, nlohmann::ordered_json params_ = nlohmann::ordered_json::object())
      : name(std::move(n)), params(std::move(params_)) {}

  std::string name;
  nlohmann::ordered_json params = nlohmann::ordered_json::object();
  bool passed = true;
  nlohmann::ordered_json counterexample;

  nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json j;
    j["name"] = name;
    j["params"] = params;
    j["passed"] = passed;
    if (!passed) j["counterexample"] = counterexample;
    return j;
  }
};

namespace detail {

inline nlohmann::ordered_json class_json(const ClassVector &d) {
  nlohmann::ordered_json j = nlohmann::ordered_json::array();
  for (const auto &x : d) j.push_back(integer_json(x));
  return j;
}

inline FpMatrix derivation_matrix(const CoxDerivation &D, const ClassVector &d, const std::vector<Monomial> &basis) {
  const auto &F = D.field();
  FpMatrix M(basis.size(), basis.size(), F->zero());
  for (std::size_t j = 0; j < basis.size(); ++j) {
    auto col = coordinates(apply(D, GradedPolynomial::term(F, d, basis[j], F->one())), basis);
    for (std::size_t i = 0; i < col.size(); ++i) M(i, j) = col[i];
  }
  return M;
}

inline std::int64_t weight(const std::vector<std::int64_t> &a, const std::vector<std::int64_t> &w, std::int64_t p) {
  Integer s = 0;
  for (std::size_t r = 0; r < a.size(); ++r) s += Integer(a[r]) * w[r];
  return mod_residue(s, p);
}

} // namespace detail

/// dim ker(D : S_d -> S_d).
inline std::size_t constant_dim(const Fan &fan, const ClassGroup &cg, const CoxDerivation &D, const ClassVector &d) {
  auto basis = graded_piece(fan, cg, d);
  if (basis.empty()) return 0;
  return fp_kernel(detail::derivation_matrix(D, d, basis), *D.field()).size();
}

/// Number of monomials of class d with sum_rho a_rho m_rho = 0 mod p.
inline std::size_t diagonal_constant_dim(const Fan &fan, const ClassGroup &cg, const std::vector<std::int64_t> &a,
                                         std::int64_t p, const ClassVector &d) {
  std::size_t n = 0;
  for (const auto &m : graded_piece(fan, cg, d))
    if (detail::weight(a, m.exponents, p) == 0) ++n;
  return n;
}

/// For every effective class up to `bound`, the constants of D in S_d have
/// the dimension predicted by the eigenvalues, and Phi^{-1} carries a basis
/// of them onto independent constants of the diagonal derivation.
inline CheckResult constants_match_check(const Fan &fan, const ClassGroup &cg, const CoxDerivation &D,
                                         const Substitution &s, std::int64_t bound = 6) {
  CheckResult res{"constants_match", {{"bound", bound}}};
  const auto &F = D.field();
  const auto p = F->characteristic();
  for (const auto &d : effective_classes(cg, bound)) {
    auto basis = graded_piece(fan, cg, d);
    auto ker = fp_kernel(detail::derivation_matrix(D, d, basis), *F);
    std::size_t diag = 0;
    for (const auto &m : basis)
      if (detail::weight(s.eigenvalues, m.exponents, p) == 0) ++diag;
    auto fail = [&](const std::string &why) {
      res.passed = false;
      res.counterexample = {{"degree", detail::class_json(d)},
                            {"reason", why},
                            {"dim_constants", ker.size()},
                            {"dim_diagonal", diag}};
      return res;
    };
    if (ker.size() != diag) return fail("dimension mismatch");
    FpMatrix images(ker.size(), basis.size(), F->zero());
    for (std::size_t k = 0; k < ker.size(); ++k) {
      auto img = substitute(s.inverse, from_coordinates(F, d, basis, ker[k]));
      for (const auto &[m, c] : img.terms())
        if (detail::weight(s.eigenvalues, m.exponents, p) != 0) return fail("image is not a diagonal constant");
      auto v = coordinates(img, basis);
      for (std::size_t j = 0; j < basis.size(); ++j) images(k, j) = v[j];
    }
    if (fp_rank(images) != ker.size()) return fail("images are dependent");
  }
  return res;
}

/// Monomial F that is a valid localizer for the diagonal action: invariant,
/// and divisible by prod_{rho not in sigma} x_rho for some maximal cone.
inline void require_localizer(const Fan &fan, const std::vector<std::int64_t> &a, std::int64_t p, const Monomial &Fm) {
  if (Fm.size() != fan.num_rays()) throw Error(ErrorKind::InvalidLocalizer, "localizer has wrong length");
  if (detail::weight(a, Fm.exponents, p) != 0)
    throw Error(ErrorKind::InvalidLocalizer, "localizer " + Fm.to_string() + " is not invariant");
  for (const auto &cone : fan.maxcones) {
    auto in = detail::as_set(cone);
    bool ok = true;
    for (std::size_t r = 0; r < fan.num_rays() && ok; ++r)
      if (!in.count(r) && Fm[r] == 0) ok = false;
    if (ok) return;
  }
  throw Error(ErrorKind::InvalidLocalizer, "localizer " + Fm.to_string() + " is not in the irrelevant ideal");
}

/// x^{sigma-hat}, raised to the p-th power when it is not invariant.
inline Monomial chart_localizer(const Fan &fan, std::size_t sigma, const std::vector<std::int64_t> &a,
                                std::int64_t p) {
  Monomial m = Monomial::one(fan.num_rays());
  auto in = detail::as_set(fan.maxcones.at(sigma));
  for (std::size_t r = 0; r < fan.num_rays(); ++r)
    if (!in.count(r)) m.exponents[r] = 1;
  if (detail::weight(a, m.exponents, p) != 0)
    for (auto &e : m.exponents) e *= p;
  return m;
}

namespace detail {

/// Lattice points of {m in M : <m, u_rho> + b_rho >= 0}, via a bounding box
/// from vertex enumeration followed by a plain scan.
inline std::vector<IntVector> polytope_points_by_box(const Fan &fan, const std::vector<std::int64_t> &b) {
  const std::size_t n = fan.rank, N = fan.num_rays();
  std::vector<RatVector> verts;
  std::vector<std::size_t> sub(n);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t start, std::size_t k) {
    if (k == n) {
      RatMatrix A(n, n, Rational(0));
      RatVector rhs(n);
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) A(i, j) = fan.rays[sub[i]][j];
        rhs[i] = -b[sub[i]];
      }
      if (rank(A) < n) return;
      auto m = solve(A, rhs);
      for (std::size_t r = 0; r < N; ++r) {
        Rational s = b[r];
        for (std::size_t j = 0; j < n; ++j) s += m[j] * fan.rays[r][j];
        if (s < 0) return;
      }
      verts.push_back(std::move(m));
      return;
    }
    for (std::size_t r = start; r < N; ++r) {
      sub[k] = r;
      rec(r + 1, k + 1);
    }
  };
  rec(0, 0);
  std::vector<IntVector> out;
  if (verts.empty()) return out;
  IntVector lo(n), hi(n);
  for (std::size_t j = 0; j < n; ++j) {
    lo[j] = floor(verts[0][j]);
    hi[j] = ceil(verts[0][j]);
    for (const auto &v : verts) {
      lo[j] = std::min(lo[j], floor(v[j]));
      hi[j] = std::max(hi[j], ceil(v[j]));
    }
  }
  IntVector m = lo;
  while (true) {
    bool inside = true;
    for (std::size_t r = 0; r < N && inside; ++r) {
      Integer s = b[r];
      for (std::size_t j = 0; j < n; ++j) s += m[j] * fan.rays[r][j];
      if (s < 0) inside = false;
    }
    if (inside) out.push_back(m);
    std::size_t j = 0;
    while (j < n && m[j] == hi[j]) {
      m[j] = lo[j];
      ++j;
    }
    if (j == n) break;
    ++m[j];
  }
  return out;
}

} // namespace detail

/// Taking invariants commutes with degree-zero localization at F: for each
/// k <= bound, the invariant monomials of S_{k deg F} divided by F^k are
/// exactly the invariant characters regular on the open set {F != 0}.
inline CheckResult localization_check(const Fan &fan, const ClassGroup &cg, const std::vector<std::int64_t> &a,
                                      std::int64_t p, const Monomial &Fm, std::int64_t bound = 6) {
  require_localizer(fan, a, p, Fm);
  CheckResult res{"localization", {{"localizer", Fm.to_string()}, {"bound", bound}}};
  const std::size_t N = fan.num_rays();
  for (std::int64_t k = 0; k <= bound; ++k) {
    ClassVector d = cg.degree(Fm);
    for (auto &x : d) x *= k;
    std::set<std::vector<std::int64_t>> lhs, rhs;
    for (const auto &m : graded_piece(fan, cg, d)) {
      if (detail::weight(a, m.exponents, p) != 0) continue;
      std::vector<std::int64_t> w(N);
      for (std::size_t r = 0; r < N; ++r) w[r] = m[r] - k * Fm[r];
      lhs.insert(w);
    }
    std::vector<std::int64_t> b(N);
    for (std::size_t r = 0; r < N; ++r) b[r] = k * Fm[r];
    for (const auto &m : detail::polytope_points_by_box(fan, b)) {
      std::vector<std::int64_t> w(N);
      for (std::size_t r = 0; r < N; ++r) {
        Integer s = 0;
        for (std::size_t j = 0; j < fan.rank; ++j) s += m[j] * fan.rays[r][j];
        w[r] = s.get_si();
      }
      if (detail::weight(a, w, p) == 0) rhs.insert(w);
    }
    if (lhs != rhs) {
      res.passed = false;
      res.counterexample = {{"k", k}, {"lhs_size", lhs.size()}, {"rhs_size", rhs.size()}};
      return res;
    }
  }
  return res;
}

/// On the chart of sigma, the invariant monomials z^c (sum alpha_i c_i = 0 mod p)
/// are exactly the characters sum c_i m_i lying in the dual of N'.
inline CheckResult chart_overlattice_check(const Fan &fan, const std::vector<std::int64_t> &a, std::int64_t p,
                                           std::size_t sigma, const Lattice &overlattice, std::int64_t box = 6) {
  CheckResult res{"chart_overlattice", {{"cone", sigma}, {"box", box}}};
  auto frame = chart_frame(fan, sigma);
  auto alpha = local_exponents(frame, a, p);
  auto Mdual = overlattice.dual();
  const std::size_t n = fan.rank;
  std::vector<std::int64_t> c(n, 0);
  while (true) {
    Integer s = 0;
    RatVector m(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
      s += Integer(alpha[i]) * c[i];
      for (std::size_t j = 0; j < n; ++j) m[j] += Rational(frame.dual_basis[i][j] * c[i]);
    }
    bool invariant = mod_residue(s, p) == 0;
    if (invariant != Mdual.contains(m)) {
      res.passed = false;
      res.counterexample = {{"chart_exponents", c}, {"invariant", invariant}};
      return res;
    }
    std::size_t i = 0;
    while (i < n && c[i] == box) c[i++] = 0;
    if (i == n) break;
    ++c[i];
  }
  return res;
}

/// The diagonal derivation restricts on each chart to sum_i alpha_i z_i d/dz_i.
inline CheckResult chart_weights_check(const Fan &fan, const ClassGroup &cg, const FieldPtr &F,
                                       const std::vector<std::int64_t> &a) {
  CheckResult res{"chart_weights"};
  auto D = CoxDerivation::diagonal(F, cg, a);
  for (std::size_t s = 0; s < fan.maxcones.size(); ++s) {
    auto fr = chart_frame(fan, s);
    auto lv = chart_restrict(D, fr);
    auto alpha = local_exponents(fr, a, F->characteristic());
    bool ok = lv.diagonal;
    for (std::size_t i = 0; ok && i < alpha.size(); ++i) ok = lv.alphas[i] == F->from_int(alpha[i]);
    if (!ok) {
      res.passed = false;
      res.counterexample = {{"cone", s}};
      return res;
    }
  }
  return res;
}

} // namespace toricq

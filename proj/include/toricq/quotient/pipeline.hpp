#pragma once

#include "toricq/derivation/io.hpp"
#include "toricq/oracle/oracle.hpp"

#include <functional>

namespace toricq {

struct PipelineOptions {
  std::int64_t bound = 6; // class bound for the constants check and k bound for localization
  std::int64_t box = 6;   // chart exponent box
  bool require_projective = false;
  bool verify = true;
};

struct QuotientReport {
  Fan input_fan;
  std::int64_t p = 0;
  int e = 1;
  bool smooth = false, complete = false, projective = false;
  std::optional<FieldElement> rescale_factor;
  bool euler_shifted = false;
  std::vector<std::string> substitution;
  std::vector<std::int64_t> diagonal_a;
  QuotientFan quotient;
  std::vector<CheckResult> verification;

  bool verified() const {
    for (const auto &c : verification)
      if (!c.passed) return false;
    return true;
  }

  nlohmann::ordered_json to_json() const;
};

namespace detail {

inline nlohmann::ordered_json rational_json(const Rational &q) {
  if (q.get_den() == 1) return integer_json(q.get_num());
  return q.get_str();
}

template <class Fn> auto at_stage(const std::string &stage, Fn &&fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const Error &e) {
    if (!e.stage().empty()) throw;
    throw e.at_stage(stage);
  }
}

} // namespace detail

inline nlohmann::ordered_json QuotientReport::to_json() const {
  using nlohmann::ordered_json;
  ordered_json j;
  j["input_fan"] = fan_to_json(input_fan);
  j["p"] = p;
  j["e"] = e;
  j["hypotheses"] = {{"smooth", smooth}, {"complete", complete}, {"projective", projective}};
  j["rescale_factor"] = rescale_factor ? ordered_json(rescale_factor->to_string()) : ordered_json(nullptr);
  j["euler_shifted"] = euler_shifted;
  j["substitution"] = substitution;
  j["diagonal_a"] = diagonal_a;
  j["chart_sigma0"] = 0;
  j["chart_alphas"] = quotient.chart_alphas;
  auto basis = ordered_json::array();
  for (std::size_t k = 0; k < quotient.overlattice.rank(); ++k) {
    auto v = ordered_json::array();
    for (const auto &x : quotient.overlattice.basis_vector(k)) v.push_back(detail::rational_json(x));
    basis.push_back(v);
  }
  j["overlattice_basis"] = basis;
  j["overlattice_index"] = detail::integer_json(quotient.index);
  j["quotient_map_degree"] = detail::integer_json(quotient.index);
  auto qf = fan_to_json(quotient.fan);
  j["quotient_rays"] = qf["rays"];
  j["quotient_maxcones"] = qf["maxcones"];
  auto dets = ordered_json::array();
  for (const auto &d : quotient.cone_determinants) dets.push_back(detail::integer_json(d));
  j["cone_determinants"] = dets;
  std::vector<bool> sm(quotient.cone_smooth.begin(), quotient.cone_smooth.end());
  j["quotient_cone_smooth"] = sm;
  auto ver = ordered_json::array();
  for (const auto &c : verification) ver.push_back(c.to_json());
  j["verification"] = ver;
  return j;
}

/// Full computation of X_Sigma / mu_p. `make_field` builds the derivation once
/// the class group is known. Errors carry the name of the stage that raised them.
inline QuotientReport mu_p_quotient(const Fan &fan, const std::function<CoxDerivation(const ClassGroup &)> &make_field,
                                    const PipelineOptions &opt = {}) {
  QuotientReport rep;
  rep.input_fan = fan;
  detail::at_stage("validate", [&] {
    auto diag = validate(fan);
    if (!diag.ok()) throw Error(ErrorKind::InvalidFan, diag.violations.front());
  });
  rep.smooth = detail::at_stage("is_smooth", [&] {
    if (!is_smooth(fan)) throw Error(ErrorKind::NotSmoothCone, "fan is not smooth");
    return true;
  });
  rep.complete = detail::at_stage("is_complete", [&] {
    if (!is_complete(fan)) throw Error(ErrorKind::NotComplete, "fan is not complete");
    return true;
  });
  rep.projective = detail::at_stage("is_projective", [&] {
    bool pr = is_projective(fan);
    if (!pr && opt.require_projective) throw Error(ErrorKind::NotProjective, "fan is not projective");
    return pr;
  });
  auto cg = detail::at_stage("class_group", [&] { return class_group(fan); });
  auto D = detail::at_stage("vector_field", [&] {
    auto d = make_field(cg);
    if (!d.preserves_degrees(cg)) throw Error(ErrorKind::Parse, "D(x_rho) must have the class of x_rho");
    return d;
  });
  const auto F = D.field();
  rep.p = F->characteristic();
  rep.e = F->degree();

  D = detail::at_stage("is_mu_p", [&] {
    if (equals_mod_euler(cg, D, CoxDerivation::zero(F, cg)))
      throw Error(ErrorKind::TrivialAction, "vector field is zero modulo Euler derivations");
    if (is_mu_p(cg, D)) return D;
    CoxDerivation r = D;
    try {
      r = rescale_to_idempotent(D);
    } catch (const Error &e) {
      if (e.kind() != ErrorKind::NotPClosed) throw;
      throw Error(ErrorKind::NotMuP, std::string("delta^p != delta and ") + e.what());
    }
    if (!is_mu_p(cg, r)) throw Error(ErrorKind::NotMuP, "delta^p != delta");
    for (const auto &b : F->elements())
      if (!b.is_zero() && b * D == r) rep.rescale_factor = b;
    return r;
  });
  D = detail::at_stage("exact_idempotent_lift", [&] {
    if (p_power(D) == D) return D;
    rep.euler_shifted = true;
    return exact_idempotent_lift(cg, D);
  });
  auto subst = detail::at_stage("diagonalize", [&] { return diagonalize(fan, cg, D); });
  for (std::size_t r = 0; r < subst.forward.size(); ++r)
    rep.substitution.push_back("y" + std::to_string(r) + " = " + subst.forward[r].to_string());
  rep.diagonal_a = subst.eigenvalues;
  rep.quotient = detail::at_stage("quotient_fan", [&] { return quotient_fan(fan, rep.diagonal_a, rep.p); });

  if (opt.verify)
    detail::at_stage("verify", [&] {
      rep.verification.push_back(constants_match_check(fan, cg, D, subst, opt.bound));
      rep.verification.push_back(chart_weights_check(fan, cg, F, rep.diagonal_a));
      for (std::size_t s = 0; s < fan.maxcones.size(); ++s) {
        auto loc = chart_localizer(fan, s, rep.diagonal_a, rep.p);
        auto c = localization_check(fan, cg, rep.diagonal_a, rep.p, loc, opt.bound);
        c.params["cone"] = s;
        rep.verification.push_back(std::move(c));
      }
      for (std::size_t s = 0; s < fan.maxcones.size(); ++s)
        rep.verification.push_back(
            chart_overlattice_check(fan, rep.diagonal_a, rep.p, s, rep.quotient.overlattice, opt.box));
    });
  return rep;
}

inline QuotientReport mu_p_quotient(const Fan &fan, const CoxDerivation &D, const PipelineOptions &opt = {}) {
  return mu_p_quotient(fan, [&](const ClassGroup &) { return D; }, opt);
}

} // namespace toricq

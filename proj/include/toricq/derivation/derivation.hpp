#pragma once

#include "toricq/coxring/sections.hpp"
#include "toricq/fan/fan.hpp"

namespace toricq {

/// A degree-zero derivation D = sum_rho f_rho d/dx_rho of the Cox ring with
/// f_rho in V_rho, stored as its images f_rho = D(x_rho).
class CoxDerivation {
public:
  CoxDerivation(FieldPtr field, std::vector<GradedPolynomial> images)
      : field_(std::move(field)), images_(std::move(images)) {}

  static CoxDerivation zero(const FieldPtr &F, const ClassGroup &cg) {
    std::vector<GradedPolynomial> im;
    for (std::size_t r = 0; r < cg.num_rays(); ++r) im.emplace_back(F, cg.degree_of_ray(r));
    return {F, std::move(im)};
  }

  /// sum_rho a_rho x_rho d/dx_rho
  static CoxDerivation diagonal(const FieldPtr &F, const ClassGroup &cg, const std::vector<FieldElement> &a) {
    if (a.size() != cg.num_rays()) throw std::invalid_argument("diagonal derivation: wrong number of coefficients");
    auto d = zero(F, cg);
    for (std::size_t r = 0; r < a.size(); ++r) d.images_[r].add_term(Monomial::variable(cg.num_rays(), r), a[r]);
    return d;
  }
  static CoxDerivation diagonal(const FieldPtr &F, const ClassGroup &cg, const std::vector<std::int64_t> &a) {
    std::vector<FieldElement> c;
    for (auto x : a) c.push_back(F->from_int(x));
    return diagonal(F, cg, c);
  }

  const FieldPtr &field() const noexcept { return field_; }
  std::size_t num_rays() const noexcept { return images_.size(); }
  const GradedPolynomial &image(std::size_t rho) const { return images_.at(rho); }
  const std::vector<GradedPolynomial> &images() const noexcept { return images_; }

  bool is_zero() const {
    for (const auto &f : images_)
      if (!f.is_zero()) return false;
    return true;
  }

  /// Coefficients a_rho when D = sum a_rho x_rho d/dx_rho.
  std::optional<std::vector<FieldElement>> diagonal_coefficients() const {
    std::vector<FieldElement> a;
    for (std::size_t r = 0; r < images_.size(); ++r) {
      const auto &t = images_[r].terms();
      if (t.empty()) {
        a.push_back(field_->zero());
        continue;
      }
      auto x = Monomial::variable(images_.size(), r);
      if (t.size() != 1 || t.begin()->first != x) return std::nullopt;
      a.push_back(t.begin()->second);
    }
    return a;
  }

  /// Every f_rho lies in S_{[D_rho]}.
  bool preserves_degrees(const ClassGroup &cg) const {
    if (images_.size() != cg.num_rays()) return false;
    for (std::size_t r = 0; r < images_.size(); ++r)
      if (images_[r].degree() != cg.degree_of_ray(r) || !images_[r].is_homogeneous(cg)) return false;
    return true;
  }

  friend CoxDerivation operator+(const CoxDerivation &a, const CoxDerivation &b) {
    auto r = a;
    for (std::size_t i = 0; i < r.images_.size(); ++i) r.images_[i] += b.images_.at(i);
    return r;
  }
  friend CoxDerivation operator-(const CoxDerivation &a, const CoxDerivation &b) {
    auto r = a;
    for (std::size_t i = 0; i < r.images_.size(); ++i) r.images_[i] -= b.images_.at(i);
    return r;
  }
  friend CoxDerivation operator*(const FieldElement &s, const CoxDerivation &a) {
    auto r = a;
    for (auto &f : r.images_) f = s * f;
    return r;
  }
  friend bool operator==(const CoxDerivation &a, const CoxDerivation &b) { return a.images_ == b.images_; }

  std::string to_string() const {
    std::string s;
    for (std::size_t r = 0; r < images_.size(); ++r) {
      if (images_[r].is_zero()) continue;
      if (!s.empty()) s += " + ";
      s += "(" + images_[r].to_string() + ")*d/dx" + std::to_string(r);
    }
    return s.empty() ? "0" : s;
  }

private:
  FieldPtr field_;
  std::vector<GradedPolynomial> images_;
};

/// D(q) by the Leibniz rule; exponents are reduced into the field, so in
/// characteristic p the p-th powers are constants.
inline GradedPolynomial apply(const CoxDerivation &D, const GradedPolynomial &q) {
  const auto &F = *D.field();
  GradedPolynomial out(D.field(), q.degree());
  for (const auto &[m, c] : q.terms()) {
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (m[r] == 0) continue;
      FieldElement k = F.from_int(m[r]) * c;
      if (k.is_zero()) continue;
      Monomial rest = m;
      rest.exponents[r] -= 1;
      for (const auto &[mf, cf] : D.image(r).terms()) out.add_term(rest * mf, k * cf);
    }
  }
  return out;
}

/// The p-fold composite, again a derivation in characteristic p; determined by
/// its values (D^p)(x_rho).
inline CoxDerivation p_power(const CoxDerivation &D) {
  const auto p = D.field()->characteristic();
  std::vector<GradedPolynomial> im;
  for (std::size_t r = 0; r < D.num_rays(); ++r) {
    GradedPolynomial q = GradedPolynomial::term(D.field(), D.image(r).degree(), Monomial::variable(D.num_rays(), r),
                                                D.field()->one());
    for (std::int64_t k = 0; k < p; ++k) q = apply(D, q);
    im.push_back(std::move(q));
  }
  return {D.field(), std::move(im)};
}

/// phi in Cl^vee and the Euler derivation sum_rho phi([D_rho]) x_rho d/dx_rho.
struct EulerElement {
  IntVector phi;
  std::vector<FieldElement> coefficients;

  CoxDerivation derivation(const FieldPtr &F, const ClassGroup &cg) const {
    return CoxDerivation::diagonal(F, cg, coefficients);
  }
};

/// One Euler element per standard basis vector of Z^r.
inline std::vector<EulerElement> euler_basis(const ClassGroup &cg, const FieldPtr &F) {
  std::vector<EulerElement> out;
  for (std::size_t i = 0; i < cg.rank; ++i) {
    EulerElement e{IntVector(cg.rank, 0), {}};
    e.phi[i] = 1;
    for (std::size_t r = 0; r < cg.num_rays(); ++r)
      e.coefficients.push_back(F->from_int(mod_residue(cg.degrees(i, r), F->characteristic())));
    out.push_back(std::move(e));
  }
  return out;
}

/// D1 - D2 lies in the span of the Euler derivations, i.e. D1 and D2 define
/// the same global vector field.
inline bool equals_mod_euler(const ClassGroup &cg, const CoxDerivation &D1, const CoxDerivation &D2) {
  const auto &F = D1.field();
  auto delta = D1 - D2;
  auto diag = delta.diagonal_coefficients();
  if (!diag) return false; // Euler elements are diagonal
  auto basis = euler_basis(cg, F);
  FpMatrix m(basis.size() + 1, cg.num_rays(), F->zero());
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t r = 0; r < cg.num_rays(); ++r) m(i, r) = basis[i].coefficients[r];
  for (std::size_t r = 0; r < cg.num_rays(); ++r) m(basis.size(), r) = (*diag)[r];
  FpMatrix euler_only(basis.size(), cg.num_rays(), F->zero());
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t r = 0; r < cg.num_rays(); ++r) euler_only(i, r) = m(i, r);
  return fp_rank(m) == fp_rank(euler_only);
}

/// delta^p = delta for the induced vector field, and delta != 0.
inline bool is_mu_p(const ClassGroup &cg, const CoxDerivation &D) {
  auto zero = CoxDerivation::zero(D.field(), cg);
  if (equals_mod_euler(cg, D, zero)) return false;
  return equals_mod_euler(cg, p_power(D), D);
}

/// The restriction of a global field to the affine chart U_sigma = Spec k[z_1..z_n]:
/// delta = sum_i g_i d/dz_i, with each g_i a polynomial in the z's
/// (exponent vector -> coefficient).
struct LocalVectorField {
  using ChartPolynomial = std::map<std::vector<std::int64_t>, FieldElement>;

  std::size_t cone = 0;
  std::vector<ChartPolynomial> components;
  /// Set when every g_i = alpha_i z_i; alphas then holds the alpha_i.
  bool diagonal = false;
  std::vector<FieldElement> alphas;

  bool is_zero() const {
    for (const auto &g : components)
      if (!g.empty()) return false;
    return true;
  }
};

/// Restriction map to a chart. With z_i = prod_rho x_rho^{E[i][rho]},
/// D(z_i) = z_i * sum_rho E[i][rho] f_rho / x_rho; every term is a degree-zero
/// Laurent monomial x^w, which on the chart equals prod_i z_i^{w_{rho_i}}.
/// Throws NotRegularOnChart if a negative exponent survives.
inline LocalVectorField chart_restrict(const CoxDerivation &D, const ChartFrame &frame) {
  const auto &F = *D.field();
  const std::size_t n = frame.rays.size(), N = D.num_rays();
  LocalVectorField lv;
  lv.cone = frame.cone;
  lv.components.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t r = 0; r < N; ++r) {
      FieldElement k = F.from_int(mod_residue(frame.exponents(i, r), F.characteristic()));
      if (k.is_zero()) continue;
      for (const auto &[m, c] : D.image(r).terms()) {
        std::vector<std::int64_t> z(n);
        for (std::size_t j = 0; j < n; ++j) {
          const std::size_t rj = frame.rays[j];
          z[j] = frame.exponents(i, rj).get_si() + m[rj] - (rj == r ? 1 : 0);
        }
        auto &g = lv.components[i];
        auto [it, inserted] = g.try_emplace(z, k * c);
        if (!inserted) {
          it->second += k * c;
          if (it->second.is_zero()) g.erase(it);
        }
      }
    }
    for (const auto &[z, c] : lv.components[i])
      for (auto e : z)
        if (e < 0)
          throw Error(ErrorKind::NotRegularOnChart, "vector field has a pole on the chart of cone " + std::to_string(frame.cone));
  }
  lv.diagonal = true;
  for (std::size_t i = 0; i < n; ++i) {
    const auto &g = lv.components[i];
    std::vector<std::int64_t> zi(n, 0);
    zi[i] = 1;
    if (g.empty()) lv.alphas.push_back(F.zero());
    else if (g.size() == 1 && g.begin()->first == zi) lv.alphas.push_back(g.begin()->second);
    else lv.diagonal = false;
  }
  if (!lv.diagonal) lv.alphas.clear();
  return lv;
}

} // namespace toricq

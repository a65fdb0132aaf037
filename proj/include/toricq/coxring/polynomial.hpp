#pragma once

#include "toricq/coxring/class_group.hpp"
#include "toricq/exactlin/galois_field.hpp"

#include <map>

namespace toricq {

/// Homogeneous element of the Cox ring over a finite field. Zero
/// coefficients are never stored.
class GradedPolynomial {
public:
  using Terms = std::map<Monomial, FieldElement>;

  GradedPolynomial(FieldPtr field, ClassVector degree) : field_(std::move(field)), degree_(std::move(degree)) {}

  static GradedPolynomial term(FieldPtr field, ClassVector degree, Monomial m, FieldElement c) {
    GradedPolynomial p(std::move(field), std::move(degree));
    p.add_term(m, c);
    return p;
  }

  const FieldPtr &field() const noexcept { return field_; }
  const ClassVector &degree() const noexcept { return degree_; }
  const Terms &terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }

  FieldElement coefficient(const Monomial &m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? field_->zero() : it->second;
  }

  void add_term(const Monomial &m, const FieldElement &c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (inserted) return;
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }

  bool is_homogeneous(const ClassGroup &cg) const {
    for (const auto &[m, c] : terms_)
      if (cg.degree(m) != degree_) return false;
    return true;
  }

  GradedPolynomial &operator+=(const GradedPolynomial &o) {
    for (const auto &[m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  GradedPolynomial &operator-=(const GradedPolynomial &o) {
    for (const auto &[m, c] : o.terms_) add_term(m, -c);
    return *this;
  }
  friend GradedPolynomial operator+(GradedPolynomial a, const GradedPolynomial &b) { return a += b; }
  friend GradedPolynomial operator-(GradedPolynomial a, const GradedPolynomial &b) { return a -= b; }

  friend GradedPolynomial operator*(const FieldElement &s, const GradedPolynomial &a) {
    GradedPolynomial r(a.field_, a.degree_);
    for (const auto &[m, c] : a.terms_) r.add_term(m, s * c);
    return r;
  }

  friend GradedPolynomial operator*(const GradedPolynomial &a, const GradedPolynomial &b) {
    ClassVector d = a.degree_;
    for (std::size_t i = 0; i < d.size(); ++i) d[i] += b.degree_[i];
    GradedPolynomial r(a.field_, std::move(d));
    for (const auto &[ma, ca] : a.terms_)
      for (const auto &[mb, cb] : b.terms_) r.add_term(ma * mb, ca * cb);
    return r;
  }

  friend bool operator==(const GradedPolynomial &a, const GradedPolynomial &b) {
    return a.degree_ == b.degree_ && a.terms_ == b.terms_;
  }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string s;
    // descending monomial order reads x0 before x1
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      if (!s.empty()) s += " + ";
      const auto &[m, c] = *it;
      if (c.is_one()) s += m.to_string();
      else if (m.total_degree() == 0) s += c.to_string();
      else s += (c.field().degree() > 1 ? "(" + c.to_string() + ")" : c.to_string()) + "*" + m.to_string();
    }
    return s;
  }

private:
  FieldPtr field_;
  ClassVector degree_;
  Terms terms_;
};

} // namespace toricq

#pragma once

#include "toricq/errors.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace toricq {

inline bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

class FieldElement;

/// The finite field F_{p^e}, realised as F_p[t]/(f) where f is the monic
/// irreducible of degree e whose coefficient word (c_{e-1}, ..., c_0) is
/// lexicographically smallest. Elements are encoded as integers
/// sum c_i p^i < p^e, which is also their serialization order.
class GaloisField : public std::enable_shared_from_this<GaloisField> {
public:
  using Code = std::uint64_t;

  static std::shared_ptr<const GaloisField> make(std::int64_t p, int e = 1) {
    if (!is_prime(p)) throw std::invalid_argument("GaloisField: characteristic " + std::to_string(p) + " is not prime");
    if (e < 1) throw std::invalid_argument("GaloisField: extension degree must be >= 1");
    Code q = 1;
    for (int i = 0; i < e; ++i) {
      if (q > (Code(1) << 31) / static_cast<Code>(p))
        throw std::invalid_argument("GaloisField: field too large");
      q *= static_cast<Code>(p);
    }
    return std::shared_ptr<const GaloisField>(new GaloisField(p, e, q));
  }

  std::int64_t characteristic() const noexcept { return p_; }
  int degree() const noexcept { return e_; }
  Code order() const noexcept { return q_; }
  /// Monic modulus, coefficients from t^0 up to t^e.
  const std::vector<std::int64_t> &modulus() const noexcept { return modulus_; }

  bool same_as(const GaloisField &o) const noexcept { return p_ == o.p_ && e_ == o.e_; }

  Code add(Code a, Code b) const {
    if (e_ == 1) return (a + b) % static_cast<Code>(p_);
    auto x = digits(a), y = digits(b);
    for (int i = 0; i < e_; ++i) x[i] = (x[i] + y[i]) % p_;
    return encode(x);
  }
  Code neg(Code a) const {
    if (e_ == 1) return a == 0 ? 0 : static_cast<Code>(p_) - a;
    auto x = digits(a);
    for (auto &c : x) c = (p_ - c) % p_;
    return encode(x);
  }
  Code sub(Code a, Code b) const { return add(a, neg(b)); }
  Code mul(Code a, Code b) const {
    if (e_ == 1) return (a * b) % static_cast<Code>(p_);
    auto x = digits(a), y = digits(b);
    std::vector<std::int64_t> prod(2 * e_ - 1, 0);
    for (int i = 0; i < e_; ++i)
      for (int j = 0; j < e_; ++j) prod[i + j] = (prod[i + j] + x[i] * y[j]) % p_;
    for (int k = 2 * e_ - 2; k >= e_; --k) {
      std::int64_t c = prod[k];
      if (c == 0) continue;
      for (int i = 0; i <= e_; ++i) prod[k - e_ + i] = ((prod[k - e_ + i] - c * modulus_[i]) % p_ + p_) % p_;
    }
    prod.resize(e_);
    return encode(prod);
  }
  Code pow(Code a, std::uint64_t n) const {
    Code r = 1;
    while (n) {
      if (n & 1) r = mul(r, a);
      a = mul(a, a);
      n >>= 1;
    }
    return r;
  }
  Code inv(Code a) const {
    if (a == 0) throw std::domain_error("GaloisField: inverse of zero");
    return pow(a, q_ - 2);
  }

  std::vector<std::int64_t> digits(Code a) const {
    std::vector<std::int64_t> d(e_);
    for (int i = 0; i < e_; ++i) {
      d[i] = static_cast<std::int64_t>(a % static_cast<Code>(p_));
      a /= static_cast<Code>(p_);
    }
    return d;
  }
  Code encode(const std::vector<std::int64_t> &d) const {
    Code a = 0;
    for (int i = e_ - 1; i >= 0; --i) a = a * static_cast<Code>(p_) + static_cast<Code>(((d[i] % p_) + p_) % p_);
    return a;
  }

  FieldElement zero() const;
  FieldElement one() const;
  /// Image of an integer under Z -> F_p -> F_{p^e}.
  FieldElement from_int(std::int64_t n) const;
  FieldElement from_code(Code c) const;
  FieldElement from_coefficients(const std::vector<std::int64_t> &c) const;
  /// All elements in code order.
  std::vector<FieldElement> elements() const;

private:
  GaloisField(std::int64_t p, int e, Code q) : p_(p), e_(e), q_(q) { modulus_ = find_modulus(); }

  // smallest monic irreducible of degree e_ in (c_{e-1}, ..., c_0) order
  std::vector<std::int64_t> find_modulus() const {
    if (e_ == 1) return {0, 1};
    for (Code code = 0; code < q_; ++code) {
      auto f = digits(code);
      f.push_back(1);
      if (is_irreducible(f)) return f;
    }
    throw std::logic_error("GaloisField: no irreducible polynomial found");
  }

  // trial division by every monic polynomial of degree 1..deg/2
  bool is_irreducible(const std::vector<std::int64_t> &f) const {
    const int n = static_cast<int>(f.size()) - 1;
    for (int d = 1; 2 * d <= n; ++d) {
      Code count = 1;
      for (int i = 0; i < d; ++i) count *= static_cast<Code>(p_);
      for (Code c = 0; c < count; ++c) {
        std::vector<std::int64_t> g(d + 1, 0);
        Code x = c;
        for (int i = 0; i < d; ++i) {
          g[i] = static_cast<std::int64_t>(x % static_cast<Code>(p_));
          x /= static_cast<Code>(p_);
        }
        g[d] = 1;
        auto r = f;
        for (int k = n; k >= d; --k) {
          std::int64_t lead = r[k];
          if (lead == 0) continue;
          for (int i = 0; i <= d; ++i) r[k - d + i] = ((r[k - d + i] - lead * g[i]) % p_ + p_) % p_;
        }
        bool zero = true;
        for (int i = 0; i < d; ++i) zero = zero && r[i] == 0;
        if (zero) return false;
      }
    }
    return true;
  }

  std::int64_t p_;
  int e_;
  Code q_;
  std::vector<std::int64_t> modulus_;
};

using FieldPtr = std::shared_ptr<const GaloisField>;

/// Element of a GaloisField. Carries its field; arithmetic between elements
/// of different fields throws.
class FieldElement {
public:
  using Code = GaloisField::Code;

  FieldElement() = default;
  FieldElement(FieldPtr field, Code code) : field_(std::move(field)), code_(code) {}

  const GaloisField &field() const { return *field_; }
  const FieldPtr &field_ptr() const noexcept { return field_; }
  Code code() const noexcept { return code_; }

  bool is_zero() const noexcept { return code_ == 0; }
  bool is_one() const noexcept { return code_ == 1; }
  /// True iff the element lies in the prime subfield F_p.
  bool in_prime_field() const noexcept { return code_ < static_cast<Code>(field_->characteristic()); }
  /// Residue in [0, p) if the element is in F_p.
  std::optional<std::int64_t> prime_value() const {
    if (!in_prime_field()) return std::nullopt;
    return static_cast<std::int64_t>(code_);
  }
  std::vector<std::int64_t> coefficients() const { return field_->digits(code_); }

  FieldElement pow(std::uint64_t n) const { return {field_, field_->pow(code_, n)}; }
  FieldElement inverse() const { return {field_, field_->inv(code_)}; }

  FieldElement operator-() const { return {field_, field_->neg(code_)}; }
  friend FieldElement operator+(const FieldElement &a, const FieldElement &b) {
    check(a, b);
    return {a.field_, a.field_->add(a.code_, b.code_)};
  }
  friend FieldElement operator-(const FieldElement &a, const FieldElement &b) {
    check(a, b);
    return {a.field_, a.field_->sub(a.code_, b.code_)};
  }
  friend FieldElement operator*(const FieldElement &a, const FieldElement &b) {
    check(a, b);
    return {a.field_, a.field_->mul(a.code_, b.code_)};
  }
  friend FieldElement operator/(const FieldElement &a, const FieldElement &b) {
    check(a, b);
    return {a.field_, a.field_->mul(a.code_, a.field_->inv(b.code_))};
  }
  FieldElement &operator+=(const FieldElement &b) { return *this = *this + b; }
  FieldElement &operator-=(const FieldElement &b) { return *this = *this - b; }
  FieldElement &operator*=(const FieldElement &b) { return *this = *this * b; }

  friend bool operator==(const FieldElement &a, const FieldElement &b) {
    return a.code_ == b.code_ && (a.field_ == b.field_ || (a.field_ && b.field_ && a.field_->same_as(*b.field_)));
  }

  std::string to_string() const {
    if (field_->degree() == 1) return std::to_string(code_);
    std::string s;
    auto d = coefficients();
    for (int i = field_->degree() - 1; i >= 0; --i) {
      if (d[i] == 0) continue;
      if (!s.empty()) s += "+";
      if (i == 0 || d[i] != 1) s += std::to_string(d[i]);
      if (i > 0) s += (i == 1 ? "t" : "t^" + std::to_string(i));
    }
    return s.empty() ? "0" : s;
  }

private:
  static void check(const FieldElement &a, const FieldElement &b) {
    if (!a.field_ || !b.field_ || !a.field_->same_as(*b.field_))
      throw Error(ErrorKind::FieldMismatch, "arithmetic between elements of different fields");
  }

  FieldPtr field_;
  Code code_ = 0;
};

inline FieldElement GaloisField::zero() const { return {shared_from_this(), 0}; }
inline FieldElement GaloisField::one() const { return {shared_from_this(), 1}; }
inline FieldElement GaloisField::from_int(std::int64_t n) const {
  return {shared_from_this(), static_cast<Code>(((n % p_) + p_) % p_)};
}
inline FieldElement GaloisField::from_code(Code c) const {
  if (c >= q_) throw std::out_of_range("GaloisField: element code out of range");
  return {shared_from_this(), c};
}
inline FieldElement GaloisField::from_coefficients(const std::vector<std::int64_t> &c) const {
  if (static_cast<int>(c.size()) > e_) throw std::invalid_argument("GaloisField: too many coefficients");
  std::vector<std::int64_t> d(c);
  d.resize(e_, 0);
  return {shared_from_this(), encode(d)};
}
inline std::vector<FieldElement> GaloisField::elements() const {
  std::vector<FieldElement> all;
  all.reserve(q_);
  for (Code c = 0; c < q_; ++c) all.emplace_back(shared_from_this(), c);
  return all;
}

} // namespace toricq

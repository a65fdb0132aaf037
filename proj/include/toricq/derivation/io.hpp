#pragma once

#include "toricq/derivation/derivation.hpp"
#include "toricq/fan/io.hpp"

namespace toricq {

/// A vector field file, before it is bound to a field.
///   {"p": 2, "e": 1, "diagonal": {"a": [0, 0, 1]}}
///   {"p": 3, "components": [[], [{"monomial": [1, 0], "coeff": 1}, ...]]}
/// "components" has one list per ray; "coeff" is an integer (read mod p) or,
/// over F_{p^e}, a list of coefficients c_0, c_1, ... of 1, t, t^2, ...
struct VectorFieldFile {
  std::optional<std::int64_t> p;
  std::optional<int> e;
  nlohmann::json body;
};

inline VectorFieldFile parse_vector_field_text(const std::string &text, const std::string &where = "vector field") {
  auto j = detail::parse_json_text(text, where);
  if (!j.is_object()) throw Error(ErrorKind::Parse, where + ": expected a JSON object");
  VectorFieldFile vf;
  if (j.contains("p")) vf.p = detail::json_integer(j.at("p"), where + ".p").get_si();
  if (j.contains("e")) vf.e = static_cast<int>(detail::json_integer(j.at("e"), where + ".e").get_si());
  if (j.contains("diagonal") == j.contains("components"))
    throw Error(ErrorKind::Parse, where + ": need exactly one of 'diagonal' or 'components'");
  vf.body = j;
  return vf;
}

inline VectorFieldFile load_vector_field_file(const std::string &path) {
  return parse_vector_field_text(detail::read_file(path), path);
}

namespace detail {

inline FieldElement json_coefficient(const FieldPtr &F, const nlohmann::json &c, const std::string &where) {
  auto small = [&](const nlohmann::json &x) {
    Integer v = json_integer(x, where);
    return mod_residue(v, F->characteristic());
  };
  if (c.is_array()) {
    if (c.size() > static_cast<std::size_t>(F->degree()))
      throw Error(ErrorKind::Parse, where + ": more coefficients than the extension degree");
    std::vector<std::int64_t> d;
    for (const auto &x : c) d.push_back(small(x));
    return F->from_coefficients(d);
  }
  return F->from_int(small(c));
}

inline nlohmann::ordered_json coefficient_json(const FieldElement &c) {
  if (c.field().degree() == 1) return static_cast<std::int64_t>(c.code());
  nlohmann::ordered_json a = nlohmann::ordered_json::array();
  for (auto d : c.coefficients()) a.push_back(d);
  return a;
}

} // namespace detail

/// Builds the derivation over F_{p^e}. Command-line overrides win over the
/// values in the file; p is required from one of the two.
inline CoxDerivation bind_vector_field(const VectorFieldFile &vf, const Fan &fan, const ClassGroup &cg,
                                       std::optional<std::int64_t> p_override = std::nullopt,
                                       std::optional<int> e_override = std::nullopt) {
  const std::string where = "vector field";
  auto p = p_override ? p_override : vf.p;
  if (!p) throw Error(ErrorKind::Parse, where + ": characteristic p not given");
  int e = e_override ? *e_override : vf.e.value_or(1);
  FieldPtr F;
  try {
    F = GaloisField::make(*p, e);
  } catch (const std::invalid_argument &ex) {
    throw Error(ErrorKind::Parse, where + ": " + ex.what());
  }
  const std::size_t N = fan.num_rays();
  const auto &j = vf.body;
  if (j.contains("diagonal")) {
    const auto &a = detail::require(j.at("diagonal"), "a", where + ".diagonal");
    if (!a.is_array() || a.size() != N)
      throw Error(ErrorKind::Parse, where + ".diagonal.a: expected " + std::to_string(N) + " entries");
    std::vector<FieldElement> c;
    for (std::size_t r = 0; r < N; ++r)
      c.push_back(detail::json_coefficient(F, a[r], where + ".diagonal.a[" + std::to_string(r) + "]"));
    return CoxDerivation::diagonal(F, cg, c);
  }
  const auto &comp = j.at("components");
  if (!comp.is_array() || comp.size() != N)
    throw Error(ErrorKind::Parse, where + ".components: expected " + std::to_string(N) + " lists");
  std::vector<GradedPolynomial> images;
  for (std::size_t r = 0; r < N; ++r) {
    const std::string at = where + ".components[" + std::to_string(r) + "]";
    if (!comp[r].is_array()) throw Error(ErrorKind::Parse, at + ": expected a list of terms");
    GradedPolynomial f(F, cg.degree_of_ray(r));
    for (const auto &t : comp[r]) {
      const auto &mj = detail::require(t, "monomial", at);
      if (!mj.is_array() || mj.size() != N)
        throw Error(ErrorKind::Parse, at + ": monomial needs " + std::to_string(N) + " exponents");
      Monomial m = Monomial::one(N);
      for (std::size_t i = 0; i < N; ++i) {
        auto x = detail::json_integer(mj[i], at + ".monomial");
        if (x < 0 || !x.fits_slong_p()) throw Error(ErrorKind::Parse, at + ": exponents must be non-negative");
        m.exponents[i] = x.get_si();
      }
      if (cg.degree(m) != f.degree())
        throw Error(ErrorKind::Parse, at + ": monomial " + m.to_string() + " is not in V_" + std::to_string(r) +
                                          " (wrong class)");
      f.add_term(m, detail::json_coefficient(F, detail::require(t, "coeff", at), at + ".coeff"));
    }
    images.push_back(std::move(f));
  }
  return {F, std::move(images)};
}

inline nlohmann::ordered_json vector_field_to_json(const CoxDerivation &D) {
  nlohmann::ordered_json j;
  j["p"] = D.field()->characteristic();
  j["e"] = D.field()->degree();
  if (auto a = D.diagonal_coefficients()) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto &c : *a) arr.push_back(detail::coefficient_json(c));
    j["diagonal"]["a"] = arr;
    return j;
  }
  nlohmann::ordered_json comp = nlohmann::ordered_json::array();
  for (const auto &f : D.images()) {
    nlohmann::ordered_json terms = nlohmann::ordered_json::array();
    for (const auto &[m, c] : f.terms()) {
      nlohmann::ordered_json t;
      t["monomial"] = m.exponents;
      t["coeff"] = detail::coefficient_json(c);
      terms.push_back(t);
    }
    comp.push_back(terms);
  }
  j["components"] = comp;
  return j;
}

} // namespace toricq

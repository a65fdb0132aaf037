#include "test_support.hpp"
#include "toricq/derivation/io.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

using namespace toricq;
using toricq::testing::cls;
using toricq::testing::corpus_fan;
using toricq::testing::mono;

namespace {

GradedPolynomial var(const FieldPtr &F, const ClassGroup &cg, std::size_t r) {
  return GradedPolynomial::term(F, cg.degree_of_ray(r), Monomial::variable(cg.num_rays(), r), F->one());
}

// (x0 + x1) d/dx1 on P^1
CoxDerivation shear(const FieldPtr &F, const ClassGroup &cg) {
  auto x0 = var(F, cg, 0), x1 = var(F, cg, 1);
  return CoxDerivation(F, {GradedPolynomial(F, cg.degree_of_ray(0)), x0 + x1});
}

GradedPolynomial random_homogeneous(const Fan &f, const ClassGroup &cg, const FieldPtr &F, const ClassVector &d,
                                    std::mt19937_64 &rng) {
  GradedPolynomial q(F, d);
  for (const auto &m : graded_piece(f, cg, d)) q.add_term(m, F->from_code(rng() % F->order()));
  return q;
}

CoxDerivation random_derivation(const Fan &f, const ClassGroup &cg, const FieldPtr &F, std::mt19937_64 &rng) {
  std::vector<GradedPolynomial> im;
  for (std::size_t r = 0; r < f.num_rays(); ++r) im.push_back(random_homogeneous(f, cg, F, cg.degree_of_ray(r), rng));
  return {F, im};
}

} // namespace

TEST(Derivation, ApplyOnVariables) {
  auto f = corpus_fan("p1");
  auto cg = class_group(f);
  auto F = GaloisField::make(3);
  auto D = shear(F, cg);
  EXPECT_TRUE(apply(D, var(F, cg, 0)).is_zero());
  EXPECT_EQ(apply(D, var(F, cg, 1)), var(F, cg, 0) + var(F, cg, 1));
  EXPECT_TRUE(D.preserves_degrees(cg));
}

TEST(Derivation, PthPowersAreConstants) {
  auto f = corpus_fan("p2");
  auto cg = class_group(f);
  for (std::int64_t p : {2, 3, 5}) {
    auto F = GaloisField::make(p);
    std::mt19937_64 rng(p);
    auto D = random_derivation(f, cg, F, rng);
    Monomial m = Monomial::one(3);
    m.exponents[1] = p;
    auto q = GradedPolynomial::term(F, cg.degree(m), m, F->one());
    EXPECT_TRUE(apply(D, q).is_zero());
  }
}

TEST(Derivation, LeibnizRandom) {
  std::mt19937_64 rng(11);
  for (const char *name : {"p1", "p2", "p1xp1", "hirzebruch_1"}) {
    auto f = corpus_fan(name);
    auto cg = class_group(f);
    auto classes = effective_classes(cg, 3);
    for (std::int64_t p : {2, 3}) {
      auto F = GaloisField::make(p);
      auto D = random_derivation(f, cg, F, rng);
      for (int t = 0; t < 20; ++t) {
        auto a = random_homogeneous(f, cg, F, classes[rng() % classes.size()], rng);
        auto b = random_homogeneous(f, cg, F, classes[rng() % classes.size()], rng);
        EXPECT_EQ(apply(D, a * b), apply(D, a) * b + a * apply(D, b)) << name << " p=" << p;
      }
    }
  }
}

TEST(Derivation, PPowerOfDiagonalOverPrimeField) {
  auto f = corpus_fan("p2");
  auto cg = class_group(f);
  auto F = GaloisField::make(5);
  auto D = CoxDerivation::diagonal(F, cg, std::vector<std::int64_t>{0, 3, 4});
  EXPECT_EQ(p_power(D), D);
}

TEST(Derivation, PPowerOfNilpotentIsZero) {
  auto f = corpus_fan("p1");
  auto cg = class_group(f);
  for (std::int64_t p : {2, 3}) {
    auto F = GaloisField::make(p);
    auto x0 = var(F, cg, 0);
    CoxDerivation D(F, {GradedPolynomial(F, cg.degree_of_ray(0)), x0});
    EXPECT_TRUE(p_power(D).is_zero());
  }
}

TEST(Derivation, EulerBasisShapes) {
  auto F = GaloisField::make(3);
  auto cg = class_group(corpus_fan("p2"));
  auto e = euler_basis(cg, F);
  ASSERT_EQ(e.size(), 1u);
  for (const auto &c : e[0].coefficients) EXPECT_TRUE(c.is_one());
  auto cgh = class_group(corpus_fan("hirzebruch_2"));
  EXPECT_EQ(euler_basis(cgh, F).size(), 2u);
}

TEST(Derivation, EulerRestrictsToZeroOnEveryChart) {
  for (const char *name : {"p1", "p2", "p1xp1", "hirzebruch_1", "hirzebruch_2", "hirzebruch_3"}) {
    auto f = corpus_fan(name);
    auto cg = class_group(f);
    for (std::int64_t p : {2, 3, 5}) {
      auto F = GaloisField::make(p);
      for (const auto &e : euler_basis(cg, F)) {
        auto D = e.derivation(F, cg);
        for (std::size_t s = 0; s < f.maxcones.size(); ++s)
          EXPECT_TRUE(chart_restrict(D, chart_frame(f, s)).is_zero()) << name << " cone " << s;
      }
    }
  }
}

TEST(Derivation, EqualsModEuler) {
  auto f = corpus_fan("p2");
  auto cg = class_group(f);
  auto F = GaloisField::make(3);
  auto a = CoxDerivation::diagonal(F, cg, std::vector<std::int64_t>{0, 0, 1});
  auto b = CoxDerivation::diagonal(F, cg, std::vector<std::int64_t>{1, 1, 2});
  auto c = CoxDerivation::diagonal(F, cg, std::vector<std::int64_t>{0, 1, 1});
  EXPECT_TRUE(equals_mod_euler(cg, a, b));
  EXPECT_FALSE(equals_mod_euler(cg, a, c));
  auto x0 = var(F, cg, 0);
  auto shifted = a;
  auto im = shifted.images();
  im[1] += x0;
  EXPECT_FALSE(equals_mod_euler(cg, CoxDerivation(F, im), a));
}

TEST(Derivation, IsMuP) {
  auto f1 = corpus_fan("p1");
  auto cg1 = class_group(f1);
  for (std::int64_t p : {2, 3}) {
    auto F = GaloisField::make(p);
    EXPECT_TRUE(is_mu_p(cg1, shear(F, cg1))) << p;
    CoxDerivation nil(F, {GradedPolynomial(F, cg1.degree_of_ray(0)), var(F, cg1, 0)});
    EXPECT_FALSE(is_mu_p(cg1, nil)) << p;
  }
  auto f2 = corpus_fan("p2");
  auto cg2 = class_group(f2);
  auto F = GaloisField::make(2);
  EXPECT_FALSE(is_mu_p(cg2, CoxDerivation::diagonal(F, cg2, std::vector<std::int64_t>{1, 1, 1})));
  EXPECT_TRUE(is_mu_p(cg2, CoxDerivation::diagonal(F, cg2, std::vector<std::int64_t>{0, 0, 1})));
}

TEST(Derivation, ChartRestrictionOfDiagonal) {
  // On a chart, z_i = x^{E[i]} and the diagonal field acts by alpha_i = sum_rho E[i][rho] a_rho.
  auto f = corpus_fan("p2");
  auto cg = class_group(f);
  auto F = GaloisField::make(2);
  std::vector<std::int64_t> a{0, 0, 1};
  auto D = CoxDerivation::diagonal(F, cg, a);
  for (std::size_t s = 0; s < 3; ++s) {
    auto fr = chart_frame(f, s);
    auto lv = chart_restrict(D, fr);
    ASSERT_TRUE(lv.diagonal);
    for (std::size_t i = 0; i < 2; ++i) {
      Integer w = 0;
      for (std::size_t r = 0; r < 3; ++r) w += fr.exponents(i, r) * a[r];
      EXPECT_EQ(lv.alphas[i], F->from_int(mod_residue(w, 2)));
    }
  }
  // cone(e1, e2) has z = x1/x0, x2/x0, and only x2 has weight 1
  auto lv0 = chart_restrict(D, chart_frame(f, 0));
  EXPECT_TRUE(lv0.alphas[0].is_zero());
  EXPECT_TRUE(lv0.alphas[1].is_one());
}

TEST(Derivation, ChartRestrictionOfShear) {
  // (x0 + x1) d/dx1 on the chart z = x0/x1 (cone of u0 = 1): D z = -z(z + 1) = z^2 + z mod 2
  auto f = corpus_fan("p1");
  auto cg = class_group(f);
  auto F = GaloisField::make(2);
  auto lv = chart_restrict(shear(F, cg), chart_frame(f, 0));
  ASSERT_EQ(lv.components.size(), 1u);
  const auto &g = lv.components[0];
  EXPECT_EQ(g.size(), 2u);
  EXPECT_TRUE(g.at({1}).is_one());
  EXPECT_TRUE(g.at({2}).is_one());
  EXPECT_FALSE(lv.diagonal);
}

TEST(Derivation, RestrictionIsLinear) {
  std::mt19937_64 rng(5);
  auto f = corpus_fan("hirzebruch_1");
  auto cg = class_group(f);
  auto F = GaloisField::make(3);
  for (int t = 0; t < 10; ++t) {
    auto A = random_derivation(f, cg, F, rng), B = random_derivation(f, cg, F, rng);
    for (std::size_t s = 0; s < f.maxcones.size(); ++s) {
      auto fr = chart_frame(f, s);
      auto la = chart_restrict(A, fr), lb = chart_restrict(B, fr), lab = chart_restrict(A + B, fr);
      for (std::size_t i = 0; i < 2; ++i) {
        auto sum = la.components[i];
        for (const auto &[z, c] : lb.components[i]) {
          auto [it, ins] = sum.try_emplace(z, c);
          if (!ins) {
            it->second += c;
            if (it->second.is_zero()) sum.erase(it);
          }
        }
        EXPECT_EQ(sum, lab.components[i]);
      }
    }
  }
}

TEST(VectorFieldIo, DiagonalAndComponents) {
  auto f = corpus_fan("p1");
  auto cg = class_group(f);
  auto vf = parse_vector_field_text(R"({"p":3,"diagonal":{"a":[0,1]}})");
  auto D = bind_vector_field(vf, f, cg);
  EXPECT_EQ(D.field()->characteristic(), 3);
  EXPECT_EQ(D, CoxDerivation::diagonal(D.field(), cg, std::vector<std::int64_t>{0, 1}));

  auto vf2 = parse_vector_field_text(
      R"({"p":2,"components":[[],[{"monomial":[1,0],"coeff":1},{"monomial":[0,1],"coeff":3}]]})");
  auto D2 = bind_vector_field(vf2, f, cg);
  EXPECT_EQ(D2, shear(D2.field(), cg));
  auto back = bind_vector_field(parse_vector_field_text(vector_field_to_json(D2).dump()), f, cg);
  EXPECT_EQ(back, D2);
}

TEST(VectorFieldIo, ExtensionCoefficients) {
  auto f = corpus_fan("p1");
  auto cg = class_group(f);
  auto vf = parse_vector_field_text(R"({"p":2,"e":2,"diagonal":{"a":[[0,1],1]}})");
  auto D = bind_vector_field(vf, f, cg);
  EXPECT_EQ(D.field()->degree(), 2);
  auto a = D.diagonal_coefficients();
  ASSERT_TRUE(a);
  EXPECT_FALSE((*a)[0].in_prime_field());
  auto back = bind_vector_field(parse_vector_field_text(vector_field_to_json(D).dump()), f, cg);
  EXPECT_EQ(back, D);
}

TEST(VectorFieldIo, Overrides) {
  auto f = corpus_fan("p1");
  auto cg = class_group(f);
  auto vf = parse_vector_field_text(R"({"diagonal":{"a":[0,1]}})");
  EXPECT_THROW(bind_vector_field(vf, f, cg), Error);
  EXPECT_EQ(bind_vector_field(vf, f, cg, 5).field()->characteristic(), 5);
  EXPECT_EQ(bind_vector_field(vf, f, cg, 5, 2).field()->degree(), 2);
}

TEST(VectorFieldIo, Errors) {
  auto f = corpus_fan("p1");
  auto cg = class_group(f);
  auto kind = [&](const std::string &text) {
    try {
      bind_vector_field(parse_vector_field_text(text), f, cg);
    } catch (const Error &e) {
      return e.kind();
    }
    return ErrorKind::InvalidFan; // sentinel: no error
  };
  EXPECT_EQ(kind("{"), ErrorKind::Parse);
  EXPECT_EQ(kind(R"({"p":4,"diagonal":{"a":[0,1]}})"), ErrorKind::Parse);
  EXPECT_EQ(kind(R"({"p":2,"diagonal":{"a":[0,1,1]}})"), ErrorKind::Parse);
  EXPECT_EQ(kind(R"({"p":2})"), ErrorKind::Parse);
  // x0^2 is not in V_1
  EXPECT_EQ(kind(R"({"p":2,"components":[[],[{"monomial":[2,0],"coeff":1}]]})"), ErrorKind::Parse);
  EXPECT_EQ(kind(R"({"p":2,"components":[[],[{"monomial":[-1,2],"coeff":1}]]})"), ErrorKind::Parse);
}

TEST(Derivation, ApplyExamples) {
  auto f = corpus_fan("p1");
  auto cg = class_group(f);
  for (std::int64_t p : {2, 3}) {
    auto F = GaloisField::make(p);
    CoxDerivation D(F, {GradedPolynomial(F, cg.degree_of_ray(0)), var(F, cg, 0)});
    auto x1sq = GradedPolynomial::term(F, cls({2}), mono({0, 2}), F->one());
    auto expect = GradedPolynomial::term(F, cls({2}), mono({1, 1}), F->from_int(2));
    EXPECT_EQ(apply(D, x1sq), expect);
    EXPECT_EQ(apply(D, x1sq).is_zero(), p == 2);
  }
  // diagonal: m -> (sum a_rho m_rho) m
  auto g = corpus_fan("p2");
  auto cgg = class_group(g);
  auto F = GaloisField::make(5);
  auto D = CoxDerivation::diagonal(F, cgg, std::vector<std::int64_t>{1, 2, 4});
  auto m = mono({2, 1, 3});
  auto q = GradedPolynomial::term(F, cgg.degree(m), m, F->one());
  EXPECT_EQ(apply(D, q), F->from_int(2 + 2 + 12) * q);
}

TEST(Derivation, EulerBasisP1xP1) {
  auto cg = class_group(corpus_fan("p1xp1"));
  auto F = GaloisField::make(2);
  auto e = euler_basis(cg, F);
  ASSERT_EQ(e.size(), 2u);
  std::vector<std::int64_t> c0, c1;
  for (const auto &x : e[0].coefficients) c0.push_back(*x.prime_value());
  for (const auto &x : e[1].coefficients) c1.push_back(*x.prime_value());
  EXPECT_EQ(c0, (std::vector<std::int64_t>{1, 1, 0, 0}));
  EXPECT_EQ(c1, (std::vector<std::int64_t>{0, 0, 1, 1}));
}

TEST(Derivation, ChartAlphaExamples) {
  auto p2 = corpus_fan("p2");
  auto cg2 = class_group(p2);
  auto p1 = corpus_fan("p1");
  auto cg1 = class_group(p1);
  for (std::int64_t p : {2, 3, 5}) {
    auto F = GaloisField::make(p);
    auto D = CoxDerivation::diagonal(F, cg2, std::vector<std::int64_t>{0, 0, 1});
    auto lv = chart_restrict(D, chart_frame(p2, 2)); // cone(u0, u1)
    ASSERT_TRUE(lv.diagonal);
    EXPECT_EQ(lv.alphas[0], F->from_int(p - 1));
    EXPECT_EQ(lv.alphas[1], F->from_int(p - 1));
    auto lv1 = chart_restrict(CoxDerivation::diagonal(F, cg1, std::vector<std::int64_t>{0, 1}), chart_frame(p1, 0));
    EXPECT_EQ(lv1.alphas[0], F->from_int(p - 1));
  }
}

TEST(Derivation, RestrictionFactorsThroughEuler) {
  std::mt19937_64 rng(21);
  for (const char *name : {"p2", "p1xp1", "hirzebruch_2"}) {
    auto f = corpus_fan(name);
    auto cg = class_group(f);
    auto F = GaloisField::make(3);
    auto euler = euler_basis(cg, F);
    for (int t = 0; t < 5; ++t) {
      auto D1 = random_derivation(f, cg, F, rng);
      auto D2 = D1;
      for (const auto &e : euler) D2 = D2 + F->from_int(static_cast<std::int64_t>(rng() % 3)) * e.derivation(F, cg);
      ASSERT_TRUE(equals_mod_euler(cg, D1, D2));
      for (std::size_t s = 0; s < f.maxcones.size(); ++s) {
        auto fr = chart_frame(f, s);
        EXPECT_EQ(chart_restrict(D1, fr).components, chart_restrict(D2, fr).components) << name;
      }
    }
  }
}

TEST(Derivation, RelabelingPermutesCharts) {
  std::mt19937_64 rng(8);
  for (const char *name : {"p2", "p1xp1", "hirzebruch_1"}) {
    auto f = corpus_fan(name);
    const std::size_t N = f.num_rays();
    std::vector<std::size_t> perm(N);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    Fan g = f; // ray perm[r] of g is ray r of f
    for (std::size_t r = 0; r < N; ++r) g.rays[perm[r]] = f.rays[r];
    for (auto &c : g.maxcones)
      for (auto &r : c) r = perm[r];
    auto cgf = class_group(f), cgg = class_group(g);
    auto F = GaloisField::make(3);
    std::vector<std::int64_t> a(N), b(N);
    for (std::size_t r = 0; r < N; ++r) b[perm[r]] = a[r] = static_cast<std::int64_t>(rng() % 3);
    auto Df = CoxDerivation::diagonal(F, cgf, a), Dg = CoxDerivation::diagonal(F, cgg, b);
    for (std::size_t s = 0; s < f.maxcones.size(); ++s)
      EXPECT_EQ(chart_restrict(Df, chart_frame(f, s)).alphas, chart_restrict(Dg, chart_frame(g, s)).alphas) << name;
  }
}

TEST(Derivation, PPowerIsDerivation) {
  std::mt19937_64 rng(2);
  auto f = corpus_fan("p1xp1");
  auto cg = class_group(f);
  auto F = GaloisField::make(3);
  auto classes = effective_classes(cg, 3);
  for (int t = 0; t < 5; ++t) {
    auto D = random_derivation(f, cg, F, rng);
    auto P = p_power(D);
    auto a = random_homogeneous(f, cg, F, classes[rng() % classes.size()], rng);
    auto b = random_homogeneous(f, cg, F, classes[rng() % classes.size()], rng);
    // P as a derivation agrees with applying D three times
    auto ab = a * b;
    EXPECT_EQ(apply(P, ab), apply(D, apply(D, apply(D, ab))));
    EXPECT_EQ(apply(P, ab), apply(P, a) * b + a * apply(P, b));
  }
}

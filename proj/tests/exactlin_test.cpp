#include "toricq/exactlin/fp_linalg.hpp"
#include "toricq/exactlin/lattice.hpp"
#include "toricq/exactlin/lp.hpp"
#include "toricq/exactlin/polytope.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace toricq;

namespace {

IntMatrix int_matrix(std::size_t r, std::size_t c, std::vector<long> v) {
  return IntMatrix(r, c, std::vector<Integer>(v.begin(), v.end()));
}

RatVector rv(std::initializer_list<Rational> v) { return RatVector(v); }

void expect_smith(const IntMatrix &a) {
  auto snf = smith_normal_form(a);
  EXPECT_EQ(snf.U * snf.S * snf.V, a);
  EXPECT_EQ(abs(determinant(snf.U)), 1);
  EXPECT_EQ(abs(determinant(snf.V)), 1);
  EXPECT_EQ(snf.U * snf.U_inv, identity_int(a.rows()));
  EXPECT_EQ(snf.V * snf.V_inv, identity_int(a.cols()));
  for (std::size_t i = 0; i < snf.S.rows(); ++i)
    for (std::size_t j = 0; j < snf.S.cols(); ++j)
      if (i != j) {
        EXPECT_EQ(snf.S(i, j), 0);
      }
  auto d = snf.invariant_factors();
  for (std::size_t i = 0; i + 1 < d.size(); ++i) EXPECT_EQ(d[i + 1] % d[i], 0);
  for (const auto &x : d) EXPECT_GT(x, 0);
}

} // namespace

TEST(SmithNormalForm, Identity) {
  auto snf = smith_normal_form(identity_int(2));
  EXPECT_EQ(snf.U, identity_int(2));
  EXPECT_EQ(snf.S, identity_int(2));
  EXPECT_EQ(snf.V, identity_int(2));
}

TEST(SmithNormalForm, AlreadyDiagonal) {
  auto snf = smith_normal_form(int_matrix(2, 2, {2, 0, 0, 4}));
  EXPECT_EQ(snf.S, int_matrix(2, 2, {2, 0, 0, 4}));
}

TEST(SmithNormalForm, ProjectivePlaneRayMatrix) {
  // rows e1, e2, -e1-e2: invariant factors (1,1), cokernel Z^3/im = Z
  auto a = int_matrix(3, 2, {1, 0, 0, 1, -1, -1});
  auto snf = smith_normal_form(a);
  EXPECT_EQ(snf.invariant_factors(), (std::vector<Integer>{1, 1}));
  expect_smith(a);
}

TEST(SmithNormalForm, NonTrivialFactors) {
  auto a = int_matrix(3, 3, {2, 4, 4, -6, 6, 12, 10, -4, -16});
  auto snf = smith_normal_form(a);
  EXPECT_EQ(snf.invariant_factors(), (std::vector<Integer>{2, 6, 12}));
  expect_smith(a);
}

TEST(SmithNormalForm, RandomReconstruction) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> entry(-9, 9), dim(1, 5);
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t r = dim(rng), c = dim(rng);
    std::vector<long> v(r * c);
    for (auto &x : v) x = entry(rng);
    expect_smith(int_matrix(r, c, v));
  }
}

TEST(HermiteRows, CanonicalForRowLattice) {
  auto a = int_matrix(3, 2, {4, 6, 2, 2, 0, 5});
  auto b = int_matrix(3, 2, {2, 2, 0, 5, 6, 8}); // same row lattice, other generators
  EXPECT_EQ(hermite_rows(a), hermite_rows(b));
  auto h = hermite_rows(a);
  EXPECT_EQ(h.rows(), 2u);
  EXPECT_GT(h(0, 0), 0);
  EXPECT_EQ(h(1, 0), 0);
  EXPECT_GE(h(0, 1), 0);
  EXPECT_LT(h(0, 1), h(1, 1));
}

TEST(Lattice, StandardFromNoGenerators) {
  auto l = Lattice::from_generators(2, {});
  EXPECT_EQ(l.basis(), identity_rat(2));
  EXPECT_EQ(l.index(), 1);
}

TEST(Lattice, HalfSecondCoordinate) {
  auto l = Lattice::from_generators(2, {rv({0, Rational(1, 2)})});
  EXPECT_EQ(l.basis_vector(0), rv({1, 0}));
  EXPECT_EQ(l.basis_vector(1), rv({0, Rational(1, 2)}));
  EXPECT_EQ(l.index(), 2);
  EXPECT_TRUE(l.is_overlattice());
}

TEST(Lattice, RankOneThird) {
  auto l = Lattice::from_generators(1, {rv({Rational(-1, 3)})});
  EXPECT_EQ(l.basis_vector(0), rv({Rational(1, 3)}));
  EXPECT_EQ(l.index(), 3);
}

TEST(Lattice, Duals) {
  EXPECT_EQ(Lattice::standard(2).dual(), Lattice::standard(2));
  auto n = Lattice::from_generators(2, {rv({0, Rational(1, 2)})});
  auto m = n.dual();
  EXPECT_EQ(m.basis_vector(0), rv({1, 0}));
  EXPECT_EQ(m.basis_vector(1), rv({0, 2}));
  for (std::int64_t p : {2, 3, 5}) {
    auto np = Lattice::from_generators(1, {rv({Rational(1, p)})});
    EXPECT_EQ(np.dual().basis_vector(0), rv({Rational(p)}));
    EXPECT_EQ(np.dual().index(), Rational(1, p));
  }
}

TEST(Lattice, PropertiesOnRandomGenerators) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> num(-6, 6), cnt(0, 3), dim(1, 3);
  std::vector<int> dens{2, 3, 4, 5, 9};
  std::uniform_int_distribution<std::size_t> den_pick(0, dens.size() - 1);
  for (int trial = 0; trial < 100; ++trial) {
    std::size_t n = dim(rng);
    std::vector<RatVector> gens(cnt(rng));
    for (auto &g : gens) {
      Integer den = dens[den_pick(rng)];
      for (std::size_t i = 0; i < n; ++i) {
        Rational q(num(rng), den);
        q.canonicalize();
        g.push_back(q);
      }
    }
    auto l = Lattice::from_generators(n, gens);
    // idempotent: feeding back its own basis
    std::vector<RatVector> basis;
    for (std::size_t k = 0; k < n; ++k) basis.push_back(l.basis_vector(k));
    EXPECT_EQ(Lattice::from_generators(n, basis), l);
    // order independent
    auto rev = gens;
    std::reverse(rev.begin(), rev.end());
    EXPECT_EQ(Lattice::from_generators(n, rev), l);
    EXPECT_EQ(l.dual().dual(), l);
    EXPECT_EQ(l.index().get_den(), 1);
    for (const auto &g : gens) EXPECT_TRUE(l.contains(g));
  }
}

TEST(GaloisField, DeterministicModulus) {
  EXPECT_EQ(GaloisField::make(2, 2)->modulus(), (std::vector<std::int64_t>{1, 1, 1}));
  EXPECT_EQ(GaloisField::make(3, 2)->modulus(), (std::vector<std::int64_t>{1, 0, 1}));
  EXPECT_EQ(GaloisField::make(2, 3)->modulus(), (std::vector<std::int64_t>{1, 1, 0, 1}));
  EXPECT_THROW(GaloisField::make(4), std::invalid_argument);
}

TEST(GaloisField, FieldAxiomsAndFrobenius) {
  for (auto [p, e] : std::vector<std::pair<int, int>>{{2, 1}, {3, 1}, {5, 1}, {2, 3}, {3, 2}, {5, 2}}) {
    auto F = GaloisField::make(p, e);
    auto all = F->elements();
    ASSERT_EQ(all.size(), F->order());
    std::mt19937_64 rng(p * 10 + e);
    std::uniform_int_distribution<std::size_t> pick(0, all.size() - 1);
    for (int i = 0; i < 300; ++i) {
      auto a = all[pick(rng)], b = all[pick(rng)], c = all[pick(rng)];
      EXPECT_EQ(a * (b + c), a * b + a * c);
      EXPECT_EQ((a + b).pow(p), a.pow(p) + b.pow(p));
      EXPECT_EQ(a - a, F->zero());
      if (!a.is_zero()) {
        EXPECT_EQ(a * a.inverse(), F->one());
      }
    }
    std::size_t prime = 0;
    for (const auto &a : all) {
      EXPECT_EQ(a.pow(F->order()), a);
      if (a.pow(p) == a) {
        ++prime;
        EXPECT_TRUE(a.in_prime_field());
      }
    }
    EXPECT_EQ(prime, static_cast<std::size_t>(p));
  }
}

TEST(FpKernel, Basics) {
  auto F = GaloisField::make(2);
  EXPECT_TRUE(fp_kernel(fp_identity(*F, 3), *F).empty());
  EXPECT_EQ(fp_kernel(FpMatrix(2, 3, F->zero()), *F).size(), 3u);
  FpMatrix row(1, 2, F->one());
  auto ker = fp_kernel(row, *F);
  ASSERT_EQ(ker.size(), 1u);
  EXPECT_EQ(ker[0], (FpVector{F->one(), F->one()}));
}

TEST(FpEigendecompose, ZeroMatrix) {
  auto F = GaloisField::make(3);
  auto spaces = fp_eigendecompose(FpMatrix(3, 3, F->zero()), *F);
  ASSERT_EQ(spaces.size(), 1u);
  EXPECT_EQ(spaces.at(0).size(), 3u);
}

TEST(FpEigendecompose, TwoByTwoOverF2) {
  auto F = GaloisField::make(2);
  // columns: psi(x0) = 0, psi(x1) = x0 + x1
  FpMatrix m(2, 2, F->zero());
  m(0, 1) = F->one();
  m(1, 1) = F->one();
  auto spaces = fp_eigendecompose(m, *F);
  ASSERT_EQ(spaces.size(), 2u);
  ASSERT_EQ(spaces.at(0).size(), 1u);
  EXPECT_EQ(spaces.at(0)[0], (FpVector{F->one(), F->zero()}));
  ASSERT_EQ(spaces.at(1).size(), 1u);
  EXPECT_EQ(spaces.at(1)[0], (FpVector{F->one(), F->one()}));
}

TEST(FpEigendecompose, NilpotentRejected) {
  auto F = GaloisField::make(2);
  FpMatrix m(2, 2, F->zero());
  m(0, 1) = F->one();
  try {
    fp_eigendecompose(m, *F);
    FAIL() << "expected NotIdempotentUnderP";
  } catch (const Error &e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotIdempotentUnderP);
  }
}

TEST(FpEigendecompose, RandomConjugatedDiagonals) {
  for (std::int64_t p : {2, 3, 5}) {
    auto F = GaloisField::make(p);
    std::mt19937_64 rng(p);
    std::uniform_int_distribution<std::int64_t> coef(0, p - 1);
    for (int trial = 0; trial < 40; ++trial) {
      const std::size_t n = 4;
      FpMatrix P(n, n, F->zero());
      do {
        for (std::size_t i = 0; i < n; ++i)
          for (std::size_t j = 0; j < n; ++j) P(i, j) = F->from_int(coef(rng));
      } while (fp_rank(P) < n);
      FpMatrix D(n, n, F->zero());
      for (std::size_t i = 0; i < n; ++i) D(i, i) = F->from_int(coef(rng));
      FpMatrix m = fp_multiply(fp_multiply(P, D, *F), fp_inverse(P, *F), *F);
      auto spaces = fp_eigendecompose(m, *F);
      std::vector<FpVector> all;
      for (const auto &[c, basis] : spaces)
        for (const auto &v : basis) {
          auto mv = fp_apply(m, v, *F);
          for (std::size_t i = 0; i < n; ++i) EXPECT_EQ(mv[i], F->from_int(c) * v[i]);
          all.push_back(v);
        }
      ASSERT_EQ(all.size(), n);
      EXPECT_EQ(fp_rank(FpMatrix::from_rows(all, n)), n);
    }
  }
}

TEST(ExactLp, SmallProblems) {
  // max x + y, x + 2y <= 4, 3x + y <= 6, x,y >= 0 -> (8/5, 6/5), value 14/5
  std::vector<lp::Constraint> cons{{rv({1, 2}), lp::Sense::LessEq, 4},
                                   {rv({3, 1}), lp::Sense::LessEq, 6},
                                   {rv({1, 0}), lp::Sense::GreaterEq, 0},
                                   {rv({0, 1}), lp::Sense::GreaterEq, 0}};
  auto res = lp::maximize(rv({1, 1}), cons);
  ASSERT_EQ(res.status, lp::Status::Optimal);
  EXPECT_EQ(res.value, Rational(14, 5));
  EXPECT_EQ(res.point, rv({Rational(8, 5), Rational(6, 5)}));

  std::vector<lp::Constraint> infeasible{{rv({1}), lp::Sense::GreaterEq, 2}, {rv({1}), lp::Sense::LessEq, 1}};
  EXPECT_EQ(lp::maximize(rv({0}), infeasible).status, lp::Status::Infeasible);
  std::vector<lp::Constraint> open{{rv({1}), lp::Sense::GreaterEq, 2}};
  EXPECT_EQ(lp::maximize(rv({1}), open).status, lp::Status::Unbounded);
  std::vector<lp::Constraint> eq{{rv({1, 1}), lp::Sense::Equal, 3}, {rv({1, -1}), lp::Sense::Equal, 1}};
  auto r = lp::maximize(rv({0, 0}), eq);
  ASSERT_EQ(r.status, lp::Status::Optimal);
  EXPECT_EQ(r.point, rv({2, 1}));
}

TEST(ExactLp, StrictFeasibility) {
  // x > 0 and -x > 0 is infeasible; x > 0, y > 0 with x - y = 0 is feasible
  EXPECT_FALSE(lp::strictly_feasible(1, {}, {rv({1}), rv({-1})}).has_value());
  auto w = lp::strictly_feasible(2, {rv({1, -1})}, {rv({1, 0}), rv({0, 1})});
  ASSERT_TRUE(w.has_value());
  EXPECT_GT((*w)[0], 0);
  EXPECT_EQ((*w)[0], (*w)[1]);
}

TEST(IntegerPoints, TriangleAndBruteForce) {
  // x >= 0, y >= 0, 3 - 2x - y >= 0
  std::vector<Halfspace> tri{{rv({1, 0}), 0}, {rv({0, 1}), 0}, {rv({-2, -1}), 3}};
  auto pts = integer_points(tri, 2);
  std::vector<IntVector> brute;
  for (int x = -5; x <= 5; ++x)
    for (int y = -5; y <= 5; ++y)
      if (x >= 0 && y >= 0 && 3 - 2 * x - y >= 0) brute.push_back({x, y});
  EXPECT_EQ(pts, brute);

  std::vector<Halfspace> empty{{rv({1}), Rational(-1, 3)}, {rv({-1}), Rational(2, 3)}};
  EXPECT_TRUE(integer_points(empty, 1).empty());
  std::vector<Halfspace> open{{rv({1, 0}), 0}, {rv({0, 1}), 0}};
  EXPECT_THROW(integer_points(open, 2), Error);
}

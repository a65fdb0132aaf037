#pragma once

#include "toricq/derivation/derivation.hpp"

#include <numeric>

namespace toricq {

/// Graded algebra map Phi: x_rho -> forward[rho], with inverse x_rho -> inverse[rho].
/// After diagonalization Phi^{-1} o D o Phi = sum_rho eigenvalues[rho] x_rho d/dx_rho.
struct Substitution {
  std::vector<GradedPolynomial> forward;
  std::vector<GradedPolynomial> inverse;
  std::vector<std::int64_t> eigenvalues;
};

/// q(images[0], ..., images[N-1]); the result keeps the degree of q, which is
/// correct whenever images[rho] has the degree of x_rho.
inline GradedPolynomial substitute(const std::vector<GradedPolynomial> &images, const GradedPolynomial &q) {
  GradedPolynomial out(q.field(), q.degree());
  std::vector<std::vector<GradedPolynomial>> powers(images.size());
  auto power = [&](std::size_t r, std::int64_t k) -> const GradedPolynomial & {
    auto &pw = powers[r];
    if (pw.empty()) {
      ClassVector zero(images[r].degree().size(), 0);
      pw.push_back(GradedPolynomial::term(q.field(), zero, Monomial::one(images.size()), q.field()->one()));
    }
    while (static_cast<std::int64_t>(pw.size()) <= k) pw.push_back(pw.back() * images[r]);
    return pw[k];
  };
  for (const auto &[m, c] : q.terms()) {
    ClassVector zero(q.degree().size(), 0);
    GradedPolynomial t = GradedPolynomial::term(q.field(), zero, Monomial::one(images.size()), c);
    for (std::size_t r = 0; r < m.size(); ++r)
      if (m[r] > 0) t = t * power(r, m[r]);
    out += t;
  }
  return out;
}

inline GradedPolynomial substitute(const std::vector<GradedPolynomial> &images, const Monomial &m,
                                   const ClassVector &degree) {
  const auto &F = images.at(0).field();
  return substitute(images, GradedPolynomial::term(F, degree, m, F->one()));
}

/// Phi^{-1} o D o Phi as a derivation.
inline CoxDerivation conjugate(const CoxDerivation &D, const Substitution &s) {
  std::vector<GradedPolynomial> im;
  for (std::size_t r = 0; r < D.num_rays(); ++r) im.push_back(substitute(s.inverse, apply(D, s.forward[r])));
  return {D.field(), std::move(im)};
}

namespace detail {

inline std::int64_t multiplicative_order(const FieldElement &g) {
  std::int64_t k = 1;
  for (FieldElement x = g; !x.is_one(); x *= g) ++k;
  return k;
}

inline std::string field_name(const GaloisField &F) {
  return "F_" + std::to_string(F.characteristic()) + (F.degree() > 1 ? "^" + std::to_string(F.degree()) : "");
}

} // namespace detail

/// Rescales D by beta with (beta D)^p = beta D, given D^p = alpha D with alpha != 0.
/// Throws NotPClosed when D^p is not a nonzero multiple of D, and
/// NeedsFieldExtension (with the smallest sufficient degree) when no beta
/// exists over the current field.
inline CoxDerivation rescale_to_idempotent(const CoxDerivation &D) {
  const auto &F = *D.field();
  if (D.is_zero()) throw Error(ErrorKind::NotPClosed, "zero vector field");
  auto P = p_power(D);
  std::optional<FieldElement> alpha;
  for (std::size_t r = 0; r < D.num_rays() && !alpha; ++r)
    if (!D.image(r).is_zero()) {
      const auto &[m, c] = *D.image(r).terms().begin();
      alpha = P.image(r).coefficient(m) / c;
    }
  if (!(P == *alpha * D)) throw Error(ErrorKind::NotPClosed, "D^p is not a multiple of D");
  if (alpha->is_zero()) throw Error(ErrorKind::NotPClosed, "D is nilpotent (D^p = 0)");
  if (alpha->is_one()) return D;
  // (beta D)^p = beta^p alpha D, so we need beta^{p-1} = alpha^{-1}
  const FieldElement target = alpha->inverse();
  const auto p = F.characteristic();
  for (const auto &beta : F.elements())
    if (!beta.is_zero() && beta.pow(p - 1) == target) return beta * D;
  // alpha^{-1} is a (p-1)-th power in F_{p^k} iff its order divides (p^k - 1)/(p - 1)
  const std::int64_t ord = detail::multiplicative_order(target);
  for (int k = F.degree() * 2;; k += F.degree()) {
    Integer qk;
    mpz_ui_pow_ui(qk.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(k));
    Integer norm_exp = (qk - 1) / (p - 1);
    if (norm_exp % ord == 0)
      throw Error(ErrorKind::NeedsFieldExtension, "no (p-1)-th root of alpha^{-1} = " + target.to_string() + " in " +
                                                      detail::field_name(F) + "; need degree " + std::to_string(k))
          .with_extension_degree(k);
  }
}

/// Finds gamma in F^r with L = D + sum_j gamma_j E_j satisfying L^p = L exactly,
/// trying gamma in lexicographic code order from 0. Euler derivations have
/// degree zero, so they commute with D and L^p = D^p + sum_j gamma_j^p E_j;
/// a shift with gamma in F_p never changes L^p - L, hence the search runs
/// over the whole coefficient field. Throws NoExactLift.
inline CoxDerivation exact_idempotent_lift(const ClassGroup &cg, const CoxDerivation &D) {
  const auto &F = D.field();
  const auto p = F->characteristic();
  const auto q = F->order();
  auto basis = euler_basis(cg, F);
  std::vector<CoxDerivation> euler;
  for (const auto &e : basis) euler.push_back(e.derivation(F, cg));
  const auto Dp = p_power(D);
  std::vector<GaloisField::Code> c(basis.size(), 0);
  while (true) {
    CoxDerivation L = D, Lp = Dp;
    for (std::size_t j = 0; j < c.size(); ++j)
      if (c[j]) {
        auto g = F->from_code(c[j]);
        L = L + g * euler[j];
        Lp = Lp + g.pow(p) * euler[j];
      }
    if (Lp == L) return L;
    std::size_t j = c.size();
    while (j > 0 && c[j - 1] == q - 1) c[--j] = 0;
    if (j == 0) break;
    ++c[j - 1];
  }
  throw Error(ErrorKind::NoExactLift, "no Euler shift over " + detail::field_name(*F) + " makes D^p = D hold exactly");
}

/// Graded automorphism y_rho = Phi(x_rho) with D(y_rho) = a_rho y_rho.
/// D must satisfy D^p = D on every generating piece (NotDiagonalizable
/// otherwise). The y_rho are picked from eigenspace bases by backtracking,
/// preferring vectors with a nonzero x_rho coefficient, then small
/// eigenvalues; the first choice making Phi invertible wins.
inline Substitution diagonalize(const Fan &fan, const ClassGroup &cg, const CoxDerivation &D,
                                std::size_t max_leaves = 100000) {
  const auto &F = D.field();
  const std::size_t N = fan.num_rays();

  std::set<ClassVector> gen_set;
  for (std::size_t r = 0; r < N; ++r) gen_set.insert(cg.degree_of_ray(r));
  std::vector<ClassVector> gens(gen_set.begin(), gen_set.end());

  struct Block {
    std::vector<Monomial> basis;
    std::vector<std::pair<std::int64_t, FpVector>> eigvecs;
  };
  std::map<ClassVector, Block> blocks;
  for (const auto &d : gens) {
    Block b;
    b.basis = graded_piece(fan, cg, d);
    FpMatrix M(b.basis.size(), b.basis.size(), F->zero());
    for (std::size_t j = 0; j < b.basis.size(); ++j) {
      auto img = apply(D, GradedPolynomial::term(F, d, b.basis[j], F->one()));
      auto col = coordinates(img, b.basis);
      for (std::size_t i = 0; i < col.size(); ++i) M(i, j) = col[i];
    }
    std::map<std::int64_t, std::vector<FpVector>> eig;
    try {
      eig = fp_eigendecompose(M, *F);
    } catch (const Error &e) {
      throw Error(ErrorKind::NotDiagonalizable, "D^p != D on the degree " + detail::vec_str(d) + " piece");
    }
    for (auto &[lam, vs] : eig)
      for (auto &v : vs) b.eigvecs.emplace_back(lam, std::move(v));
    blocks.emplace(d, std::move(b));
  }

  // per-ray candidate order
  std::vector<std::vector<std::size_t>> cand(N);
  std::vector<std::size_t> pos_in_block(N);
  for (std::size_t r = 0; r < N; ++r) {
    const auto &b = blocks.at(cg.degree_of_ray(r));
    auto x = Monomial::variable(N, r);
    pos_in_block[r] = static_cast<std::size_t>(std::find(b.basis.begin(), b.basis.end(), x) - b.basis.begin());
    std::vector<std::size_t> idx(b.eigvecs.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t u, std::size_t v) {
      bool nu = !b.eigvecs[u].second[pos_in_block[r]].is_zero(), nv = !b.eigvecs[v].second[pos_in_block[r]].is_zero();
      if (nu != nv) return nu;
      return b.eigvecs[u].first < b.eigvecs[v].first;
    });
    cand[r] = std::move(idx);
  }

  std::vector<std::size_t> choice(N);
  std::size_t leaves = 0;
  std::optional<Substitution> found;

  auto try_leaf = [&]() -> std::optional<Substitution> {
    Substitution s;
    for (std::size_t r = 0; r < N; ++r) {
      const auto &b = blocks.at(cg.degree_of_ray(r));
      s.forward.push_back(from_coordinates(F, cg.degree_of_ray(r), b.basis, b.eigvecs[choice[r]].second));
      s.eigenvalues.push_back(b.eigvecs[choice[r]].first);
    }
    s.inverse.assign(N, GradedPolynomial(F, ClassVector{}));
    for (const auto &d : gens) {
      const auto &b = blocks.at(d);
      FpMatrix Phi(b.basis.size(), b.basis.size(), F->zero());
      for (std::size_t j = 0; j < b.basis.size(); ++j) {
        auto col = coordinates(substitute(s.forward, b.basis[j], d), b.basis);
        for (std::size_t i = 0; i < col.size(); ++i) Phi(i, j) = col[i];
      }
      if (fp_rank(Phi) < b.basis.size()) return std::nullopt;
      auto Inv = fp_inverse(Phi, *F);
      for (std::size_t r = 0; r < N; ++r) {
        if (cg.degree_of_ray(r) != d) continue;
        FpVector col;
        for (std::size_t i = 0; i < b.basis.size(); ++i) col.push_back(Inv(i, pos_in_block[r]));
        s.inverse[r] = from_coordinates(F, d, b.basis, col);
      }
    }
    return s;
  };

  // y's of equal degree must be linearly independent
  auto independent_prefix = [&](std::size_t upto) {
    const auto d = cg.degree_of_ray(upto);
    const auto &b = blocks.at(d);
    std::vector<FpVector> rows;
    for (std::size_t r = 0; r <= upto; ++r)
      if (cg.degree_of_ray(r) == d) rows.push_back(b.eigvecs[choice[r]].second);
    FpMatrix m(rows.size(), b.basis.size(), F->zero());
    for (std::size_t i = 0; i < rows.size(); ++i)
      for (std::size_t j = 0; j < b.basis.size(); ++j) m(i, j) = rows[i][j];
    return fp_rank(m) == rows.size();
  };

  std::function<bool(std::size_t)> search = [&](std::size_t r) -> bool {
    if (r == N) {
      if (++leaves > max_leaves) return true;
      found = try_leaf();
      return found.has_value();
    }
    for (auto c : cand[r]) {
      choice[r] = c;
      if (!independent_prefix(r)) continue;
      if (search(r + 1)) return true;
    }
    return false;
  };
  search(0);
  if (!found)
    throw Error(ErrorKind::NoAutomorphismSelection,
                "no choice of eigenvectors gives a graded automorphism (" + std::to_string(leaves) + " tried)");

  auto Dp = conjugate(D, *found);
  if (!(Dp == CoxDerivation::diagonal(F, cg, found->eigenvalues)))
    throw std::logic_error("diagonalize: conjugated derivation is not diagonal");
  return *found;
}

/// alpha_i(sigma) = sum_rho E[i][rho] a_rho mod p: weights of the chart
/// coordinates under the diagonal action.
inline std::vector<std::int64_t> local_exponents(const ChartFrame &frame, const std::vector<std::int64_t> &a,
                                                 std::int64_t p) {
  std::vector<std::int64_t> alpha;
  for (std::size_t i = 0; i < frame.rays.size(); ++i) {
    Integer s = 0;
    for (std::size_t r = 0; r < a.size(); ++r) s += frame.exponents(i, r) * a[r];
    alpha.push_back(mod_residue(s, p));
  }
  return alpha;
}

} // namespace toricq

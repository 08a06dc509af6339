#include "hfactor/generators.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <Eigen/SVD>
#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <vector>

#include "hfactor/rng.hpp"

namespace hfactor {

namespace detail {

ComplexMatrix random_invertible(Eigen::Index n, Field field,
                                std::uint64_t seed, double kappa_cap) {
  Rng rng(seed);
  ComplexMatrix g = rng.gaussian_matrix(n, n, field);
  Eigen::JacobiSVD<ComplexMatrix> svd(
      g, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Eigen::VectorXd s = svd.singularValues();
  const double smax = s(0) > 0.0 ? s(0) : 1.0;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    s(i) = std::max(s(i), smax / kappa_cap);
  }
  ComplexMatrix out =
      svd.matrixU() * s.asDiagonal().toDenseMatrix().cast<Complex>() *
      svd.matrixV().adjoint();
  if (field == Field::Real) out = out.real().cast<Complex>();
  return out;
}

namespace {

double spectral_norm(const ComplexMatrix& a) {
  Eigen::JacobiSVD<ComplexMatrix> svd(a);
  return svd.singularValues()(0);
}

// eta-ordered orthogonal-like basis: V0 with V0† H V0 = diag(I_p, -I_q).
ComplexMatrix eta_basis(const InnerProductSpace& space) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(space.h_values());
  const Eigen::VectorXd ev = es.eigenvalues();
  const Eigen::Index n = space.dim();
  std::vector<Eigen::Index> pos, neg;
  for (Eigen::Index i = ev.size() - 1; i >= 0; --i)
    if (ev(i) > 0) pos.push_back(i);
  for (Eigen::Index i = 0; i < ev.size(); ++i)
    if (ev(i) < 0) neg.push_back(i);
  ComplexMatrix v0(n, n);
  for (std::size_t i = 0; i < pos.size(); ++i)
    v0.col(static_cast<Eigen::Index>(i)) =
        es.eigenvectors().col(pos[i]) / std::sqrt(ev(pos[i]));
  for (std::size_t i = 0; i < neg.size(); ++i)
    v0.col(static_cast<Eigen::Index>(pos.size() + i)) =
        es.eigenvectors().col(neg[i]) / std::sqrt(-ev(neg[i]));
  return v0;
}

// In eta coordinates, the congruence taking diag(I_p, -I_q) to the
// canonical K with exchange-coupled neutral blocks.
RealMatrix eta_to_k(Eigen::Index n, int p, int q, int m) {
  RealMatrix t = RealMatrix::Zero(n, n);
  const double s = 1.0 / std::sqrt(2.0);
  for (int i = 0; i < m; ++i) {
    // v_i = (e+_i + e-_i)/sqrt(2)
    t(i, i) = s;
    t(p + i, i) = s;
  }
  for (int j = 0; j < m; ++j) {
    // column m+j carries u_{m-j} = (e+_{m-j} - e-_{m-j})/sqrt(2), so the
    // coupling block comes out as Z_m.
    const int i = m - 1 - j;
    t(i, m + j) = s;
    t(p + i, m + j) = -s;
  }
  for (int i = m; i < p; ++i) t(i, m + i) = 1.0;
  for (int i = m; i < q; ++i) t(p + i, p + i) = 1.0;
  return t;
}

ComplexMatrix k_frame(const InnerProductSpace& space, int m,
                      std::uint64_t seed) {
  const Eigen::Index n = space.dim();
  const int p = space.positive_count();
  const int q = space.negative_count();
  ComplexMatrix q0 =
      eta_basis(space) * eta_to_k(n, p, q, m).cast<Complex>();
  const SquareMatrix l = gen_h_unitary(space, seed);
  ComplexMatrix out = l.values() * q0;
  if (space.field() == Field::Real) out = out.real().cast<Complex>();
  return out;
}

ComplexMatrix conjugate(const ComplexMatrix& q, const ComplexMatrix& mid) {
  Eigen::PartialPivLU<ComplexMatrix> lu(q.transpose());
  return lu.solve((q * mid).transpose()).transpose();
}

}  // namespace
}  // namespace detail

InnerProductSpace gen_space(Eigen::Index n, int p, std::uint64_t seed,
                            Field field, const ToleranceConfig* tol_in) {
  if (p < 0 || p > n) throw IndexTooLarge("gen_space: need 0 <= p <= n");
  const ToleranceConfig tol =
      tol_in ? *tol_in : ToleranceConfig::defaults_for(n);
  ComplexMatrix v = detail::random_invertible(n, field, seed, 10.0);
  RealMatrix eta = RealMatrix::Identity(n, n);
  eta.bottomRightCorner(n - p, n - p) =
      -RealMatrix::Identity(n - p, n - p);
  ComplexMatrix h = v * eta.cast<Complex>() * v.adjoint();
  InnerProductSpace space(SquareMatrix::from_values(h, field), tol);
  if (space.positive_count() != p) {
    throw Error("gen_space: inertia mismatch after congruence");
  }
  return space;
}

SquareMatrix gen_h_unitary(const InnerProductSpace& space,
                           std::uint64_t seed) {
  Rng rng(seed);
  const Eigen::Index n = space.dim();
  ComplexMatrix g = rng.gaussian_matrix(n, n, space.field());
  ComplexMatrix skew = 0.5 * (g - space.adjoint_of(g));
  const double norm = detail::spectral_norm(skew);
  const double target = 0.3 + 0.7 * rng.uniform();
  if (norm > 0.0) skew *= target / norm;
  ComplexMatrix l = skew.exp();
  return SquareMatrix::from_values(l, space.field());
}

GeneratedInvolution gen_neutral_involution(Eigen::Index n, int p, int m,
                                           std::uint64_t seed, Field field,
                                           const ToleranceConfig* tol_in) {
  const int q = static_cast<int>(n) - p;
  if (m < 0 || m > std::min(p, q)) {
    throw IndexTooLarge("gen_neutral_involution: need m <= min(p, q)");
  }
  const ToleranceConfig tol =
      tol_in ? *tol_in : ToleranceConfig::defaults_for(n);

  ComplexMatrix qmat = detail::random_invertible(n, field, seed, 100.0);
  const RealMatrix j = canonical_first(CanonicalLayout::JK, n, p, q, m);
  const RealMatrix k = canonical_second(CanonicalLayout::JK, n, p, q, m);

  const ComplexMatrix x = detail::conjugate(qmat, j.cast<Complex>());
  // H = Q^{-dagger} K Q^{-1}, solved as two triangular-free linear systems.
  Eigen::PartialPivLU<ComplexMatrix> lua(qmat.adjoint().eval());
  const ComplexMatrix y = lua.solve(k.cast<Complex>());
  Eigen::PartialPivLU<ComplexMatrix> lut(qmat.transpose().eval());
  const ComplexMatrix h = lut.solve(y.transpose()).transpose();

  InnerProductSpace space(SquareMatrix::from_values(h, field), tol);
  if (space.positive_count() != p) {
    throw Error("gen_neutral_involution: induced inertia mismatch");
  }
  NeutralInvolution inv =
      certify(SquareMatrix::from_values(x, field), space, tol);
  if (inv.neutral_index != m) {
    throw Error("gen_neutral_involution: certified index differs from m");
  }
  return {std::move(inv), std::move(space),
          SquareMatrix::from_values(qmat, field)};
}

NeutralInvolution gen_neutral_involution_over(const InnerProductSpace& space,
                                              int m, std::uint64_t seed,
                                              const ToleranceConfig& tol) {
  const Eigen::Index n = space.dim();
  const int p = space.positive_count();
  const int q = space.negative_count();
  if (m < 0 || m > std::min(p, q)) {
    throw IndexTooLarge("gen_neutral_involution_over: need m <= min(p, q)");
  }
  const ComplexMatrix qmat = detail::k_frame(space, m, seed);
  const RealMatrix j = canonical_first(CanonicalLayout::JK, n, p, q, m);
  ComplexMatrix x = detail::conjugate(qmat, j.cast<Complex>());
  if (space.field() == Field::Real) x = x.real().cast<Complex>();

  NeutralInvolution inv =
      certify(SquareMatrix::from_values(x, space.field()), space, tol);
  if (inv.neutral_index != m) {
    throw Error("gen_neutral_involution_over: certified index differs from m");
  }
  return inv;
}

SquareMatrix gen_nonsingular_with_sigma(const InnerProductSpace& space, int m,
                                        std::uint64_t seed,
                                        const ToleranceConfig& /*tol*/) {
  const Eigen::Index n = space.dim();
  const int p = space.positive_count();
  const int q = space.negative_count();
  if (m < 0 || m > std::min(p, q)) {
    throw IndexTooLarge(
        "gen_nonsingular_with_sigma: target negative eigenspace dimension "
        "2m is inadmissible for this inertia");
  }
  Rng rng(seed);
  const std::uint64_t seed_frame = rng.raw();
  const std::uint64_t seed_sneg = rng.raw();
  const std::uint64_t seed_spos = rng.raw();
  const std::uint64_t seed_l = rng.raw();

  const ComplexMatrix qmat = detail::k_frame(space, m, seed_frame);
  const RealMatrix j = canonical_first(CanonicalLayout::JK, n, p, q, m);
  const ComplexMatrix x = detail::conjugate(qmat, j.cast<Complex>());

  // Block factor on neg(Phi): K_neg-selfadjoint with real positive spectrum,
  // so Sign(F^{[H]}F) keeps the full 2m-dimensional negative eigenspace.
  ComplexMatrix shat = ComplexMatrix::Zero(n, n);
  if (m > 0) {
    Rng rng_neg(seed_sneg);
    RealMatrix kneg = RealMatrix::Zero(2 * m, 2 * m);
    kneg.topRightCorner(m, m) = exchange_matrix(m);
    kneg.bottomLeftCorner(m, m) = exchange_matrix(m);
    const ComplexMatrix kc = kneg.cast<Complex>();
    ComplexMatrix g = rng_neg.gaussian_matrix(2 * m, 2 * m, space.field());
    ComplexMatrix skew = 0.5 * (g - kc * g.adjoint() * kc);
    const double nrm = detail::spectral_norm(skew);
    if (nrm > 0.0) skew *= (0.2 + 0.6 * rng_neg.uniform()) / nrm;
    const ComplexMatrix r = skew.exp();
    Eigen::VectorXcd d(2 * m);
    for (Eigen::Index i = 0; i < 2 * m; ++i)
      d(i) = Complex(0.5 + 1.5 * rng_neg.uniform(), 0.0);
    shat.topLeftCorner(2 * m, 2 * m) =
        detail::conjugate(r, ComplexMatrix(d.asDiagonal()));
  }
  if (n - 2 * m > 0) {
    Rng rng_pos(seed_spos);
    RealMatrix eta = RealMatrix::Identity(n - 2 * m, n - 2 * m);
    eta.bottomRightCorner(q - m, q - m) =
        -RealMatrix::Identity(q - m, q - m);
    const ComplexMatrix ec = eta.cast<Complex>();
    ComplexMatrix g =
        rng_pos.gaussian_matrix(n - 2 * m, n - 2 * m, space.field());
    ComplexMatrix sym = 0.5 * (g + ec * g.adjoint() * ec);
    const double nrm = detail::spectral_norm(sym);
    if (nrm > 0.0) sym *= (0.2 + 1.0 * rng_pos.uniform()) / nrm;
    shat.bottomRightCorner(n - 2 * m, n - 2 * m) = sym.exp();
  }

  const ComplexMatrix s0 = detail::conjugate(qmat, shat);
  const SquareMatrix lf = gen_h_unitary(space, seed_l);
  ComplexMatrix f = lf.values() * x * s0;
  return SquareMatrix::from_values(f, space.field());
}

}  // namespace hfactor

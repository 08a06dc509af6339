#include "hfactor/phi_solver.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <Eigen/QR>
#include <Eigen/SVD>

#include <cmath>
#include <vector>

#include "hfactor/rng.hpp"

namespace hfactor {

namespace {

// Orthonormal range basis of an involution eigenprojector. The rank is not
// known a priori; singular values of (I +- Phi)/2 split into a group at
// >= 1/kappa and a group at roundoff, so a sqrt(eps) relative cut sits
// between them with orders of magnitude to spare.
ComplexMatrix involution_eigenbasis(const ComplexMatrix& projector,
                                    bool realify) {
  const Eigen::Index n = projector.rows();
  // A nonzero idempotent has spectral norm >= 1, so the reference scale is
  // floored at 1: a projector that is pure roundoff has rank 0.
  const double cut = std::sqrt(std::numeric_limits<double>::epsilon());
  if (realify) {
    Eigen::JacobiSVD<RealMatrix> svd(projector.real().eval(),
                                     Eigen::ComputeFullU);
    const auto& s = svd.singularValues();
    const double scale = std::max(s(0), 1.0);
    Eigen::Index rank = 0;
    while (rank < n && s(rank) > cut * scale) ++rank;
    return svd.matrixU().leftCols(rank).cast<Complex>();
  }
  Eigen::JacobiSVD<ComplexMatrix> svd(projector, Eigen::ComputeFullU);
  const auto& s = svd.singularValues();
  const double scale = std::max(s(0), 1.0);
  Eigen::Index rank = 0;
  while (rank < n && s(rank) > cut * scale) ++rank;
  return svd.matrixU().leftCols(rank);
}

ComplexMatrix seeded_unitary(Eigen::Index k, Field field, std::uint64_t seed) {
  Rng rng(seed);
  ComplexMatrix g = rng.gaussian_matrix(k, k, field);
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  return qr.householderQ() * ComplexMatrix::Identity(k, k);
}

}  // namespace

NeutralInvolution solve_involution(const SquareMatrix& phi,
                                   const InnerProductSpace& space,
                                   const ToleranceConfig& tol,
                                   std::uint64_t seed) {
  const Eigen::Index n = phi.dim();
  if (n != space.dim()) {
    throw DimensionMismatch("solve_involution: Phi and space dimensions "
                            "differ");
  }
  const bool realify =
      phi.is_real() && space.field() == Field::Real;
  const ComplexMatrix id = ComplexMatrix::Identity(n, n);
  const ComplexMatrix& pv = phi.values();
  const double scale = phi.norm();

  const double r_inv = rel_residual(pv * pv - id, scale);
  if (r_inv > tol.eps_residual) {
    throw NotInvolutory("solve_involution: Phi^2 = I violated", "involution",
                        r_inv);
  }
  const double r_sa = rel_residual(space.adjoint_of(pv) - pv, scale);
  if (r_sa > tol.eps_residual) {
    throw NotHSelfadjoint("solve_involution: Phi is not H-selfadjoint",
                          "h_selfadjoint", r_sa);
  }

  ComplexMatrix nbasis = involution_eigenbasis(0.5 * (id - pv), realify);
  const Eigen::Index dim_neg = nbasis.cols();
  if (dim_neg % 2 != 0) {
    throw NegSpaceNotHyperbolic(
        "solve_involution: negative eigenspace has odd dimension");
  }
  const Eigen::Index m = dim_neg / 2;

  if (seed != 0 && dim_neg > 0) {
    nbasis = nbasis * seeded_unitary(dim_neg, realify ? Field::Real
                                                      : Field::Complex,
                                     seed);
    if (realify) nbasis = nbasis.real().cast<Complex>();
  }

  const ComplexMatrix& h = space.h_values();
  ComplexMatrix qmat(n, n);

  if (m > 0) {
    ComplexMatrix g = nbasis.adjoint() * h * nbasis;
    g = 0.5 * (g + g.adjoint());
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(g);
    const Eigen::VectorXd ev = es.eigenvalues();
    const double gscale = std::max(ev.cwiseAbs().maxCoeff(), space.h_norm());
    std::vector<Eigen::Index> pos, neg;
    for (Eigen::Index i = ev.size() - 1; i >= 0; --i) {
      if (ev(i) > tol.eps_rank * gscale) pos.push_back(i);
    }
    for (Eigen::Index i = 0; i < ev.size(); ++i) {
      if (ev(i) < -tol.eps_rank * gscale) neg.push_back(i);
    }
    if (static_cast<Eigen::Index>(pos.size() + neg.size()) != dim_neg ||
        pos.size() != neg.size()) {
      throw NegSpaceNotHyperbolic(
          "solve_involution: negative eigenspace of Phi is degenerate or has "
          "nonzero signature");
    }
    // Columns scaled to unit H-norm magnitude: M block = diag(-I_m, I_m).
    for (Eigen::Index i = 0; i < m; ++i) {
      qmat.col(i) = nbasis * es.eigenvectors().col(neg[static_cast<std::size_t>(i)]) /
                    std::sqrt(-ev(neg[static_cast<std::size_t>(i)]));
      qmat.col(m + i) =
          nbasis * es.eigenvectors().col(pos[static_cast<std::size_t>(i)]) /
          std::sqrt(ev(pos[static_cast<std::size_t>(i)]));
    }
  }

  const ComplexMatrix pbasis = involution_eigenbasis(0.5 * (id + pv), realify);
  if (pbasis.cols() != n - 2 * m) {
    throw NotInvolutory("solve_involution: eigenspace dimensions of Phi do "
                        "not sum to n",
                        "involution", r_inv);
  }
  if (n - 2 * m > 0) {
    ComplexMatrix c = pbasis.adjoint() * h * pbasis;
    c = 0.5 * (c + c.adjoint());
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(c);
    const Eigen::VectorXd ev = es.eigenvalues();
    const double cscale = std::max(ev.cwiseAbs().maxCoeff(), space.h_norm());
    std::vector<Eigen::Index> pos, neg;
    for (Eigen::Index i = ev.size() - 1; i >= 0; --i) {
      if (ev(i) > tol.eps_rank * cscale) pos.push_back(i);
    }
    for (Eigen::Index i = 0; i < ev.size(); ++i) {
      if (ev(i) < -tol.eps_rank * cscale) neg.push_back(i);
    }
    if (static_cast<Eigen::Index>(pos.size() + neg.size()) != n - 2 * m) {
      throw DegenerateGram(
          "solve_involution: Gram on pos(Phi) is numerically degenerate");
    }
    for (std::size_t i = 0; i < pos.size(); ++i) {
      qmat.col(2 * m + static_cast<Eigen::Index>(i)) =
          pbasis * es.eigenvectors().col(pos[i]) / std::sqrt(ev(pos[i]));
    }
    for (std::size_t i = 0; i < neg.size(); ++i) {
      qmat.col(2 * m + static_cast<Eigen::Index>(pos.size() + i)) =
          pbasis * es.eigenvectors().col(neg[i]) / std::sqrt(-ev(neg[i]));
    }
  }

  // X = Q P Q^{-1} with the exchange-coupled canonical involution P.
  ComplexMatrix pmat = ComplexMatrix::Zero(n, n);
  if (m > 0) {
    const ComplexMatrix z = exchange_matrix(m).cast<Complex>();
    pmat.block(0, m, m, m) = z;
    pmat.block(m, 0, m, m) = z;
  }
  pmat.bottomRightCorner(n - 2 * m, n - 2 * m).setIdentity();

  Eigen::PartialPivLU<ComplexMatrix> qlu(qmat.transpose());
  const ComplexMatrix x = qlu.solve((qmat * pmat).transpose()).transpose();

  NeutralInvolution out = certify(
      SquareMatrix::from_values(x, realify ? Field::Real : Field::Complex),
      space, tol);
  if (out.neutral_index != static_cast<int>(m)) {
    throw NegSpaceNotHyperbolic(
        "solve_involution: constructed involution has unexpected index");
  }
  const double r_phi =
      rel_residual(space.adjoint_of(x) * x - pv, scale);
  out.residuals["phi_equation"] = r_phi;
  if (r_phi > tol.eps_residual) {
    throw DegenerateGram(
        "solve_involution: X^{[H]}X = Phi residual exceeded tolerance");
  }
  return out;
}

SquareMatrix all_solutions_related(const NeutralInvolution& x1,
                                   const NeutralInvolution& x2,
                                   const SquareMatrix& phi,
                                   const InnerProductSpace& space,
                                   const ToleranceConfig& tol) {
  auto connector = similarity(x1, x2, space, tol);
  if (!connector) {
    // Both solve the same Phi, hence share the index; reaching this means
    // at least one certificate is inconsistent.
    throw Error("all_solutions_related: solutions report different neutral "
                "indices");
  }
  const ComplexMatrix& l = connector->values();
  const double r_commute =
      rel_residual(l * phi.values() - phi.values() * l, phi.norm());
  if (r_commute > tol.eps_residual) {
    throw Error("all_solutions_related: connector does not commute with Phi");
  }
  return *connector;
}

}  // namespace hfactor

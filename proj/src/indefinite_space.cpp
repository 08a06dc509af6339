#include "hfactor/indefinite_space.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>

#include <algorithm>
#include <cmath>
#include <vector>

#include "hfactor/dense_kernel.hpp"

namespace hfactor {

namespace {

// Eigenvalues of a Hermitian matrix given as raw complex values.
Eigen::VectorXd hermitian_eigenvalues(const ComplexMatrix& g) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(g,
                                                  Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

void require_rank(const ComplexMatrix& basis, const ToleranceConfig& tol) {
  if (basis.cols() == 0) return;
  Eigen::ColPivHouseholderQR<ComplexMatrix> qr(basis);
  qr.setThreshold(tol.eps_rank);
  if (qr.rank() < basis.cols()) {
    throw RankDeficient("basis does not have full column rank");
  }
}

}  // namespace

InnerProductSpace::InnerProductSpace(const SquareMatrix& h,
                                     const ToleranceConfig& tol) {
  ComplexMatrix sym = 0.5 * (h.values() + h.values().adjoint());
  h_ = SquareMatrix::from_values(sym, h.field());
  h_norm_ = h_.norm();

  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h_.values(),
                                                  Eigen::EigenvaluesOnly);
  const Eigen::VectorXd ev = es.eigenvalues();
  const double scale = ev.size() > 0 ? ev.cwiseAbs().maxCoeff() : 0.0;
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (std::abs(ev(i)) <= tol.eps_rank * scale || scale == 0.0) {
      throw SingularInput("inner product matrix singular");
    }
    if (ev(i) > 0) {
      ++p_;
    } else {
      ++q_;
    }
  }
  h_lu_.compute(h_.values());
}

ComplexMatrix InnerProductSpace::adjoint_of(const ComplexMatrix& a) const {
  if (a.rows() != dim() || a.cols() != dim()) {
    throw DimensionMismatch("H-adjoint: operand dimension does not match the "
                            "inner product space");
  }
  return h_lu_.solve(a.adjoint() * h_.values());
}

SquareMatrix h_adjoint(const SquareMatrix& a, const InnerProductSpace& space) {
  return SquareMatrix::from_values(space.adjoint_of(a.values()),
                                   join(a.field(), space.field()));
}

PredicateResult is_h_selfadjoint(const SquareMatrix& a,
                                 const InnerProductSpace& space,
                                 const ToleranceConfig& tol) {
  const ComplexMatrix adj = space.adjoint_of(a.values());
  const double r = rel_residual(adj - a.values(), a.norm());
  return {r <= tol.eps_residual, r};
}

PredicateResult is_h_unitary(const SquareMatrix& a,
                             const InnerProductSpace& space,
                             const ToleranceConfig& tol) {
  const ComplexMatrix prod = space.adjoint_of(a.values()) * a.values();
  const double r = rel_residual(
      prod - ComplexMatrix::Identity(a.dim(), a.dim()), a.norm());
  return {r <= tol.eps_residual, r};
}

PredicateResult is_h_normal(const SquareMatrix& a,
                            const InnerProductSpace& space,
                            const ToleranceConfig& tol) {
  const ComplexMatrix adj = space.adjoint_of(a.values());
  const double r =
      rel_residual(a.values() * adj - adj * a.values(), a.norm());
  return {r <= tol.eps_residual, r};
}

PredicateResult is_h_neutral_involutory(const SquareMatrix& a,
                                        const InnerProductSpace& space,
                                        const ToleranceConfig& tol) {
  const Eigen::Index n = a.dim();
  const ComplexMatrix id = ComplexMatrix::Identity(n, n);
  const ComplexMatrix adj = space.adjoint_of(a.values());
  const double r_inv = rel_residual(a.values() * a.values() - id, a.norm());
  const double r_neu =
      rel_residual(adj * a.values() - (adj + a.values() - id), a.norm());
  const double r = std::max(r_inv, r_neu);
  return {r <= tol.eps_residual, r};
}

SquareMatrix restricted_gram(const ComplexMatrix& basis,
                             const InnerProductSpace& space,
                             const ToleranceConfig& tol) {
  if (basis.rows() != space.dim()) {
    throw DimensionMismatch("restricted_gram: basis rows must equal the "
                            "space dimension");
  }
  require_rank(basis, tol);
  ComplexMatrix g = basis.adjoint() * space.h_values() * basis;
  g = 0.5 * (g + g.adjoint());  // selfadjoint by construction
  const bool real = space.field() == Field::Real && basis.imag().isZero(0.0);
  return SquareMatrix::from_values(g, real ? Field::Real : Field::Complex);
}

SubspaceReport subspace_report(const ComplexMatrix& basis,
                               const InnerProductSpace& space,
                               const ToleranceConfig& tol) {
  SquareMatrix gram = restricted_gram(basis, space, tol);
  SubspaceReport rep;
  rep.dim = basis.cols();
  if (rep.dim == 0) return rep;  // trivially hyperbolic

  const Eigen::VectorXd ev = hermitian_eigenvalues(gram.values());
  const double thr =
      tol.eps_rank * std::max(ev.cwiseAbs().maxCoeff(), space.h_norm());
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (ev(i) > thr) {
      ++rep.positive;
    } else if (ev(i) < -thr) {
      ++rep.negative;
    } else {
      rep.nondegenerate = false;
    }
  }
  rep.hyperbolic = rep.nondegenerate && rep.positive == rep.negative;
  return rep;
}

HyperbolicBasis hyperbolic_basis(const ComplexMatrix& basis,
                                 const InnerProductSpace& space,
                                 const ToleranceConfig& tol) {
  SubspaceReport rep = subspace_report(basis, space, tol);
  if (!rep.hyperbolic) {
    throw NotHyperbolic("hyperbolic_basis: subspace is not hyperbolic");
  }
  const Eigen::Index m = rep.positive;
  HyperbolicBasis out;
  out.u.resize(basis.rows(), m);
  out.v.resize(basis.rows(), m);
  out.w.resize(basis.rows(), m);
  out.z.resize(basis.rows(), m);
  if (m == 0) return out;

  SquareMatrix gram = restricted_gram(basis, space, tol);
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(gram.values());
  const Eigen::VectorXd ev = es.eigenvalues();

  // Pair by descending eigenvalue magnitude; ties broken by column index.
  std::vector<Eigen::Index> pos, neg;
  for (Eigen::Index i = ev.size() - 1; i >= 0; --i)
    if (ev(i) > 0) pos.push_back(i);
  for (Eigen::Index i = 0; i < ev.size(); ++i)
    if (ev(i) < 0) neg.push_back(i);

  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  for (Eigen::Index i = 0; i < m; ++i) {
    const Eigen::Index ip = pos[static_cast<std::size_t>(i)];
    const Eigen::Index in = neg[static_cast<std::size_t>(i)];
    out.w.col(i) = basis * es.eigenvectors().col(ip) / std::sqrt(ev(ip));
    out.z.col(i) = basis * es.eigenvectors().col(in) / std::sqrt(-ev(in));
    out.u.col(i) = inv_sqrt2 * (out.w.col(i) + out.z.col(i));
    out.v.col(i) = inv_sqrt2 * (out.w.col(i) - out.z.col(i));
  }

  if (space.field() == Field::Real && basis.imag().isZero(0.0)) {
    out.u = out.u.real().cast<Complex>();
    out.v = out.v.real().cast<Complex>();
    out.w = out.w.real().cast<Complex>();
    out.z = out.z.real().cast<Complex>();
  }
  return out;
}

SubspaceReport negative_eigenspace_hyperbolicity(const SquareMatrix& f,
                                                 const InnerProductSpace& space,
                                                 const ToleranceConfig& tol) {
  const SquareMatrix m = h_adjoint(f, space) * f;
  SpectrumSplit split = split_spectrum(m, tol);
  return subspace_report(split.basis_neg, space, tol);
}

}  // namespace hfactor

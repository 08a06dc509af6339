#ifndef HFACTOR_INDEFINITE_SPACE_HPP
#define HFACTOR_INDEFINITE_SPACE_HPP

#include <Eigen/LU>

#include "hfactor/types.hpp"

namespace hfactor {

/// A nondegenerate (possibly indefinite) inner product [x,y] = x† H y.
/// H is symmetrized on ingestion; the inertia (p, q) is cached.
class InnerProductSpace {
 public:
  InnerProductSpace(const SquareMatrix& h, const ToleranceConfig& tol);

  static InnerProductSpace euclidean(Eigen::Index n,
                                     Field field = Field::Real) {
    return InnerProductSpace(SquareMatrix::identity(n, field),
                             ToleranceConfig::defaults_for(n));
  }

  Eigen::Index dim() const { return h_.dim(); }
  Field field() const { return h_.field(); }
  const SquareMatrix& h() const { return h_; }
  const ComplexMatrix& h_values() const { return h_.values(); }
  int positive_count() const { return p_; }
  int negative_count() const { return q_; }
  double h_norm() const { return h_norm_; }

  /// H-adjoint on raw values: H^{-1} A† H.
  ComplexMatrix adjoint_of(const ComplexMatrix& a) const;

  /// Inner product of two column vectors.
  Complex inner(const Eigen::VectorXcd& x, const Eigen::VectorXcd& y) const {
    return (x.adjoint() * h_.values() * y)(0, 0);
  }

 private:
  SquareMatrix h_;
  int p_ = 0;
  int q_ = 0;
  double h_norm_ = 0.0;
  Eigen::PartialPivLU<ComplexMatrix> h_lu_;
};

/// A^{[H]} = H^{-1} A† H.
SquareMatrix h_adjoint(const SquareMatrix& a, const InnerProductSpace& space);

/// Boolean verdict plus the relative Frobenius residual of the defining
/// identity.
struct PredicateResult {
  bool ok;
  double residual;
};

PredicateResult is_h_selfadjoint(const SquareMatrix& a,
                                 const InnerProductSpace& space,
                                 const ToleranceConfig& tol);
PredicateResult is_h_unitary(const SquareMatrix& a,
                             const InnerProductSpace& space,
                             const ToleranceConfig& tol);
PredicateResult is_h_normal(const SquareMatrix& a,
                            const InnerProductSpace& space,
                            const ToleranceConfig& tol);
/// Checks X^2 = I together with X^{[H]}X = X^{[H]} + X - I; the residual is
/// the larger of the two.
PredicateResult is_h_neutral_involutory(const SquareMatrix& a,
                                        const InnerProductSpace& space,
                                        const ToleranceConfig& tol);

/// Gram matrix basis† H basis of a full-column-rank basis.
SquareMatrix restricted_gram(const ComplexMatrix& basis,
                             const InnerProductSpace& space,
                             const ToleranceConfig& tol);

/// Inertia and degeneracy of the inner product restricted to a subspace.
struct SubspaceReport {
  Eigen::Index dim = 0;
  int positive = 0;
  int negative = 0;
  bool nondegenerate = true;
  bool hyperbolic = true;  // nondegenerate and positive == negative
};

SubspaceReport subspace_report(const ComplexMatrix& basis,
                               const InnerProductSpace& space,
                               const ToleranceConfig& tol);

/// Basis of a hyperbolic subspace in both standard shapes: the neutral
/// pair (u, v) with [u_i, v_j] = delta_ij and the rotated pair (w, z) with
/// [w_i, w_j] = delta_ij, [z_i, z_j] = -delta_ij, [w_i, z_j] = 0.
struct HyperbolicBasis {
  ComplexMatrix u;
  ComplexMatrix v;
  ComplexMatrix w;
  ComplexMatrix z;
};

HyperbolicBasis hyperbolic_basis(const ComplexMatrix& basis,
                                 const InnerProductSpace& space,
                                 const ToleranceConfig& tol);

/// Report on the negative eigenspace of F^{[H]} F. For any nonsingular F it
/// must come back hyperbolic; a different verdict flags numerical breakdown.
SubspaceReport negative_eigenspace_hyperbolicity(const SquareMatrix& f,
                                                 const InnerProductSpace& space,
                                                 const ToleranceConfig& tol);

}  // namespace hfactor

#endif  // HFACTOR_INDEFINITE_SPACE_HPP

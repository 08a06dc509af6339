#ifndef HFACTOR_DENSE_KERNEL_HPP
#define HFACTOR_DENSE_KERNEL_HPP

#include <vector>

#include "hfactor/types.hpp"

namespace hfactor {

/// Unitary Schur factorization A = Q T Q† with T upper triangular.
/// Complex form is returned for real inputs as well; the realness of
/// downstream functions is restored where the mathematics guarantees it.
struct SchurForm {
  SquareMatrix q;
  SquareMatrix t;
};

SchurForm schur(const SquareMatrix& a);

/// Partition of the spectrum into the negative-real cluster and the rest,
/// together with orthonormal bases of the two complementary invariant
/// subspaces. For real inputs both bases are exactly real.
struct SpectrumSplit {
  std::vector<Complex> neg_real;
  std::vector<Complex> rest;
  ComplexMatrix basis_neg;   // n x k, orthonormal columns
  ComplexMatrix basis_rest;  // n x (n-k), orthonormal columns
};

SpectrumSplit split_spectrum(const SquareMatrix& a, const ToleranceConfig& tol);

/// Oblique spectral projector onto the negative-real invariant subspace,
/// with the complementary invariant subspace as kernel.
SquareMatrix spectral_projector_neg(const SquareMatrix& a,
                                    const ToleranceConfig& tol);

/// Principal square root: the unique solution of S^2 = A with spectrum in
/// the open right half-plane. Requires no negative real eigenvalues.
SquareMatrix principal_sqrt(const SquareMatrix& a, const ToleranceConfig& tol);

/// Solves A Y - Y B = C for disjoint spectra of A and B. C may be
/// rectangular, dim(A) x dim(B); the result is exactly real whenever all
/// three inputs are.
ComplexMatrix sylvester_solve(const SquareMatrix& a, const SquareMatrix& b,
                              const ComplexMatrix& c,
                              const ToleranceConfig& tol);

namespace detail {

/// Negative-real classification of a computed spectrum. Eigenvalues are
/// first merged into proximity clusters so that the rounding-induced
/// splitting of a defective eigenvalue cannot straddle the classification
/// threshold; each cluster is then classified through its mean, which is
/// far better conditioned than the individual cluster members.
std::vector<bool> classify_negative_real(const std::vector<Complex>& eigs,
                                         double scale,
                                         const ToleranceConfig& tol);

/// Reorders a complex Schur form with unitary Givens swaps so that the
/// flagged eigenvalues occupy the leading block. Returns their count.
Eigen::Index reorder_schur(ComplexMatrix& q, ComplexMatrix& t,
                           std::vector<bool> flags);

/// Solves T1 Y - Y T2 = C for upper-triangular T1, T2.
ComplexMatrix sylvester_triangular(const ComplexMatrix& t1,
                                   const ComplexMatrix& t2,
                                   const ComplexMatrix& c);

/// Ordered Schur form with the negative-real cluster leading.
struct OrderedSchur {
  ComplexMatrix q;
  ComplexMatrix t;
  Eigen::Index neg_count;
  std::vector<Complex> eigenvalues;  // reordered, matches diag(t)
};

OrderedSchur ordered_schur_neg(const SquareMatrix& a,
                               const ToleranceConfig& tol);

/// Throws SingularInput if any eigenvalue lies within the class threshold
/// of the origin.
void guard_nonsingular(const std::vector<Complex>& eigs, double scale,
                       const ToleranceConfig& tol);

/// Orthonormal basis of the column span of `cols`, truncated to `rank`
/// columns chosen by column-pivoted QR.
ComplexMatrix orthonormal_span(const ComplexMatrix& cols, Eigen::Index rank);

/// Real orthonormal basis of a conjugation-closed complex column span.
RealMatrix real_span(const ComplexMatrix& cols, Eigen::Index rank);

}  // namespace detail

}  // namespace hfactor

#endif  // HFACTOR_DENSE_KERNEL_HPP

#include "hfactor/sign_function.hpp"

#include "hfactor/dense_kernel.hpp"

namespace hfactor {

SquareMatrix sign_matrix(const SquareMatrix& a, const ToleranceConfig& tol) {
  const SquareMatrix p = spectral_projector_neg(a, tol);
  const ComplexMatrix sigma =
      ComplexMatrix::Identity(a.dim(), a.dim()) - 2.0 * p.values();
  return SquareMatrix::from_values(sigma, a.field());
}

}  // namespace hfactor

#ifndef HFACTOR_SIGN_FUNCTION_HPP
#define HFACTOR_SIGN_FUNCTION_HPP

#include "hfactor/types.hpp"

namespace hfactor {

/// Matrix sign with stem function -1 on the negative real axis, +1 on the
/// rest of the punctured plane, and all derivative data zero. Computed as
/// I - 2P with P the spectral projector onto the negative-real invariant
/// subspace; never by scalar substitution in an eigenvector basis, so
/// defective eigenvalues map to exact -I blocks. This is not the classical
/// Roberts sign, which sends every left-half-plane eigenvalue to -1.
SquareMatrix sign_matrix(const SquareMatrix& a, const ToleranceConfig& tol);

}  // namespace hfactor

#endif  // HFACTOR_SIGN_FUNCTION_HPP

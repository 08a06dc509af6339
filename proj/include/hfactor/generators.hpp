#ifndef HFACTOR_GENERATORS_HPP
#define HFACTOR_GENERATORS_HPP

#include <cstdint>

#include "hfactor/neutral_involutions.hpp"

namespace hfactor {

/// Random inner product of prescribed inertia (p, n-p), built by a
/// condition-bounded congruence of diag(I_p, -I_q).
InnerProductSpace gen_space(Eigen::Index n, int p, std::uint64_t seed,
                            Field field = Field::Real,
                            const ToleranceConfig* tol = nullptr);

/// Random H-unitary, exp of a random H-skew-adjoint generator with bounded
/// norm so the condition number stays moderate.
SquareMatrix gen_h_unitary(const InnerProductSpace& space, std::uint64_t seed);

/// A neutral involution together with the inner product it induces:
/// X = Q J Q^{-1}, H = Q^{-dagger} K Q^{-1} for a random kappa-bounded Q.
struct GeneratedInvolution {
  NeutralInvolution involution;
  InnerProductSpace space;
  SquareMatrix transform;  // the Q used
};

GeneratedInvolution gen_neutral_involution(Eigen::Index n, int p, int m,
                                           std::uint64_t seed,
                                           Field field = Field::Real,
                                           const ToleranceConfig* tol = nullptr);

/// Certified neutral involution of index m over a given space, randomized
/// by an H-unitary similarity.
NeutralInvolution gen_neutral_involution_over(const InnerProductSpace& space,
                                              int m, std::uint64_t seed,
                                              const ToleranceConfig& tol);

/// Nonsingular F whose F^{[H]}F has a negative eigenspace of dimension
/// exactly 2m, built by running the factorization pipeline in reverse:
/// F = L X S with an S that keeps real positive spectrum on neg(Phi).
SquareMatrix gen_nonsingular_with_sigma(const InnerProductSpace& space, int m,
                                        std::uint64_t seed,
                                        const ToleranceConfig& tol);

namespace detail {
/// Random invertible matrix with singular values clamped so the condition
/// number stays below `kappa_cap`.
ComplexMatrix random_invertible(Eigen::Index n, Field field, std::uint64_t seed,
                                double kappa_cap);
}  // namespace detail

}  // namespace hfactor

#endif  // HFACTOR_GENERATORS_HPP

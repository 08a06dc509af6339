#ifndef HFACTOR_PHI_SOLVER_HPP
#define HFACTOR_PHI_SOLVER_HPP

#include <cstdint>

#include "hfactor/neutral_involutions.hpp"

namespace hfactor {

/// Given an H-selfadjoint involutory Phi whose negative eigenspace is
/// hyperbolic of dimension 2m, constructs a certified H-normal H-neutral
/// involutory X of neutral index m with X^{[H]}X = X X^{[H]} = Phi.
///
/// The solution set is a group orbit; the default seed gives the fixed
/// deterministic representative, other seeds pick a different member by
/// remixing the negative-eigenspace basis.
NeutralInvolution solve_involution(const SquareMatrix& phi,
                                   const InnerProductSpace& space,
                                   const ToleranceConfig& tol,
                                   std::uint64_t seed = 0);

/// H-unitary connector between two solutions of the same Phi:
/// L^{-1} X2 L = X1 with L Phi = Phi L.
SquareMatrix all_solutions_related(const NeutralInvolution& x1,
                                   const NeutralInvolution& x2,
                                   const SquareMatrix& phi,
                                   const InnerProductSpace& space,
                                   const ToleranceConfig& tol);

}  // namespace hfactor

#endif  // HFACTOR_PHI_SOLVER_HPP

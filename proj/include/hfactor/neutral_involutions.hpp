#ifndef HFACTOR_NEUTRAL_INVOLUTIONS_HPP
#define HFACTOR_NEUTRAL_INVOLUTIONS_HPP

#include <map>
#include <optional>
#include <string>

#include "hfactor/indefinite_space.hpp"
#include "hfactor/types.hpp"

namespace hfactor {

/// An H-normal H-neutral involutory matrix with certified identities and
/// its neutral index m = dim(neg X).
struct NeutralInvolution {
  SquareMatrix x;
  int neutral_index = 0;
  std::map<std::string, double> residuals;
};

/// The four canonical layouts of the pair (X, H): block form (J, K), the
/// exchanged form (P, M), and the per-hyperbolic-plane variants of each.
enum class CanonicalLayout { JK, PM, JKPlanes, PMPlanes };

struct CanonicalPair {
  SquareMatrix transform;  // Q with Q^{-1} X Q = first, Q† H Q = second
  SquareMatrix first;
  SquareMatrix second;
  CanonicalLayout layout = CanonicalLayout::JK;
  double kappa_q = 0.0;
  std::map<std::string, double> residuals;
};

/// Verifies X^2 = I, H-normality and the neutrality identity
/// X^{[H]}X = X^{[H]} + X - I, derives the neutral index from the trace and
/// cross-checks the trace identity tr(X^{[H]}X) = n - 4m.
NeutralInvolution certify(const SquareMatrix& x, const InnerProductSpace& space,
                          const ToleranceConfig& tol);

/// Canonical pair of (X, H) built through the constructive bases of
/// neg(X), neg(X^{[H]}) and pos(X^{[H]}X).
CanonicalPair canonical_pair(const NeutralInvolution& inv,
                             const InnerProductSpace& space,
                             const ToleranceConfig& tol,
                             CanonicalLayout layout = CanonicalLayout::JK);

/// H-unitary L with L^{-1} X2 L = X1 when the neutral indices agree;
/// empty otherwise.
std::optional<SquareMatrix> similarity(const NeutralInvolution& x1,
                                       const NeutralInvolution& x2,
                                       const InnerProductSpace& space,
                                       const ToleranceConfig& tol);

/// Certified X^{[H]}; carries the same neutral index as X.
NeutralInvolution adjoint_involution(const NeutralInvolution& inv,
                                     const InnerProductSpace& space,
                                     const ToleranceConfig& tol);

/// Exchange matrix Z_m (ones on the antidiagonal).
RealMatrix exchange_matrix(Eigen::Index m);

/// Canonical involution (J, P or their plane variants) for the layout.
RealMatrix canonical_first(CanonicalLayout layout, Eigen::Index n, int p,
                           int q, int m);
/// Canonical inner product matrix (K, M or their plane variants).
RealMatrix canonical_second(CanonicalLayout layout, Eigen::Index n, int p,
                            int q, int m);

namespace detail {
/// Leading `rank` orthonormal columns of the range of a computed projector.
ComplexMatrix projector_range(const ComplexMatrix& projector, Eigen::Index rank,
                              bool realify, const ToleranceConfig& tol);
}  // namespace detail

}  // namespace hfactor

#endif  // HFACTOR_NEUTRAL_INVOLUTIONS_HPP

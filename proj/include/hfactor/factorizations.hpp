#ifndef HFACTOR_FACTORIZATIONS_HPP
#define HFACTOR_FACTORIZATIONS_HPP

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <utility>

#include "hfactor/phi_solver.hpp"

namespace hfactor {

/// The unique indefinite polar decomposition F = W S = S' W with
/// Sigma = Sign(F^{[H]}F), S = (Sigma F^{[H]}F)^{1/2}, and W carrying the
/// (H, H Sigma)- and (H Sigma', H)-unitarity.
struct PolarFactors {
  SquareMatrix w;
  SquareMatrix s;
  SquareMatrix s_prime;
  SquareMatrix sigma;
  SquareMatrix sigma_prime;
  std::map<std::string, double> residuals;

  bool within(double bound) const {
    for (const auto& [name, r] : residuals) {
      if (r > bound) return false;
    }
    return true;
  }
};

PolarFactors indefinite_polar(const SquareMatrix& f,
                              const InnerProductSpace& space,
                              const ToleranceConfig& tol);

/// W = L X for an (H, H Phi)-unitary W, Phi = W^{[H]} W.
std::pair<SquareMatrix, NeutralInvolution> split_w_right(
    const SquareMatrix& w, const InnerProductSpace& space,
    const ToleranceConfig& tol, std::uint64_t seed = 0);

/// W = X L for an (H Phi, H)-unitary W, Phi = W W^{[H]}.
std::pair<NeutralInvolution, SquareMatrix> split_w_left(
    const SquareMatrix& w, const InnerProductSpace& space,
    const ToleranceConfig& tol, std::uint64_t seed = 0);

/// The four factor arrangements: F = LXS, S'LX, S'XL, XLS.
enum class FactorVariant { LXS, SLX, SXL, XLS };

const char* to_string(FactorVariant v);

struct NormalFactorization {
  FactorVariant variant = FactorVariant::LXS;
  std::array<SquareMatrix, 3> factors;  // in product order
  NeutralInvolution involution;         // the X factor with certificates
  int neutral_index = 0;
  std::map<std::string, double> certificates;

  bool within(double bound) const {
    for (const auto& [name, r] : certificates) {
      if (r > bound) return false;
    }
    return true;
  }
};

NormalFactorization factor_normal(const SquareMatrix& f,
                                  const InnerProductSpace& space,
                                  const ToleranceConfig& tol,
                                  FactorVariant variant = FactorVariant::LXS,
                                  std::uint64_t seed = 0);

namespace detail {
/// Right division A B^{-1} through a transposed linear solve.
ComplexMatrix divide_right(const ComplexMatrix& a, const ComplexMatrix& b);
/// Smallest real part over the spectrum, for r-positive-definiteness checks.
double min_spectrum_real_part(const SquareMatrix& a);
/// 2-norm condition number.
double condition_number(const ComplexMatrix& a);
}  // namespace detail

}  // namespace hfactor

#endif  // HFACTOR_FACTORIZATIONS_HPP

#ifndef HFACTOR_RNG_HPP
#define HFACTOR_RNG_HPP

#include <cmath>
#include <cstdint>
#include <random>

#include "hfactor/types.hpp"

namespace hfactor {

/// Deterministic random source. All randomness in the library flows
/// through an explicit 64-bit seed; the gaussian transform is hand-rolled
/// so sequences do not depend on the standard library implementation.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform() {
    // 53-bit mantissa in [0, 1).
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  double gaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * M_PI * u2;
    spare_ = r * std::sin(theta);
    have_spare_ = true;
    return r * std::cos(theta);
  }

  RealMatrix gaussian_real(Eigen::Index rows, Eigen::Index cols) {
    RealMatrix m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i)
      for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = gaussian();
    return m;
  }

  ComplexMatrix gaussian_matrix(Eigen::Index rows, Eigen::Index cols,
                                Field field) {
    if (field == Field::Real) return gaussian_real(rows, cols).cast<Complex>();
    ComplexMatrix m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i)
      for (Eigen::Index j = 0; j < cols; ++j)
        m(i, j) = Complex(gaussian(), gaussian());
    return m;
  }

  std::uint64_t raw() { return engine_(); }

 private:
  std::mt19937_64 engine_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace hfactor

#endif  // HFACTOR_RNG_HPP

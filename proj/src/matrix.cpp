#include "hfactor/types.hpp"

namespace hfactor {

void SquareMatrix::require_square(Eigen::Index rows, Eigen::Index cols) {
  if (rows != cols) {
    throw DimensionMismatch("matrix must be square, got " +
                            std::to_string(rows) + "x" + std::to_string(cols));
  }
}

void ToleranceConfig::validate() const {
  auto check = [](double v, const char* name) {
    if (!(v > 0.0) || !(v < 1.0)) {
      throw Error(std::string("tolerance ") + name +
                  " must lie strictly between 0 and 1");
    }
  };
  check(eps_class, "eps_class");
  check(eps_residual, "eps_residual");
  check(eps_rank, "eps_rank");
}

}  // namespace hfactor

#ifndef HFACTOR_TYPES_HPP
#define HFACTOR_TYPES_HPP

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace hfactor {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using RealMatrix = Eigen::MatrixXd;

/// Scalar field of a matrix. A Real-tagged matrix stores exact-zero
/// imaginary parts; every operation preserves that invariant.
enum class Field { Real, Complex };

inline Field join(Field a, Field b) {
  return (a == Field::Real && b == Field::Real) ? Field::Real : Field::Complex;
}

/// Dense square matrix over R or C. The carrier for every value in the
/// pipeline; rectangular subspace bases are plain Eigen matrices.
class SquareMatrix {
 public:
  SquareMatrix() : field_(Field::Real) {}

  static SquareMatrix real(const RealMatrix& m) {
    require_square(m.rows(), m.cols());
    SquareMatrix out;
    out.field_ = Field::Real;
    out.values_ = m.cast<Complex>();
    return out;
  }

  static SquareMatrix complex(ComplexMatrix m) {
    require_square(m.rows(), m.cols());
    SquareMatrix out;
    out.field_ = Field::Complex;
    out.values_ = std::move(m);
    return out;
  }

  /// Tags `m` with `f`; a Real tag drops the (mathematically known to be
  /// negligible) imaginary parts so the realness invariant holds exactly.
  static SquareMatrix from_values(const ComplexMatrix& m, Field f) {
    if (f == Field::Real) return real(m.real());
    return complex(m);
  }

  static SquareMatrix identity(Eigen::Index n, Field f = Field::Real) {
    return from_values(ComplexMatrix::Identity(n, n), f);
  }

  static SquareMatrix zero(Eigen::Index n, Field f = Field::Real) {
    return from_values(ComplexMatrix::Zero(n, n), f);
  }

  Eigen::Index dim() const { return values_.rows(); }
  Field field() const { return field_; }
  bool is_real() const { return field_ == Field::Real; }

  const ComplexMatrix& values() const { return values_; }
  RealMatrix real_values() const { return values_.real(); }

  double norm() const { return values_.norm(); }

  /// Conjugate transpose (plain dagger, not the H-adjoint).
  SquareMatrix adjoint() const {
    return from_values(values_.adjoint(), field_);
  }

  SquareMatrix transpose() const {
    return from_values(values_.transpose(), field_);
  }

  Complex trace() const { return values_.trace(); }

  friend SquareMatrix operator*(const SquareMatrix& a, const SquareMatrix& b) {
    return from_values(a.values_ * b.values_, join(a.field_, b.field_));
  }
  friend SquareMatrix operator+(const SquareMatrix& a, const SquareMatrix& b) {
    return from_values(a.values_ + b.values_, join(a.field_, b.field_));
  }
  friend SquareMatrix operator-(const SquareMatrix& a, const SquareMatrix& b) {
    return from_values(a.values_ - b.values_, join(a.field_, b.field_));
  }
  friend SquareMatrix operator*(double s, const SquareMatrix& a) {
    return from_values(s * a.values_, a.field_);
  }

 private:
  static void require_square(Eigen::Index rows, Eigen::Index cols);

  Field field_;
  ComplexMatrix values_;
};

/// Tolerance contract shared by the whole pipeline. All thresholds are
/// relative and must lie in (0, 1).
struct ToleranceConfig {
  double eps_class;     ///< eigenvalue classification threshold
  double eps_residual;  ///< acceptance threshold for invariant residuals
  double eps_rank;      ///< degeneracy threshold for Gram matrices

  static ToleranceConfig defaults_for(Eigen::Index n) {
    ToleranceConfig tol;
    tol.eps_class = 1e-10 * static_cast<double>(n > 0 ? n : 1);
    tol.eps_residual = 1e-9;
    tol.eps_rank = 1e-10;
    return tol;
  }

  void validate() const;
};

/// Relative Frobenius residual, guarded against a vanishing scale.
inline double rel_residual(const ComplexMatrix& diff, double scale) {
  return diff.norm() / std::max(scale, 1e-300);
}

// ---------------------------------------------------------------------------
// Error taxonomy. Every failure mode named by the module contracts is a
// distinct type so callers can branch without string matching.
// ---------------------------------------------------------------------------

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DimensionMismatch : Error {
  using Error::Error;
};

struct SingularInput : Error {
  using Error::Error;
};

struct ConvergenceFailure : Error {
  ConvergenceFailure(const std::string& what, int iters)
      : Error(what), iterations(iters) {}
  int iterations;
};

struct SpectraOverlap : Error {
  SpectraOverlap(const std::string& what, double sep)
      : Error(what), separation(sep) {}
  double separation;
};

struct NegativeRealEigenvalue : Error {
  NegativeRealEigenvalue(const std::string& what, std::vector<Complex> offs)
      : Error(what), offending(std::move(offs)) {}
  std::vector<Complex> offending;
};

struct RankDeficient : Error {
  using Error::Error;
};

struct NotHyperbolic : Error {
  using Error::Error;
};

/// Base for certification failures; carries the violated identity and its
/// measured residual.
struct CertificationError : Error {
  CertificationError(const std::string& what, std::string id, double res)
      : Error(what), identity(std::move(id)), residual(res) {}
  std::string identity;
  double residual;
};

struct NotInvolutory : CertificationError {
  using CertificationError::CertificationError;
};

struct NotHNormal : CertificationError {
  using CertificationError::CertificationError;
};

struct NotHNeutral : CertificationError {
  using CertificationError::CertificationError;
};

struct NotHSelfadjoint : CertificationError {
  using CertificationError::CertificationError;
};

struct NegSpaceNotHyperbolic : Error {
  using Error::Error;
};

struct DegenerateGram : Error {
  using Error::Error;
};

struct IndexTooLarge : Error {
  using Error::Error;
};

/// Raised when the sign classification and the square-root precondition
/// disagree; indicates an internal inconsistency, not a user error.
struct InternalClassificationConflict : Error {
  InternalClassificationConflict(const std::string& what,
                                 std::vector<Complex> offs)
      : Error(what), offending(std::move(offs)) {}
  std::vector<Complex> offending;
};

struct UnsupportedInstance : Error {
  using Error::Error;
};

struct ParseError : Error {
  using Error::Error;
};

}  // namespace hfactor

#endif  // HFACTOR_TYPES_HPP

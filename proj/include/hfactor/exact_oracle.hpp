#ifndef HFACTOR_EXACT_ORACLE_HPP
#define HFACTOR_EXACT_ORACLE_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <string>
#include <vector>

#include "hfactor/types.hpp"

namespace hfactor::exact {

using Rational = boost::multiprecision::cpp_rational;

/// Gaussian rational a + bi with exact arithmetic.
struct GaussRational {
  Rational re;
  Rational im;

  GaussRational() = default;
  GaussRational(long long r) : re(r) {}  // NOLINT(google-explicit-constructor)
  GaussRational(Rational r) : re(std::move(r)) {}  // NOLINT
  GaussRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

  bool is_zero() const { return re == 0 && im == 0; }
  GaussRational conj() const { return {re, -im}; }

  friend GaussRational operator+(const GaussRational& a,
                                 const GaussRational& b) {
    return {a.re + b.re, a.im + b.im};
  }
  friend GaussRational operator-(const GaussRational& a,
                                 const GaussRational& b) {
    return {a.re - b.re, a.im - b.im};
  }
  friend GaussRational operator-(const GaussRational& a) {
    return {-a.re, -a.im};
  }
  friend GaussRational operator*(const GaussRational& a,
                                 const GaussRational& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend GaussRational operator/(const GaussRational& a,
                                 const GaussRational& b) {
    const Rational d = b.re * b.re + b.im * b.im;
    if (d == 0) throw Error("exact division by zero");
    return {(a.re * b.re + a.im * b.im) / d,
            (a.im * b.re - a.re * b.im) / d};
  }
  friend bool operator==(const GaussRational& a, const GaussRational& b) {
    return a.re == b.re && a.im == b.im;
  }

  Complex to_complex() const {
    return {re.convert_to<double>(), im.convert_to<double>()};
  }
};

/// Dense matrix over the Gaussian rationals. Sized for the n <= 4 oracle
/// scope; no attempt at performance.
class ExactMatrix {
 public:
  ExactMatrix() : rows_(0), cols_(0) {}
  ExactMatrix(Eigen::Index rows, Eigen::Index cols)
      : rows_(rows), cols_(cols),
        a_(static_cast<std::size_t>(rows * cols)) {}

  static ExactMatrix identity(Eigen::Index n);
  /// Row-major integer entries.
  static ExactMatrix from_ints(Eigen::Index n,
                               const std::vector<long long>& entries);

  Eigen::Index rows() const { return rows_; }
  Eigen::Index cols() const { return cols_; }

  GaussRational& operator()(Eigen::Index r, Eigen::Index c) {
    return a_[static_cast<std::size_t>(r * cols_ + c)];
  }
  const GaussRational& operator()(Eigen::Index r, Eigen::Index c) const {
    return a_[static_cast<std::size_t>(r * cols_ + c)];
  }

  ExactMatrix adjoint() const;
  GaussRational trace() const;
  bool is_zero() const;
  bool is_selfadjoint() const;

  ExactMatrix inverse() const;  // throws SingularInput

  friend ExactMatrix operator*(const ExactMatrix& a, const ExactMatrix& b);
  friend ExactMatrix operator+(const ExactMatrix& a, const ExactMatrix& b);
  friend ExactMatrix operator-(const ExactMatrix& a, const ExactMatrix& b);

  SquareMatrix to_square_matrix() const;

 private:
  Eigen::Index rows_;
  Eigen::Index cols_;
  std::vector<GaussRational> a_;
};

/// Exact verification of the three defining identities of an H-normal
/// H-neutral involution. Residual matrices are exactly zero on success and
/// carry the counterexample entries otherwise.
struct ExactIdentityReport {
  bool involution_ok = false;
  bool h_normal_ok = false;
  bool h_neutral_ok = false;
  ExactMatrix involution_residual;  // X^2 - I
  ExactMatrix h_normal_residual;    // X^{[H]}X - X X^{[H]}
  ExactMatrix h_neutral_residual;   // X^{[H]}X - (X^{[H]} + X - I)

  bool all_ok() const { return involution_ok && h_normal_ok && h_neutral_ok; }
};

ExactIdentityReport exact_verify_identities(const ExactMatrix& x,
                                            const ExactMatrix& h);

/// Exact dimension and restricted-Gram signature of the negative eigenspace
/// of F^{[H]}F, via exact generalized eigenspaces. Requires the negative
/// real eigenvalues to be rational; throws UnsupportedInstance otherwise.
struct ExactNegReport {
  Eigen::Index dim = 0;
  int positive = 0;
  int negative = 0;
  int zero = 0;
  int signature = 0;
  bool nondegenerate = true;
  bool hyperbolic = true;
};

ExactNegReport exact_negative_eigenspace(const ExactMatrix& f,
                                         const ExactMatrix& h);

/// Inertia of an exact Hermitian matrix by congruence reduction.
void exact_inertia(ExactMatrix g, int& positive, int& negative, int& zero);

/// Best rational approximation with bounded denominator (continued
/// fractions); used to lift floating eigenvalue hints to exact candidates.
std::optional<Rational> rationalize(double x, long long max_den);

namespace detail {
using Poly = std::vector<GaussRational>;  // ascending coefficients
Poly char_poly(const ExactMatrix& a);
GaussRational eval(const Poly& p, const GaussRational& x);
/// Divides p by (lambda - r); returns the quotient if the remainder is zero.
std::optional<Poly> deflate(const Poly& p, const GaussRational& r);
/// Number of distinct real roots of a rational-coefficient polynomial in
/// the open interval (-inf, 0), by Sturm chains.
int count_negative_real_roots(const std::vector<Rational>& p);
/// Kernel basis of an exact matrix, as columns.
ExactMatrix kernel(const ExactMatrix& m);
}  // namespace detail

}  // namespace hfactor::exact

#endif  // HFACTOR_EXACT_ORACLE_HPP

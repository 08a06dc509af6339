#include "hfactor/factorizations.hpp"

#include <Eigen/LU>
#include <Eigen/SVD>

#include <cmath>

#include "hfactor/dense_kernel.hpp"
#include "hfactor/sign_function.hpp"

namespace hfactor {

namespace detail {

ComplexMatrix divide_right(const ComplexMatrix& a, const ComplexMatrix& b) {
  Eigen::PartialPivLU<ComplexMatrix> lu(b.transpose());
  return lu.solve(a.transpose()).transpose();
}

double min_spectrum_real_part(const SquareMatrix& a) {
  SchurForm sf = schur(a);
  double lo = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < a.dim(); ++i) {
    lo = std::min(lo, sf.t.values()(i, i).real());
  }
  return lo;
}

double condition_number(const ComplexMatrix& a) {
  Eigen::JacobiSVD<ComplexMatrix> svd(a);
  const auto& s = svd.singularValues();
  if (s.size() == 0 || s(s.size() - 1) == 0.0)
    return std::numeric_limits<double>::infinity();
  return s(0) / s(s.size() - 1);
}

}  // namespace detail

const char* to_string(FactorVariant v) {
  switch (v) {
    case FactorVariant::LXS:
      return "lxs";
    case FactorVariant::SLX:
      return "slx";
    case FactorVariant::SXL:
      return "sxl";
    case FactorVariant::XLS:
      return "xls";
  }
  return "lxs";
}

PolarFactors indefinite_polar(const SquareMatrix& f,
                              const InnerProductSpace& space,
                              const ToleranceConfig& tol) {
  const Eigen::Index n = f.dim();
  if (n != space.dim()) {
    throw DimensionMismatch("indefinite_polar: F and space dimensions differ");
  }
  const SquareMatrix fa = h_adjoint(f, space);
  const SquareMatrix gram_right = fa * f;  // F^{[H]} F, H-selfadjoint
  const SquareMatrix gram_left = f * fa;   // F F^{[H]}

  PolarFactors out;
  out.sigma = sign_matrix(gram_right, tol);
  out.sigma_prime = sign_matrix(gram_left, tol);

  try {
    out.s = principal_sqrt(out.sigma * gram_right, tol);
    out.s_prime = principal_sqrt(out.sigma_prime * gram_left, tol);
  } catch (const NegativeRealEigenvalue& e) {
    // Sign flipped the negative real spectrum, so the root's precondition
    // can only fail if the two classifications disagreed.
    throw InternalClassificationConflict(
        "indefinite_polar: sign and square-root classification disagree",
        e.offending);
  }

  const ComplexMatrix w = detail::divide_right(f.values(), out.s.values());
  out.w = SquareMatrix::from_values(w, join(f.field(), space.field()));

  const ComplexMatrix& h = space.h_values();
  const double fnorm = f.norm();
  out.residuals["right_reconstruction"] =
      rel_residual(out.w.values() * out.s.values() - f.values(), fnorm);
  out.residuals["left_reconstruction"] = rel_residual(
      out.s_prime.values() * out.w.values() - f.values(), fnorm);

  // The same W must close both decompositions: S'^{-1} F = F S^{-1}.
  const ComplexMatrix w_left =
      out.s_prime.values().partialPivLu().solve(f.values());
  out.residuals["w_consistency"] =
      rel_residual(w_left - out.w.values(), out.w.norm());

  auto selfadjoint_residual = [&](const SquareMatrix& s,
                                  const ComplexMatrix& metric) {
    const ComplexMatrix lhs = s.values().adjoint() * metric;
    const ComplexMatrix rhs = metric * s.values();
    return rel_residual(lhs - rhs, metric.norm() * std::max(1.0, s.norm()));
  };
  out.residuals["s_h_selfadjoint"] = selfadjoint_residual(out.s, h);
  out.residuals["s_h_sigma_selfadjoint"] =
      selfadjoint_residual(out.s, h * out.sigma.values());
  out.residuals["s_prime_h_selfadjoint"] = selfadjoint_residual(out.s_prime, h);
  out.residuals["s_prime_h_sigma_prime_selfadjoint"] =
      selfadjoint_residual(out.s_prime, h * out.sigma_prime.values());

  // W is (H, H Sigma)-unitary and (H Sigma', H)-unitary.
  out.residuals["w_right_unitary"] =
      rel_residual(out.w.values().adjoint() * h * out.w.values() -
                       h * out.sigma.values(),
                   h.norm() * std::max(1.0, out.w.norm()));
  out.residuals["w_left_unitary"] =
      rel_residual(out.w.values().adjoint() * h * out.sigma_prime.values() *
                           out.w.values() -
                       h,
                   h.norm() * std::max(1.0, out.w.norm()));

  // r-positive-definiteness is strict; report margin as a residual-style
  // entry (0 when comfortably positive).
  const double margin_s = detail::min_spectrum_real_part(out.s);
  const double margin_sp = detail::min_spectrum_real_part(out.s_prime);
  const double eps_margin = tol.eps_class * std::max(out.s.norm(), 1.0);
  out.residuals["s_r_positive_margin"] =
      margin_s > eps_margin ? 0.0 : std::abs(std::min(margin_s, 0.0)) + 1.0;
  out.residuals["s_prime_r_positive_margin"] =
      margin_sp > eps_margin ? 0.0 : std::abs(std::min(margin_sp, 0.0)) + 1.0;

  return out;
}

namespace {

std::pair<SquareMatrix, NeutralInvolution> split_right_impl(
    const SquareMatrix& w, const SquareMatrix& phi,
    const InnerProductSpace& space, const ToleranceConfig& tol,
    std::uint64_t seed) {
  NeutralInvolution x = solve_involution(phi, space, tol, seed);
  // X^{-1} = X, so L = W X.
  SquareMatrix l = w * x.x;
  return {std::move(l), std::move(x)};
}

std::pair<NeutralInvolution, SquareMatrix> split_left_impl(
    const SquareMatrix& w, const SquareMatrix& phi,
    const InnerProductSpace& space, const ToleranceConfig& tol,
    std::uint64_t seed) {
  // The constructed X satisfies both X^{[H]}X = Phi and X X^{[H]} = Phi.
  NeutralInvolution x = solve_involution(phi, space, tol, seed);
  SquareMatrix l = x.x * w;
  return {std::move(x), std::move(l)};
}

}  // namespace

std::pair<SquareMatrix, NeutralInvolution> split_w_right(
    const SquareMatrix& w, const InnerProductSpace& space,
    const ToleranceConfig& tol, std::uint64_t seed) {
  const SquareMatrix phi = h_adjoint(w, space) * w;
  return split_right_impl(w, phi, space, tol, seed);
}

std::pair<NeutralInvolution, SquareMatrix> split_w_left(
    const SquareMatrix& w, const InnerProductSpace& space,
    const ToleranceConfig& tol, std::uint64_t seed) {
  const SquareMatrix phi = w * h_adjoint(w, space);
  return split_left_impl(w, phi, space, tol, seed);
}

NormalFactorization factor_normal(const SquareMatrix& f,
                                  const InnerProductSpace& space,
                                  const ToleranceConfig& tol,
                                  FactorVariant variant, std::uint64_t seed) {
  const Eigen::Index n = f.dim();
  PolarFactors polar = indefinite_polar(f, space, tol);

  NormalFactorization out;
  out.variant = variant;

  const bool right_split =
      variant == FactorVariant::LXS || variant == FactorVariant::SLX;
  const SquareMatrix& sigma = right_split ? polar.sigma : polar.sigma_prime;

  SquareMatrix l;
  const ComplexMatrix id = ComplexMatrix::Identity(n, n);
  if ((sigma.values() - id).isZero(0.0)) {
    // No negative real spectrum: the generalized polar case, X = I exactly.
    out.involution =
        certify(SquareMatrix::identity(n, join(f.field(), space.field())),
                space, tol);
    l = polar.w;
  } else if (right_split) {
    auto [lr, xr] = split_w_right(polar.w, space, tol, seed);
    l = std::move(lr);
    out.involution = std::move(xr);
  } else {
    auto [xl, ll] = split_w_left(polar.w, space, tol, seed);
    l = std::move(ll);
    out.involution = std::move(xl);
  }
  out.neutral_index = out.involution.neutral_index;

  switch (variant) {
    case FactorVariant::LXS:
      out.factors = {l, out.involution.x, polar.s};
      break;
    case FactorVariant::SLX:
      out.factors = {polar.s_prime, l, out.involution.x};
      break;
    case FactorVariant::SXL:
      out.factors = {polar.s_prime, out.involution.x, l};
      break;
    case FactorVariant::XLS:
      out.factors = {out.involution.x, l, polar.s};
      break;
  }

  const ComplexMatrix product =
      out.factors[0].values() * out.factors[1].values() *
      out.factors[2].values();
  out.certificates["reconstruction"] = rel_residual(product - f.values(),
                                                    f.norm());

  const ComplexMatrix w_product =
      right_split ? l.values() * out.involution.x.values()
                  : out.involution.x.values() * l.values();
  out.certificates["w_product"] =
      rel_residual(w_product - polar.w.values(), polar.w.norm());

  out.certificates["l_h_unitary"] = is_h_unitary(l, space, tol).residual;
  for (const auto& [name, r] : out.involution.residuals) {
    out.certificates["x_" + name] = r;
  }
  const bool uses_right_s =
      variant == FactorVariant::LXS || variant == FactorVariant::XLS;
  out.certificates["s_h_selfadjoint"] =
      is_h_selfadjoint(uses_right_s ? polar.s : polar.s_prime, space, tol)
          .residual;
  for (const auto& [name, r] : polar.residuals) {
    out.certificates["polar_" + name] = r;
  }
  return out;
}

}  // namespace hfactor

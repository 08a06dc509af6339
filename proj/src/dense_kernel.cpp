#include "hfactor/dense_kernel.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace hfactor {
namespace detail {

namespace {

// Proximity radius for merging a rounding-split defective eigenvalue back
// into one cluster. eps^(1/4) dominates the eps^(1/s) splitting of Jordan
// blocks up to s = 3 with room to spare.
double merge_radius(double scale, const ToleranceConfig& tol) {
  const double eps = std::numeric_limits<double>::epsilon();
  return std::max(tol.eps_class, std::pow(eps, 0.25)) * scale;
}

struct UnionFind {
  explicit UnionFind(std::size_t n) : parent(n) {
    std::iota(parent.begin(), parent.end(), std::size_t{0});
  }
  std::size_t find(std::size_t i) {
    while (parent[i] != i) {
      parent[i] = parent[parent[i]];
      i = parent[i];
    }
    return i;
  }
  void merge(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
  std::vector<std::size_t> parent;
};

}  // namespace

std::vector<bool> classify_negative_real(const std::vector<Complex>& eigs,
                                         double scale,
                                         const ToleranceConfig& tol) {
  const std::size_t n = eigs.size();
  const double radius = merge_radius(scale, tol);
  UnionFind uf(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (std::abs(eigs[i] - eigs[j]) <= radius) uf.merge(i, j);
    }
  }

  std::vector<Complex> sum(n, Complex(0, 0));
  std::vector<int> count(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t r = uf.find(i);
    sum[r] += eigs[i];
    count[r] += 1;
  }

  const double thr = tol.eps_class * scale;
  std::vector<bool> flags(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t r = uf.find(i);
    const Complex mean = sum[r] / static_cast<double>(count[r]);
    flags[i] = mean.real() < -thr && std::abs(mean.imag()) <= thr;
  }
  return flags;
}

Eigen::Index reorder_schur(ComplexMatrix& q, ComplexMatrix& t,
                           std::vector<bool> flags) {
  const Eigen::Index n = t.rows();
  Eigen::Index dst = 0;
  for (; dst < n; ++dst) {
    Eigen::Index src = -1;
    for (Eigen::Index i = dst; i < n; ++i) {
      if (flags[static_cast<std::size_t>(i)]) {
        src = i;
        break;
      }
    }
    if (src < 0) break;
    for (Eigen::Index k = src; k > dst; --k) {
      const Complex t11 = t(k - 1, k - 1);
      const Complex t12 = t(k - 1, k);
      const Complex t22 = t(k, k);
      const Complex x1 = t12;
      const Complex x2 = t22 - t11;
      const double r = std::hypot(std::abs(x1), std::abs(x2));
      if (r > 0.0) {
        Eigen::Matrix2cd g;
        g << x1 / r, -std::conj(x2) / r, x2 / r, std::conj(x1) / r;
        t.middleRows(k - 1, 2) = (g.adjoint() * t.middleRows(k - 1, 2)).eval();
        t.middleCols(k - 1, 2) = (t.middleCols(k - 1, 2) * g).eval();
        q.middleCols(k - 1, 2) = (q.middleCols(k - 1, 2) * g).eval();
        t(k, k - 1) = Complex(0, 0);
      }
      // r == 0 means the two eigenvalues coincide; the transposition is
      // then purely a bookkeeping swap.
      std::swap(flags[static_cast<std::size_t>(k - 1)],
                flags[static_cast<std::size_t>(k)]);
    }
  }
  return dst;
}

ComplexMatrix sylvester_triangular(const ComplexMatrix& t1,
                                   const ComplexMatrix& t2,
                                   const ComplexMatrix& c) {
  const Eigen::Index k = t1.rows();
  const Eigen::Index l = t2.rows();
  ComplexMatrix y(k, l);
  for (Eigen::Index j = 0; j < l; ++j) {
    Eigen::VectorXcd rhs = c.col(j);
    for (Eigen::Index i = 0; i < j; ++i) rhs += y.col(i) * t2(i, j);
    ComplexMatrix shifted = t1;
    shifted.diagonal().array() -= t2(j, j);
    y.col(j) = shifted.triangularView<Eigen::Upper>().solve(rhs);
  }
  return y;
}

void guard_nonsingular(const std::vector<Complex>& eigs, double scale,
                       const ToleranceConfig& tol) {
  const double thr = tol.eps_class * scale;
  for (const Complex& lam : eigs) {
    if (std::abs(lam) <= thr || scale == 0.0) {
      throw SingularInput("matrix is singular to working classification "
                          "tolerance (|lambda| <= eps_class * norm)");
    }
  }
}

OrderedSchur ordered_schur_neg(const SquareMatrix& a,
                               const ToleranceConfig& tol) {
  SchurForm sf = schur(a);
  OrderedSchur out;
  out.q = sf.q.values();
  out.t = sf.t.values();

  const Eigen::Index n = a.dim();
  std::vector<Complex> eigs(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i)
    eigs[static_cast<std::size_t>(i)] = out.t(i, i);

  const double scale = a.norm();
  guard_nonsingular(eigs, scale, tol);
  std::vector<bool> flags = classify_negative_real(eigs, scale, tol);

  // Keep eigenvalue bookkeeping aligned with the swaps: stable partition,
  // flagged first, exactly as reorder_schur produces.
  out.eigenvalues.reserve(eigs.size());
  for (std::size_t i = 0; i < eigs.size(); ++i)
    if (flags[i]) out.eigenvalues.push_back(eigs[i]);
  for (std::size_t i = 0; i < eigs.size(); ++i)
    if (!flags[i]) out.eigenvalues.push_back(eigs[i]);

  out.neg_count = reorder_schur(out.q, out.t, flags);
  return out;
}

ComplexMatrix orthonormal_span(const ComplexMatrix& cols, Eigen::Index rank) {
  if (rank == 0) return ComplexMatrix(cols.rows(), 0);
  Eigen::ColPivHouseholderQR<ComplexMatrix> qr(cols);
  ComplexMatrix thin =
      qr.householderQ() * ComplexMatrix::Identity(cols.rows(), rank);
  return thin;
}

RealMatrix real_span(const ComplexMatrix& cols, Eigen::Index rank) {
  if (rank == 0) return RealMatrix(cols.rows(), 0);
  RealMatrix stacked(cols.rows(), 2 * cols.cols());
  stacked << cols.real(), cols.imag();
  Eigen::ColPivHouseholderQR<RealMatrix> qr(stacked);
  RealMatrix thin =
      qr.householderQ() * RealMatrix::Identity(cols.rows(), rank);
  return thin;
}

}  // namespace detail

SchurForm schur(const SquareMatrix& a) {
  Eigen::ComplexSchur<ComplexMatrix> cs(a.values(), /*computeU=*/true);
  if (cs.info() != Eigen::Success) {
    throw ConvergenceFailure("Schur iteration failed to converge",
                             cs.getMaxIterations() * static_cast<int>(a.dim()));
  }
  SchurForm out;
  out.q = SquareMatrix::complex(cs.matrixU());
  out.t = SquareMatrix::complex(cs.matrixT());
  return out;
}

SpectrumSplit split_spectrum(const SquareMatrix& a, const ToleranceConfig& tol) {
  const Eigen::Index n = a.dim();
  detail::OrderedSchur os = detail::ordered_schur_neg(a, tol);
  const Eigen::Index k = os.neg_count;

  SpectrumSplit out;
  out.neg_real.assign(os.eigenvalues.begin(),
                      os.eigenvalues.begin() + static_cast<std::ptrdiff_t>(k));
  out.rest.assign(os.eigenvalues.begin() + static_cast<std::ptrdiff_t>(k),
                  os.eigenvalues.end());

  if (k == 0) {
    out.basis_neg = ComplexMatrix(n, 0);
    out.basis_rest = ComplexMatrix::Identity(n, n);
    return out;
  }
  if (k == n) {
    out.basis_neg = ComplexMatrix::Identity(n, n);
    out.basis_rest = ComplexMatrix(n, 0);
    return out;
  }

  const ComplexMatrix t11 = os.t.topLeftCorner(k, k);
  const ComplexMatrix t22 = os.t.bottomRightCorner(n - k, n - k);
  const ComplexMatrix t12 = os.t.topRightCorner(k, n - k);
  const ComplexMatrix y = detail::sylvester_triangular(t11, t22, t12);

  // Leading Schur columns span the neg-real invariant subspace; the
  // complementary invariant subspace is Q [-Y; I].
  ComplexMatrix span_rest(n, n - k);
  {
    ComplexMatrix block(n, n - k);
    block.topRows(k) = -y;
    block.bottomRows(n - k) = ComplexMatrix::Identity(n - k, n - k);
    span_rest = os.q * block;
  }

  if (a.is_real()) {
    // The cluster is classified jointly with its conjugates, so both
    // subspaces are conjugation-closed and admit real orthonormal bases.
    out.basis_neg = detail::real_span(os.q.leftCols(k), k).cast<Complex>();
    out.basis_rest = detail::real_span(span_rest, n - k).cast<Complex>();
  } else {
    out.basis_neg = os.q.leftCols(k);
    out.basis_rest = detail::orthonormal_span(span_rest, n - k);
  }
  return out;
}

SquareMatrix spectral_projector_neg(const SquareMatrix& a,
                                    const ToleranceConfig& tol) {
  const Eigen::Index n = a.dim();
  detail::OrderedSchur os = detail::ordered_schur_neg(a, tol);
  const Eigen::Index k = os.neg_count;
  if (k == 0) return SquareMatrix::zero(n, a.field());
  if (k == n) return SquareMatrix::identity(n, a.field());

  const ComplexMatrix t11 = os.t.topLeftCorner(k, k);
  const ComplexMatrix t22 = os.t.bottomRightCorner(n - k, n - k);
  const ComplexMatrix t12 = os.t.topRightCorner(k, n - k);
  const ComplexMatrix y = detail::sylvester_triangular(t11, t22, t12);

  ComplexMatrix pt = ComplexMatrix::Zero(n, n);
  pt.topLeftCorner(k, k) = ComplexMatrix::Identity(k, k);
  pt.topRightCorner(k, n - k) = y;
  ComplexMatrix p = os.q * pt * os.q.adjoint();
  return SquareMatrix::from_values(p, a.field());
}

SquareMatrix principal_sqrt(const SquareMatrix& a, const ToleranceConfig& tol) {
  const Eigen::Index n = a.dim();
  SchurForm sf = schur(a);
  const ComplexMatrix& t = sf.t.values();

  std::vector<Complex> eigs(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i)
    eigs[static_cast<std::size_t>(i)] = t(i, i);
  const double scale = a.norm();
  detail::guard_nonsingular(eigs, scale, tol);

  std::vector<bool> flags = detail::classify_negative_real(eigs, scale, tol);
  std::vector<Complex> offending;
  for (std::size_t i = 0; i < eigs.size(); ++i)
    if (flags[i]) offending.push_back(eigs[i]);
  if (!offending.empty()) {
    throw NegativeRealEigenvalue(
        "principal square root undefined: negative real eigenvalues present",
        offending);
  }

  // Diagonal first, then superdiagonals: the standard triangular recurrence.
  ComplexMatrix s = ComplexMatrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) s(i, i) = std::sqrt(t(i, i));
  for (Eigen::Index d = 1; d < n; ++d) {
    for (Eigen::Index i = 0; i + d < n; ++i) {
      const Eigen::Index j = i + d;
      Complex acc = t(i, j);
      for (Eigen::Index k = i + 1; k < j; ++k) acc -= s(i, k) * s(k, j);
      s(i, j) = acc / (s(i, i) + s(j, j));
    }
  }

  ComplexMatrix root = sf.q.values() * s * sf.q.values().adjoint();
  return SquareMatrix::from_values(root, a.field());
}

ComplexMatrix sylvester_solve(const SquareMatrix& a, const SquareMatrix& b,
                              const ComplexMatrix& c,
                              const ToleranceConfig& tol) {
  if (c.rows() != a.dim() || c.cols() != b.dim()) {
    throw DimensionMismatch("sylvester_solve: C must be dim(A) x dim(B)");
  }
  SchurForm sa = schur(a);
  SchurForm sb = schur(b);

  double sep = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < a.dim(); ++i) {
    for (Eigen::Index j = 0; j < b.dim(); ++j) {
      sep = std::min(sep,
                     std::abs(sa.t.values()(i, i) - sb.t.values()(j, j)));
    }
  }
  const double scale = std::max(a.norm(), b.norm());
  if (!(sep > tol.eps_class * scale)) {
    throw SpectraOverlap("sylvester_solve: spectra of A and B overlap within "
                         "the classification tolerance",
                         sep);
  }

  const ComplexMatrix ct =
      sa.q.values().adjoint() * c * sb.q.values();
  const ComplexMatrix yt =
      detail::sylvester_triangular(sa.t.values(), sb.t.values(), ct);
  ComplexMatrix y = sa.q.values() * yt * sb.q.values().adjoint();

  if (a.is_real() && b.is_real() && c.imag().isZero(0.0)) {
    y = y.real().cast<Complex>();
  }
  return y;
}

}  // namespace hfactor

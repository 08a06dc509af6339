#include "hfactor/neutral_involutions.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <Eigen/QR>
#include <Eigen/SVD>

#include <cmath>
#include <vector>

#include "hfactor/dense_kernel.hpp"

namespace hfactor {

RealMatrix exchange_matrix(Eigen::Index m) {
  RealMatrix z = RealMatrix::Zero(m, m);
  for (Eigen::Index i = 0; i < m; ++i) z(i, m - 1 - i) = 1.0;
  return z;
}

RealMatrix canonical_first(CanonicalLayout layout, Eigen::Index n, int /*p*/,
                           int /*q*/, int m) {
  RealMatrix out = RealMatrix::Zero(n, n);
  switch (layout) {
    case CanonicalLayout::JK:
      // J = diag(-I_m, I_m, I_{p-m}, I_{q-m})
      out.setIdentity();
      out.topLeftCorner(m, m) = -RealMatrix::Identity(m, m);
      break;
    case CanonicalLayout::PM:
      // P = [[0, Z_m], [Z_m, 0]] + I_{n-2m}
      out.block(0, m, m, m) = exchange_matrix(m);
      out.block(m, 0, m, m) = exchange_matrix(m);
      out.bottomRightCorner(n - 2 * m, n - 2 * m).setIdentity();
      break;
    case CanonicalLayout::JKPlanes:
      for (int i = 0; i < m; ++i) {
        out(2 * i, 2 * i) = -1.0;
        out(2 * i + 1, 2 * i + 1) = 1.0;
      }
      out.bottomRightCorner(n - 2 * m, n - 2 * m).setIdentity();
      break;
    case CanonicalLayout::PMPlanes:
      for (int i = 0; i < m; ++i) {
        out(2 * i, 2 * i + 1) = 1.0;
        out(2 * i + 1, 2 * i) = 1.0;
      }
      out.bottomRightCorner(n - 2 * m, n - 2 * m).setIdentity();
      break;
  }
  return out;
}

RealMatrix canonical_second(CanonicalLayout layout, Eigen::Index n, int p,
                            int q, int m) {
  RealMatrix eta = RealMatrix::Zero(n - 2 * m, n - 2 * m);
  eta.topLeftCorner(p - m, p - m).setIdentity();
  eta.bottomRightCorner(q - m, q - m) = -RealMatrix::Identity(q - m, q - m);

  RealMatrix out = RealMatrix::Zero(n, n);
  switch (layout) {
    case CanonicalLayout::JK:
      out.block(0, m, m, m) = exchange_matrix(m);
      out.block(m, 0, m, m) = exchange_matrix(m);
      break;
    case CanonicalLayout::PM:
      out.topLeftCorner(m, m) = -RealMatrix::Identity(m, m);
      out.block(m, m, m, m).setIdentity();
      break;
    case CanonicalLayout::JKPlanes:
      for (int i = 0; i < m; ++i) {
        out(2 * i, 2 * i + 1) = 1.0;
        out(2 * i + 1, 2 * i) = 1.0;
      }
      break;
    case CanonicalLayout::PMPlanes:
      for (int i = 0; i < m; ++i) {
        out(2 * i, 2 * i) = -1.0;
        out(2 * i + 1, 2 * i + 1) = 1.0;
      }
      break;
  }
  out.bottomRightCorner(n - 2 * m, n - 2 * m) = eta;
  return out;
}

namespace detail {

ComplexMatrix projector_range(const ComplexMatrix& projector, Eigen::Index rank,
                              bool realify, const ToleranceConfig& tol) {
  const Eigen::Index n = projector.rows();
  if (rank == 0) return ComplexMatrix(n, 0);
  if (realify) {
    Eigen::ColPivHouseholderQR<RealMatrix> qr(projector.real().eval());
    if (rank > 1 &&
        std::abs(qr.matrixR()(rank - 1, rank - 1)) <=
            tol.eps_rank * std::abs(qr.matrixR()(0, 0))) {
      throw DegenerateGram("projector range collapsed below expected rank");
    }
    RealMatrix thin = qr.householderQ() * RealMatrix::Identity(n, rank);
    return thin.cast<Complex>();
  }
  Eigen::ColPivHouseholderQR<ComplexMatrix> qr(projector);
  if (rank > 1 &&
      std::abs(qr.matrixR()(rank - 1, rank - 1)) <=
          tol.eps_rank * std::abs(qr.matrixR()(0, 0))) {
    throw DegenerateGram("projector range collapsed below expected rank");
  }
  return qr.householderQ() * ComplexMatrix::Identity(n, rank);
}

}  // namespace detail

namespace {

bool space_real(const SquareMatrix& x, const InnerProductSpace& space) {
  return x.is_real() && space.field() == Field::Real;
}

double kappa_2(const ComplexMatrix& a) {
  Eigen::JacobiSVD<ComplexMatrix> svd(a);
  const auto& s = svd.singularValues();
  if (s.size() == 0 || s(s.size() - 1) == 0.0) return 0.0;
  return s(0) / (s(s.size() - 1));
}

}  // namespace

NeutralInvolution certify(const SquareMatrix& x, const InnerProductSpace& space,
                          const ToleranceConfig& tol) {
  const Eigen::Index n = x.dim();
  if (n != space.dim()) {
    throw DimensionMismatch("certify: matrix and space dimensions differ");
  }
  const ComplexMatrix id = ComplexMatrix::Identity(n, n);
  const ComplexMatrix& xv = x.values();
  const ComplexMatrix xa = space.adjoint_of(xv);
  const double scale = x.norm();

  NeutralInvolution out;
  out.x = x;

  const double r_inv = rel_residual(xv * xv - id, scale);
  out.residuals["involution"] = r_inv;
  if (r_inv > tol.eps_residual) {
    throw NotInvolutory("certify: X^2 = I violated", "involution", r_inv);
  }

  const double r_normal = rel_residual(xa * xv - xv * xa, scale);
  out.residuals["h_normal"] = r_normal;
  if (r_normal > tol.eps_residual) {
    throw NotHNormal("certify: X X^{[H]} = X^{[H]} X violated", "h_normal",
                     r_normal);
  }

  const double r_neutral = rel_residual(xa * xv - (xa + xv - id), scale);
  out.residuals["h_neutral"] = r_neutral;
  if (r_neutral > tol.eps_residual) {
    throw NotHNeutral("certify: X^{[H]}X = X^{[H]} + X - I violated",
                      "h_neutral", r_neutral);
  }

  // Neutral index from the trace of the involution: tr X = n - 2m.
  const Complex tr = x.trace();
  const double m_raw = (static_cast<double>(n) - tr.real()) / 2.0;
  const int m = static_cast<int>(std::lround(m_raw));
  const double drift =
      std::abs(m_raw - static_cast<double>(m)) + std::abs(tr.imag()) / 2.0;
  if (drift >= 0.1) {
    throw NotInvolutory("certify: trace of X is not a near-integer",
                        "trace", drift);
  }
  if (m < 0 || m > std::min(space.positive_count(), space.negative_count())) {
    throw NotHNeutral("certify: neutral index out of range for the inertia",
                      "neutral_index", static_cast<double>(m));
  }
  out.neutral_index = m;

  const Complex tr_phi = (xa * xv).trace();
  const double trace_gap =
      std::abs(tr_phi - Complex(static_cast<double>(n - 4 * m), 0.0)) /
      static_cast<double>(n);
  out.residuals["trace_identity"] = trace_gap;
  if (trace_gap > tol.eps_residual) {
    throw NotHNeutral("certify: tr(X^{[H]}X) = n - 4m violated",
                      "trace_identity", trace_gap);
  }
  return out;
}

CanonicalPair canonical_pair(const NeutralInvolution& inv,
                             const InnerProductSpace& space,
                             const ToleranceConfig& tol,
                             CanonicalLayout layout) {
  const Eigen::Index n = inv.x.dim();
  const int p = space.positive_count();
  const int q = space.negative_count();
  const int m = inv.neutral_index;
  const bool realify = space_real(inv.x, space);

  const ComplexMatrix& xv = inv.x.values();
  const ComplexMatrix xa = space.adjoint_of(xv);
  const ComplexMatrix id = ComplexMatrix::Identity(n, n);
  const ComplexMatrix phi = xa * xv;

  // Bases of neg(X), neg(X^{[H]}) and pos(Phi) from the eigenprojectors.
  const ComplexMatrix v =
      detail::projector_range(0.5 * (id - xv), m, realify, tol);
  const ComplexMatrix u =
      detail::projector_range(0.5 * (id - xa), m, realify, tol);
  const ComplexMatrix w =
      detail::projector_range(0.5 * (id + phi), n - 2 * m, realify, tol);

  const ComplexMatrix& h = space.h_values();
  const ComplexMatrix b = v.adjoint() * h * u;
  if (m > 0) {
    Eigen::FullPivLU<ComplexMatrix> lu(b);
    lu.setThreshold(tol.eps_rank);
    if (lu.rank() < m) {
      throw DegenerateGram("canonical_pair: coupling block B is singular");
    }
  }

  ComplexMatrix d_inv(n - 2 * m, n - 2 * m);
  if (n - 2 * m > 0) {
    ComplexMatrix c = w.adjoint() * h * w;
    c = 0.5 * (c + c.adjoint());
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(c);
    const Eigen::VectorXd ev = es.eigenvalues();
    const double cscale = ev.cwiseAbs().maxCoeff();
    std::vector<Eigen::Index> pos, neg;
    for (Eigen::Index i = ev.size() - 1; i >= 0; --i) {
      if (ev(i) > tol.eps_rank * cscale) pos.push_back(i);
    }
    for (Eigen::Index i = 0; i < ev.size(); ++i) {
      if (ev(i) < -tol.eps_rank * cscale) neg.push_back(i);
    }
    if (static_cast<int>(pos.size()) != p - m ||
        static_cast<int>(neg.size()) != q - m) {
      throw DegenerateGram(
          "canonical_pair: Gram block C has unexpected inertia");
    }

    // C = D† eta D with positives ordered first; assemble D^{-1} directly.
    for (std::size_t i = 0; i < pos.size(); ++i) {
      d_inv.col(static_cast<Eigen::Index>(i)) =
          es.eigenvectors().col(pos[i]) / std::sqrt(ev(pos[i]));
    }
    for (std::size_t i = 0; i < neg.size(); ++i) {
      d_inv.col(static_cast<Eigen::Index>(pos.size() + i)) =
          es.eigenvectors().col(neg[i]) / std::sqrt(-ev(neg[i]));
    }
  }

  // Q = E1 E2 E3 from the constructive proof, assembled block-wise:
  // columns [V, U B^{-1} Z_m, W D^{-1}].
  ComplexMatrix qmat(n, n);
  qmat.leftCols(m) = v;
  if (m > 0) {
    const ComplexMatrix z = exchange_matrix(m).cast<Complex>();
    qmat.middleCols(m, m) = u * b.partialPivLu().solve(z);
  }
  qmat.rightCols(n - 2 * m) = w * d_inv;

  // Layout post-transformations.
  if (layout == CanonicalLayout::PM || layout == CanonicalLayout::PMPlanes) {
    ComplexMatrix e = ComplexMatrix::Identity(n, n);
    const double s = 1.0 / std::sqrt(2.0);
    const ComplexMatrix z = exchange_matrix(m).cast<Complex>();
    e.topLeftCorner(m, m) = -s * ComplexMatrix::Identity(m, m);
    e.block(0, m, m, m) = s * z;
    e.block(m, 0, m, m) = s * z;
    e.block(m, m, m, m) = s * ComplexMatrix::Identity(m, m);
    qmat = qmat * e;
  }
  if (layout == CanonicalLayout::JKPlanes ||
      layout == CanonicalLayout::PMPlanes) {
    // Interleave each neutral column with its Z-coupled partner.
    ComplexMatrix interleaved = qmat;
    for (int i = 0; i < m; ++i) {
      interleaved.col(2 * i) = qmat.col(i);
      interleaved.col(2 * i + 1) = qmat.col(2 * m - 1 - i);
    }
    qmat = interleaved;
  }

  CanonicalPair out;
  out.layout = layout;
  const Field f = realify ? Field::Real : Field::Complex;
  out.transform = SquareMatrix::from_values(qmat, f);
  out.first = SquareMatrix::real(canonical_first(layout, n, p, q, m));
  out.second = SquareMatrix::real(canonical_second(layout, n, p, q, m));
  out.kappa_q = kappa_2(qmat);

  Eigen::PartialPivLU<ComplexMatrix> qlu(qmat);
  const ComplexMatrix sim = qlu.solve(xv * qmat);
  const ComplexMatrix cong = qmat.adjoint() * h * qmat;
  out.residuals["canonical_similarity"] =
      rel_residual(sim - out.first.values(), out.first.norm());
  out.residuals["canonical_congruence"] =
      rel_residual(cong - out.second.values(), out.second.norm());
  for (const auto& [name, r] : out.residuals) {
    if (r > tol.eps_residual) {
      throw DegenerateGram("canonical_pair: identity '" + name +
                           "' exceeded the residual tolerance");
    }
  }
  return out;
}

std::optional<SquareMatrix> similarity(const NeutralInvolution& x1,
                                       const NeutralInvolution& x2,
                                       const InnerProductSpace& space,
                                       const ToleranceConfig& tol) {
  if (x1.neutral_index != x2.neutral_index) return std::nullopt;
  const CanonicalPair c1 = canonical_pair(x1, space, tol, CanonicalLayout::JK);
  const CanonicalPair c2 = canonical_pair(x2, space, tol, CanonicalLayout::JK);
  // Both transforms reach the same (J, K); L = Q2 Q1^{-1} is H-unitary and
  // carries X2 back to X1.
  Eigen::PartialPivLU<ComplexMatrix> lu(c1.transform.values().transpose());
  const ComplexMatrix l =
      lu.solve(c2.transform.values().transpose()).transpose();
  return SquareMatrix::from_values(
      l, join(c1.transform.field(), c2.transform.field()));
}

NeutralInvolution adjoint_involution(const NeutralInvolution& inv,
                                     const InnerProductSpace& space,
                                     const ToleranceConfig& tol) {
  NeutralInvolution out = certify(h_adjoint(inv.x, space), space, tol);
  if (out.neutral_index != inv.neutral_index) {
    throw Error("adjoint_involution: neutral index changed under the "
                "H-adjoint; numerical breakdown");
  }
  return out;
}

}  // namespace hfactor

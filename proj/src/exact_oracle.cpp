#include "hfactor/exact_oracle.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <map>

namespace hfactor::exact {

ExactMatrix ExactMatrix::identity(Eigen::Index n) {
  ExactMatrix m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) m(i, i) = GaussRational(1);
  return m;
}

ExactMatrix ExactMatrix::from_ints(Eigen::Index n,
                                   const std::vector<long long>& entries) {
  if (entries.size() != static_cast<std::size_t>(n * n)) {
    throw DimensionMismatch("from_ints: wrong entry count");
  }
  ExactMatrix m(n, n);
  for (Eigen::Index r = 0; r < n; ++r)
    for (Eigen::Index c = 0; c < n; ++c)
      m(r, c) = GaussRational(entries[static_cast<std::size_t>(r * n + c)]);
  return m;
}

ExactMatrix ExactMatrix::adjoint() const {
  ExactMatrix m(cols_, rows_);
  for (Eigen::Index r = 0; r < rows_; ++r)
    for (Eigen::Index c = 0; c < cols_; ++c) m(c, r) = (*this)(r, c).conj();
  return m;
}

GaussRational ExactMatrix::trace() const {
  GaussRational t;
  for (Eigen::Index i = 0; i < std::min(rows_, cols_); ++i) t = t + (*this)(i, i);
  return t;
}

bool ExactMatrix::is_zero() const {
  for (const auto& v : a_)
    if (!v.is_zero()) return false;
  return true;
}

bool ExactMatrix::is_selfadjoint() const {
  if (rows_ != cols_) return false;
  for (Eigen::Index r = 0; r < rows_; ++r)
    for (Eigen::Index c = 0; c < cols_; ++c)
      if (!((*this)(r, c) - (*this)(c, r).conj()).is_zero()) return false;
  return true;
}

ExactMatrix operator*(const ExactMatrix& a, const ExactMatrix& b) {
  if (a.cols_ != b.rows_) throw DimensionMismatch("exact product shapes");
  ExactMatrix m(a.rows_, b.cols_);
  for (Eigen::Index r = 0; r < a.rows_; ++r)
    for (Eigen::Index c = 0; c < b.cols_; ++c) {
      GaussRational acc;
      for (Eigen::Index k = 0; k < a.cols_; ++k)
        acc = acc + a(r, k) * b(k, c);
      m(r, c) = acc;
    }
  return m;
}

ExactMatrix operator+(const ExactMatrix& a, const ExactMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
    throw DimensionMismatch("exact sum shapes");
  ExactMatrix m(a.rows_, a.cols_);
  for (Eigen::Index r = 0; r < a.rows_; ++r)
    for (Eigen::Index c = 0; c < a.cols_; ++c) m(r, c) = a(r, c) + b(r, c);
  return m;
}

ExactMatrix operator-(const ExactMatrix& a, const ExactMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
    throw DimensionMismatch("exact difference shapes");
  ExactMatrix m(a.rows_, a.cols_);
  for (Eigen::Index r = 0; r < a.rows_; ++r)
    for (Eigen::Index c = 0; c < a.cols_; ++c) m(r, c) = a(r, c) - b(r, c);
  return m;
}

ExactMatrix ExactMatrix::inverse() const {
  if (rows_ != cols_) throw DimensionMismatch("exact inverse of non-square");
  const Eigen::Index n = rows_;
  ExactMatrix work = *this;
  ExactMatrix inv = identity(n);
  for (Eigen::Index col = 0; col < n; ++col) {
    Eigen::Index pivot = -1;
    for (Eigen::Index r = col; r < n; ++r) {
      if (!work(r, col).is_zero()) {
        pivot = r;
        break;
      }
    }
    if (pivot < 0) throw SingularInput("exact matrix is singular");
    if (pivot != col) {
      for (Eigen::Index c = 0; c < n; ++c) {
        std::swap(work(pivot, c), work(col, c));
        std::swap(inv(pivot, c), inv(col, c));
      }
    }
    const GaussRational d = work(col, col);
    for (Eigen::Index c = 0; c < n; ++c) {
      work(col, c) = work(col, c) / d;
      inv(col, c) = inv(col, c) / d;
    }
    for (Eigen::Index r = 0; r < n; ++r) {
      if (r == col || work(r, col).is_zero()) continue;
      const GaussRational factor = work(r, col);
      for (Eigen::Index c = 0; c < n; ++c) {
        work(r, c) = work(r, c) - factor * work(col, c);
        inv(r, c) = inv(r, c) - factor * inv(col, c);
      }
    }
  }
  return inv;
}

SquareMatrix ExactMatrix::to_square_matrix() const {
  if (rows_ != cols_) throw DimensionMismatch("to_square_matrix: not square");
  ComplexMatrix m(rows_, cols_);
  bool real = true;
  for (Eigen::Index r = 0; r < rows_; ++r)
    for (Eigen::Index c = 0; c < cols_; ++c) {
      m(r, c) = (*this)(r, c).to_complex();
      real = real && (*this)(r, c).im == 0;
    }
  return SquareMatrix::from_values(m, real ? Field::Real : Field::Complex);
}

ExactIdentityReport exact_verify_identities(const ExactMatrix& x,
                                            const ExactMatrix& h) {
  if (x.rows() != x.cols() || h.rows() != h.cols() || x.rows() != h.rows()) {
    throw DimensionMismatch("exact_verify_identities: shape mismatch");
  }
  if (!h.is_selfadjoint()) {
    throw UnsupportedInstance("exact_verify_identities: H not selfadjoint");
  }
  const Eigen::Index n = x.rows();
  const ExactMatrix id = ExactMatrix::identity(n);
  const ExactMatrix xa = h.inverse() * x.adjoint() * h;

  ExactIdentityReport rep;
  rep.involution_residual = x * x - id;
  rep.involution_ok = rep.involution_residual.is_zero();
  rep.h_normal_residual = xa * x - x * xa;
  rep.h_normal_ok = rep.h_normal_residual.is_zero();
  rep.h_neutral_residual = xa * x - (xa + x - id);
  rep.h_neutral_ok = rep.h_neutral_residual.is_zero();
  return rep;
}

std::optional<Rational> rationalize(double x, long long max_den) {
  if (!std::isfinite(x)) return std::nullopt;
  // Continued fraction expansion of |x|.
  const bool negative = x < 0;
  double v = std::abs(x);
  long long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  for (int iter = 0; iter < 64; ++iter) {
    const double fl = std::floor(v);
    if (fl > 9e17) return std::nullopt;
    const long long a = static_cast<long long>(fl);
    const long long p2 = a * p1 + p0;
    const long long q2 = a * q1 + q0;
    if (q2 > max_den) break;
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
    const double frac = v - fl;
    if (frac < 1e-12) break;
    v = 1.0 / frac;
  }
  if (q1 == 0) return std::nullopt;
  Rational r(p1, q1);
  if (negative) r = -r;
  return r;
}

namespace detail {

Poly char_poly(const ExactMatrix& a) {
  // Faddeev-LeVerrier: exact over the rationals.
  const Eigen::Index n = a.rows();
  Poly coeff(static_cast<std::size_t>(n) + 1);
  coeff[static_cast<std::size_t>(n)] = GaussRational(1);
  ExactMatrix m = ExactMatrix::identity(n);
  for (Eigen::Index k = 1; k <= n; ++k) {
    const ExactMatrix am = a * m;
    GaussRational c = am.trace();
    c = GaussRational(0) - c / GaussRational(Rational(k));
    coeff[static_cast<std::size_t>(n - k)] = c;
    m = am;
    for (Eigen::Index i = 0; i < n; ++i) m(i, i) = m(i, i) + c;
  }
  return coeff;
}

GaussRational eval(const Poly& p, const GaussRational& x) {
  GaussRational acc;
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
  return acc;
}

std::optional<Poly> deflate(const Poly& p, const GaussRational& r) {
  if (p.size() < 2) return std::nullopt;
  Poly q(p.size() - 1);
  GaussRational carry = p.back();
  for (std::size_t i = p.size() - 1; i-- > 0;) {
    q[i] = carry;
    carry = p[i] + carry * r;
  }
  if (!carry.is_zero()) return std::nullopt;
  return q;
}

namespace {

using RPoly = std::vector<Rational>;  // ascending, real coefficients

void trim(RPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

RPoly derivative(const RPoly& p) {
  RPoly d;
  for (std::size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * Rational(i));
  trim(d);
  return d;
}

// Remainder of the polynomial division a / b; the leading term cancels
// exactly in rational arithmetic.
RPoly rem(RPoly a, const RPoly& b) {
  trim(a);
  if (b.empty()) throw Error("polynomial division by zero");
  while (a.size() >= b.size() && !a.empty()) {
    const Rational f = a.back() / b.back();
    const std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i + 1 < b.size(); ++i) a[shift + i] -= f * b[i];
    a.pop_back();
    trim(a);
  }
  return a;
}

RPoly poly_gcd(RPoly a, RPoly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    RPoly r = rem(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    const Rational lead = a.back();
    for (auto& c : a) c /= lead;
  }
  return a;
}

int sign_of(const Rational& r) {
  if (r > 0) return 1;
  if (r < 0) return -1;
  return 0;
}

// Sign of p at 0 and the sign of the leading behaviour at -infinity.
int sign_at_zero(const RPoly& p) {
  for (const Rational& c : p)
    if (c != 0) return sign_of(c);
  return 0;
}

int sign_at_minus_inf(const RPoly& p) {
  if (p.empty()) return 0;
  const int lead = sign_of(p.back());
  return (p.size() - 1) % 2 == 0 ? lead : -lead;
}

int sign_changes(const std::vector<int>& signs) {
  int changes = 0;
  int prev = 0;
  for (int s : signs) {
    if (s == 0) continue;
    if (prev != 0 && s != prev) ++changes;
    prev = s;
  }
  return changes;
}

}  // namespace

int count_negative_real_roots(const std::vector<Rational>& p_in) {
  RPoly p = p_in;
  trim(p);
  if (p.size() <= 1) return 0;
  // Square-free part, then the Sturm chain.
  const RPoly g = poly_gcd(p, derivative(p));
  if (g.size() > 1) {
    // divide p by g exactly (long division; remainder must vanish)
    RPoly quotient;
    RPoly a = p;
    trim(a);
    quotient.assign(a.size() - g.size() + 1, Rational(0));
    while (a.size() >= g.size() && !a.empty()) {
      const Rational f = a.back() / g.back();
      const std::size_t shift = a.size() - g.size();
      quotient[shift] = f;
      for (std::size_t i = 0; i < g.size(); ++i) a[shift + i] -= f * g[i];
      trim(a);
    }
    p = quotient;
    trim(p);
    if (p.size() <= 1) return 0;
  }

  std::vector<RPoly> chain;
  chain.push_back(p);
  chain.push_back(derivative(p));
  while (!chain.back().empty() && chain.back().size() > 1) {
    RPoly r = rem(chain[chain.size() - 2], chain.back());
    for (auto& c : r) c = -c;
    trim(r);
    if (r.empty()) break;
    chain.push_back(std::move(r));
  }

  std::vector<int> at_minus_inf, at_zero;
  for (const RPoly& q : chain) {
    at_minus_inf.push_back(sign_at_minus_inf(q));
    at_zero.push_back(sign_at_zero(q));
  }
  return sign_changes(at_minus_inf) - sign_changes(at_zero);
}

ExactMatrix kernel(const ExactMatrix& m_in) {
  const Eigen::Index rows = m_in.rows();
  const Eigen::Index cols = m_in.cols();
  ExactMatrix m = m_in;

  std::vector<Eigen::Index> pivot_col;
  Eigen::Index lead = 0;
  for (Eigen::Index r = 0; r < rows && lead < cols; ++r) {
    Eigen::Index pr = -1;
    while (lead < cols) {
      for (Eigen::Index i = r; i < rows; ++i) {
        if (!m(i, lead).is_zero()) {
          pr = i;
          break;
        }
      }
      if (pr >= 0) break;
      ++lead;
    }
    if (lead >= cols) break;
    if (pr != r) {
      for (Eigen::Index c = 0; c < cols; ++c) std::swap(m(pr, c), m(r, c));
    }
    const GaussRational d = m(r, lead);
    for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = m(r, c) / d;
    for (Eigen::Index i = 0; i < rows; ++i) {
      if (i == r || m(i, lead).is_zero()) continue;
      const GaussRational f = m(i, lead);
      for (Eigen::Index c = 0; c < cols; ++c)
        m(i, c) = m(i, c) - f * m(r, c);
    }
    pivot_col.push_back(lead);
    ++lead;
  }

  std::vector<Eigen::Index> free_cols;
  for (Eigen::Index c = 0; c < cols; ++c) {
    if (std::find(pivot_col.begin(), pivot_col.end(), c) == pivot_col.end()) {
      free_cols.push_back(c);
    }
  }

  ExactMatrix basis(cols, static_cast<Eigen::Index>(free_cols.size()));
  for (std::size_t k = 0; k < free_cols.size(); ++k) {
    const Eigen::Index fc = free_cols[k];
    basis(fc, static_cast<Eigen::Index>(k)) = GaussRational(1);
    for (std::size_t pr = 0; pr < pivot_col.size(); ++pr) {
      basis(pivot_col[pr], static_cast<Eigen::Index>(k)) =
          GaussRational(0) - m(static_cast<Eigen::Index>(pr), fc);
    }
  }
  return basis;
}

}  // namespace detail

void exact_inertia(ExactMatrix g, int& positive, int& negative, int& zero) {
  positive = negative = zero = 0;
  const Eigen::Index n = g.rows();
  std::vector<bool> done(static_cast<std::size_t>(n), false);

  for (;;) {
    // Nonzero diagonal pivot first.
    Eigen::Index piv = -1;
    for (Eigen::Index i = 0; i < n; ++i) {
      if (!done[static_cast<std::size_t>(i)] && !g(i, i).is_zero()) {
        piv = i;
        break;
      }
    }
    if (piv < 0) {
      // All remaining diagonal entries vanish; a nonzero off-diagonal pair
      // creates a positive pivot by the congruence row_i += a row_j.
      Eigen::Index oi = -1, oj = -1;
      for (Eigen::Index i = 0; i < n && oi < 0; ++i) {
        if (done[static_cast<std::size_t>(i)]) continue;
        for (Eigen::Index j = i + 1; j < n; ++j) {
          if (done[static_cast<std::size_t>(j)]) continue;
          if (!g(i, j).is_zero()) {
            oi = i;
            oj = j;
            break;
          }
        }
      }
      if (oi < 0) {
        for (Eigen::Index i = 0; i < n; ++i)
          if (!done[static_cast<std::size_t>(i)]) ++zero;
        break;
      }
      const GaussRational alpha = g(oi, oj);
      for (Eigen::Index c = 0; c < n; ++c)
        g(oi, c) = g(oi, c) + alpha * g(oj, c);
      for (Eigen::Index r = 0; r < n; ++r)
        g(r, oi) = g(r, oi) + alpha.conj() * g(r, oj);
      continue;
    }

    const GaussRational d = g(piv, piv);
    // Diagonal of a Hermitian matrix is real.
    if (d.im != 0) throw Error("exact_inertia: non-Hermitian input");
    if (d.re > 0) {
      ++positive;
    } else {
      ++negative;
    }
    done[static_cast<std::size_t>(piv)] = true;
    for (Eigen::Index r = 0; r < n; ++r) {
      if (done[static_cast<std::size_t>(r)] || g(r, piv).is_zero()) continue;
      const GaussRational f = g(r, piv) / d;
      for (Eigen::Index c = 0; c < n; ++c)
        g(r, c) = g(r, c) - f * g(piv, c);
      for (Eigen::Index c = 0; c < n; ++c)
        g(c, r) = g(r, c).conj();
    }
  }
}

ExactNegReport exact_negative_eigenspace(const ExactMatrix& f,
                                         const ExactMatrix& h) {
  const Eigen::Index n = f.rows();
  if (n > 4) {
    throw UnsupportedInstance(
        "exact_negative_eigenspace: oracle scope is n <= 4");
  }
  if (!h.is_selfadjoint()) {
    throw UnsupportedInstance("exact_negative_eigenspace: H not selfadjoint");
  }
  const ExactMatrix a = h.inverse() * f.adjoint() * h * f;
  detail::Poly chi = detail::char_poly(a);

  // Floating eigenvalues provide candidate rational roots; each candidate
  // is verified exactly before use, so the hints never weaken soundness.
  Eigen::ComplexEigenSolver<ComplexMatrix> es(a.to_square_matrix().values());
  std::vector<Rational> candidates;
  auto push_candidate = [&](const Rational& r) {
    if (r >= 0) return;
    if (std::find(candidates.begin(), candidates.end(), r) ==
        candidates.end()) {
      candidates.push_back(r);
    }
  };
  for (Eigen::Index i = 0; i < n; ++i) {
    const Complex lam = es.eigenvalues()(i);
    if (lam.real() >= 0) continue;
    if (auto r = rationalize(lam.real(), 1000000)) push_candidate(*r);
    push_candidate(Rational(static_cast<long long>(std::llround(lam.real()))));
    if (auto r = rationalize(lam.real(), 64)) push_candidate(*r);
  }

  std::map<Rational, int> neg_roots;  // value -> multiplicity
  detail::Poly rest = chi;
  for (const Rational& cand : candidates) {
    const GaussRational r{cand};
    for (;;) {
      auto deflated = detail::deflate(rest, r);
      if (!deflated) break;
      rest = *deflated;
      neg_roots[cand] += 1;
    }
  }

  // The remainder polynomial must have no further negative real roots;
  // otherwise a negative eigenvalue is irrational and out of oracle scope.
  {
    std::vector<Rational> re(rest.size()), im(rest.size());
    bool has_im = false;
    for (std::size_t i = 0; i < rest.size(); ++i) {
      re[i] = rest[i].re;
      im[i] = rest[i].im;
      has_im = has_im || rest[i].im != 0;
    }
    std::vector<Rational> probe = re;
    if (has_im) {
      // Real roots of a complex polynomial are the common real roots of the
      // real and imaginary coefficient parts.
      auto gcd_poly = [](std::vector<Rational> x, std::vector<Rational> y) {
        auto trim = [](std::vector<Rational>& v) {
          while (!v.empty() && v.back() == 0) v.pop_back();
        };
        trim(x);
        trim(y);
        while (!y.empty()) {
          // remainder x mod y
          while (x.size() >= y.size() && !x.empty()) {
            const Rational f = x.back() / y.back();
            const std::size_t shift = x.size() - y.size();
            for (std::size_t i = 0; i < y.size(); ++i) x[shift + i] -= f * y[i];
            trim(x);
          }
          std::swap(x, y);
        }
        return x;
      };
      probe = gcd_poly(re, im);
    }
    if (detail::count_negative_real_roots(probe) > 0) {
      throw UnsupportedInstance(
          "exact_negative_eigenspace: a negative real eigenvalue is "
          "irrational");
    }
  }

  ExactNegReport rep;
  for (const auto& [val, mult] : neg_roots)
    rep.dim += static_cast<Eigen::Index>(mult);

  if (rep.dim == 0) return rep;

  // Generalized eigenspace bases, one block per negative rational root.
  ExactMatrix basis(n, rep.dim);
  Eigen::Index col = 0;
  for (const auto& [val, mult] : neg_roots) {
    ExactMatrix shifted = a;
    for (Eigen::Index i = 0; i < n; ++i)
      shifted(i, i) = shifted(i, i) - GaussRational(val);
    ExactMatrix power = ExactMatrix::identity(n);
    for (int k = 0; k < mult; ++k) power = power * shifted;
    const ExactMatrix ker = detail::kernel(power);
    if (ker.cols() != mult) {
      throw UnsupportedInstance(
          "exact_negative_eigenspace: kernel dimension does not match "
          "multiplicity");
    }
    for (Eigen::Index c = 0; c < ker.cols(); ++c, ++col) {
      for (Eigen::Index r = 0; r < n; ++r) basis(r, col) = ker(r, c);
    }
  }

  const ExactMatrix gram = basis.adjoint() * h * basis;
  exact_inertia(gram, rep.positive, rep.negative, rep.zero);
  rep.signature = rep.positive - rep.negative;
  rep.nondegenerate = rep.zero == 0;
  rep.hyperbolic = rep.nondegenerate && rep.positive == rep.negative;
  return rep;
}

}  // namespace hfactor::exact

#include <doctest.h>

#include <Eigen/QR>

#include "hfactor/generators.hpp"
#include "hfactor/neutral_involutions.hpp"
#include "hfactor/rng.hpp"
#include "test_support.hpp"

using namespace hfactor;
using namespace hfactor::testing;

namespace {

InnerProductSpace minkowski2() {
  return InnerProductSpace(diag_real({1, -1}),
                           ToleranceConfig::defaults_for(2));
}

double subspace_angle(const ComplexMatrix& a, const ComplexMatrix& b) {
  // Largest residual of projecting columns of a onto span(b); both inputs
  // orthonormal.
  if (a.cols() == 0) return 0.0;
  const ComplexMatrix residual = a - b * (b.adjoint() * a);
  return residual.norm();
}

ComplexMatrix orthonormal_range(const ComplexMatrix& m, Eigen::Index rank) {
  Eigen::ColPivHouseholderQR<ComplexMatrix> qr(m);
  return qr.householderQ() * ComplexMatrix::Identity(m.rows(), rank);
}

}  // namespace

TEST_CASE("certify: identity has neutral index zero") {
  const InnerProductSpace space = minkowski2();
  const NeutralInvolution inv =
      certify(SquareMatrix::identity(2), space,
              ToleranceConfig::defaults_for(2));
  CHECK(inv.neutral_index == 0);
  CHECK(inv.residuals.at("involution") == 0.0);
}

TEST_CASE("certify: worked 2x2 example with trace identity") {
  const InnerProductSpace space = minkowski2();
  const SquareMatrix x = mat2(0, 1, 1, 0);
  const NeutralInvolution inv =
      certify(x, space, ToleranceConfig::defaults_for(2));
  CHECK(inv.neutral_index == 1);
  // tr(X^{[H]}X) = tr(-I) = -2 = 2 - 4*1, by direct computation.
  const ComplexMatrix xa = h_adjoint(x, space).values();
  CHECK(std::abs((xa * x.values()).trace() - Complex(-2, 0)) < 1e-14);
}

TEST_CASE("certify: diag(1,-1) is involutory but not H-neutral") {
  const InnerProductSpace space = minkowski2();
  CHECK_THROWS_AS(certify(diag_real({1, -1}), space,
                          ToleranceConfig::defaults_for(2)),
                  NotHNeutral);
}

TEST_CASE("certify: non-involution rejected") {
  const InnerProductSpace space = minkowski2();
  CHECK_THROWS_AS(certify(mat2(1, 1, 0, 1), space,
                          ToleranceConfig::defaults_for(2)),
                  NotInvolutory);
}

TEST_CASE("canonical matrices match the block shapes at m=1, p=q=1") {
  CHECK(rel_diff(canonical_first(CanonicalLayout::JK, 2, 1, 1, 1)
                     .cast<Complex>(),
                 diag_real({-1, 1}).values()) == 0.0);
  CHECK(rel_diff(canonical_second(CanonicalLayout::JK, 2, 1, 1, 1)
                     .cast<Complex>(),
                 mat2(0, 1, 1, 0).values()) == 0.0);
  CHECK(rel_diff(canonical_first(CanonicalLayout::PM, 2, 1, 1, 1)
                     .cast<Complex>(),
                 mat2(0, 1, 1, 0).values()) == 0.0);
  CHECK(rel_diff(canonical_second(CanonicalLayout::PM, 2, 1, 1, 1)
                     .cast<Complex>(),
                 diag_real({-1, 1}).values()) == 0.0);
}

TEST_CASE("canonical_pair: m=0 reduces to an eigenbasis of H") {
  const InnerProductSpace space = minkowski2();
  const ToleranceConfig tol = ToleranceConfig::defaults_for(2);
  const NeutralInvolution inv = certify(SquareMatrix::identity(2), space, tol);
  const CanonicalPair cp = canonical_pair(inv, space, tol);
  CHECK(rel_diff(cp.first.values(), ComplexMatrix::Identity(2, 2)) == 0.0);
  CHECK(rel_diff(cp.second.values(), diag_real({1, -1}).values()) == 0.0);
  CHECK(cp.residuals.at("canonical_similarity") < 1e-12);
  CHECK(cp.residuals.at("canonical_congruence") < 1e-12);
}

TEST_CASE("canonical_pair: worked 2x2 example in JK and PM layouts") {
  const InnerProductSpace space = minkowski2();
  const ToleranceConfig tol = ToleranceConfig::defaults_for(2);
  const NeutralInvolution inv = certify(mat2(0, 1, 1, 0), space, tol);

  const CanonicalPair jk = canonical_pair(inv, space, tol);
  CHECK(rel_diff(jk.first.values(), diag_real({-1, 1}).values()) == 0.0);
  CHECK(rel_diff(jk.second.values(), mat2(0, 1, 1, 0).values()) == 0.0);
  CHECK(jk.residuals.at("canonical_similarity") < 1e-12);
  CHECK(jk.residuals.at("canonical_congruence") < 1e-12);

  const CanonicalPair pm = canonical_pair(inv, space, tol,
                                          CanonicalLayout::PM);
  CHECK(rel_diff(pm.first.values(), mat2(0, 1, 1, 0).values()) == 0.0);
  CHECK(rel_diff(pm.second.values(), diag_real({-1, 1}).values()) == 0.0);
  CHECK(pm.residuals.at("canonical_similarity") < 1e-12);
  CHECK(pm.residuals.at("canonical_congruence") < 1e-12);
}

TEST_CASE("canonical_pair: all four layouts round-trip on generated "
          "instances") {
  for (std::uint64_t seed : {1u, 2u, 3u, 4u, 5u}) {
    const Eigen::Index n = 4 + (seed % 4);
    const int p = static_cast<int>(n / 2) + 1;
    const int q = static_cast<int>(n) - p;
    const int m = static_cast<int>(seed % (std::min(p, q) + 1));
    const Field field = seed % 2 == 0 ? Field::Real : Field::Complex;
    const ToleranceConfig tol = ToleranceConfig::defaults_for(n);

    const GeneratedInvolution gen =
        gen_neutral_involution(n, p, m, 100 + seed, field);
    for (CanonicalLayout layout :
         {CanonicalLayout::JK, CanonicalLayout::PM, CanonicalLayout::JKPlanes,
          CanonicalLayout::PMPlanes}) {
      const CanonicalPair cp =
          canonical_pair(gen.involution, gen.space, tol, layout);
      // Reconstruct X = Q J Q^{-1} and H = Q^{-dagger} K Q^{-1}.
      const ComplexMatrix& qm = cp.transform.values();
      const ComplexMatrix x_back =
          qm * cp.first.values() * qm.partialPivLu().inverse();
      CHECK(rel_diff(x_back, gen.involution.x.values()) < tol.eps_residual);
      const ComplexMatrix qinv = qm.partialPivLu().inverse();
      const ComplexMatrix h_back =
          qinv.adjoint() * cp.second.values() * qinv;
      CHECK(rel_diff(h_back, gen.space.h_values()) < tol.eps_residual);
    }
  }
}

TEST_CASE("similarity: equal indices connect, unequal do not") {
  const InnerProductSpace space = minkowski2();
  const ToleranceConfig tol = ToleranceConfig::defaults_for(2);
  const NeutralInvolution x1 = certify(mat2(0, 1, 1, 0), space, tol);
  const NeutralInvolution x2 = certify(mat2(0, -1, -1, 0), space, tol);
  CHECK(x2.neutral_index == 1);

  const auto l = similarity(x1, x2, space, tol);
  REQUIRE(l.has_value());
  CHECK(is_h_unitary(*l, space, tol).residual < 1e-10);
  const ComplexMatrix back = l->values().partialPivLu().solve(
      x2.x.values() * l->values());
  CHECK(rel_diff(back, x1.x.values()) < 1e-10);

  const NeutralInvolution id = certify(SquareMatrix::identity(2), space, tol);
  CHECK_FALSE(similarity(x1, id, space, tol).has_value());
}

TEST_CASE("similarity: trivial self-similarity satisfies the contract") {
  const InnerProductSpace space = minkowski2();
  const ToleranceConfig tol = ToleranceConfig::defaults_for(2);
  const NeutralInvolution x = certify(mat2(0, 1, 1, 0), space, tol);
  const auto l = similarity(x, x, space, tol);
  REQUIRE(l.has_value());
  CHECK(is_h_unitary(*l, space, tol).ok);
  const ComplexMatrix back =
      l->values().partialPivLu().solve(x.x.values() * l->values());
  CHECK(rel_diff(back, x.x.values()) < 1e-10);
}

TEST_CASE("adjoint_involution: worked example and random instances") {
  const InnerProductSpace space = minkowski2();
  const ToleranceConfig tol = ToleranceConfig::defaults_for(2);
  const NeutralInvolution x = certify(mat2(0, 1, 1, 0), space, tol);
  const NeutralInvolution xa = adjoint_involution(x, space, tol);
  CHECK(rel_diff(xa.x.values(), mat2(0, -1, -1, 0).values()) < 1e-14);
  CHECK(xa.neutral_index == 1);

  for (std::uint64_t seed : {11u, 12u, 13u}) {
    const GeneratedInvolution gen =
        gen_neutral_involution(6, 4, 2, seed, Field::Real);
    const NeutralInvolution adj =
        adjoint_involution(gen.involution, gen.space,
                           ToleranceConfig::defaults_for(6));
    CHECK(adj.neutral_index == 2);
  }
}

TEST_CASE("eigenspace lattice: pos(Phi) = pos(X) cap pos(X^{[H]}), "
          "neg(Phi) = neg(X) + neg(X^{[H]})") {
  const ToleranceConfig tol = ToleranceConfig::defaults_for(6);
  for (std::uint64_t seed : {21u, 22u}) {
    const GeneratedInvolution gen =
        gen_neutral_involution(6, 3, 1, seed, Field::Real);
    const int m = gen.involution.neutral_index;
    const Eigen::Index n = 6;
    const ComplexMatrix& xv = gen.involution.x.values();
    const ComplexMatrix xa = gen.space.adjoint_of(xv);
    const ComplexMatrix id = ComplexMatrix::Identity(n, n);
    const ComplexMatrix phi = xa * xv;

    const ComplexMatrix neg_x =
        detail::projector_range(0.5 * (id - xv), m, false, tol);
    const ComplexMatrix neg_xa =
        detail::projector_range(0.5 * (id - xa), m, false, tol);
    const ComplexMatrix pos_phi =
        detail::projector_range(0.5 * (id + phi), n - 2 * m, false, tol);
    const ComplexMatrix neg_phi =
        detail::projector_range(0.5 * (id - phi), 2 * m, false, tol);

    // Dimension checks (n - 2m, 2m).
    CHECK(pos_phi.cols() == n - 2 * m);
    CHECK(neg_phi.cols() == 2 * m);

    // neg(X) and neg(X^{[H]}) both sit inside neg(Phi).
    CHECK(subspace_angle(neg_x, neg_phi) < tol.eps_residual);
    CHECK(subspace_angle(neg_xa, neg_phi) < tol.eps_residual);

    // The stacked basis has full rank 2m: direct sum.
    ComplexMatrix stacked(n, 2 * m);
    stacked << neg_x, neg_xa;
    Eigen::ColPivHouseholderQR<ComplexMatrix> qr(stacked);
    qr.setThreshold(1e-8);
    CHECK(qr.rank() == 2 * m);

    // And together they span neg(Phi).
    const ComplexMatrix stacked_basis = orthonormal_range(stacked, 2 * m);
    CHECK(subspace_angle(neg_phi, stacked_basis) < 1e-7);

    // pos(Phi) is pos(X) cap pos(X^{[H]}): it lies in both.
    const ComplexMatrix pos_x =
        detail::projector_range(0.5 * (id + xv), n - m, false, tol);
    const ComplexMatrix pos_xa =
        detail::projector_range(0.5 * (id + xa), n - m, false, tol);
    CHECK(subspace_angle(pos_phi, pos_x) < tol.eps_residual);
    CHECK(subspace_angle(pos_phi, pos_xa) < tol.eps_residual);

    // Orthogonality: neg(X) perp pos(Phi) in the H inner product.
    const ComplexMatrix cross =
        neg_x.adjoint() * gen.space.h_values() * pos_phi;
    CHECK(cross.norm() <= tol.eps_residual * gen.space.h_norm() * 10);
  }
}

TEST_CASE("trace identity holds on generated involutions") {
  for (std::uint64_t seed : {31u, 32u, 33u, 34u}) {
    const Eigen::Index n = 5 + (seed % 3);
    const int p = static_cast<int>((n + 1) / 2);
    const int q = static_cast<int>(n) - p;
    const int m = static_cast<int>(seed % (std::min(p, q) + 1));
    const GeneratedInvolution gen = gen_neutral_involution(
        n, p, m, seed, seed % 2 ? Field::Complex : Field::Real);
    const ComplexMatrix xa = gen.space.adjoint_of(gen.involution.x.values());
    const Complex tr = (xa * gen.involution.x.values()).trace();
    CHECK(std::abs(tr - Complex(static_cast<double>(n - 4 * m), 0)) <
          1e-9 * static_cast<double>(n));
  }
}

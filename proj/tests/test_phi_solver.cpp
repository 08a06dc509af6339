#include <doctest.h>

#include "hfactor/generators.hpp"
#include "hfactor/phi_solver.hpp"
#include "test_support.hpp"

using namespace hfactor;
using namespace hfactor::testing;

namespace {

InnerProductSpace minkowski2() {
  return InnerProductSpace(diag_real({1, -1}),
                           ToleranceConfig::defaults_for(2));
}

// Random Phi with hyperbolic negative eigenspace of dimension 2m, via an
// independently generated involution: Phi = X^{[H]} X.
SquareMatrix random_phi(const InnerProductSpace& space, int m,
                        std::uint64_t seed, const ToleranceConfig& tol) {
  const NeutralInvolution x = gen_neutral_involution_over(space, m, seed, tol);
  return h_adjoint(x.x, space) * x.x;
}

}  // namespace

TEST_CASE("solve_involution: Phi = I gives X = I") {
  const InnerProductSpace space = minkowski2();
  const ToleranceConfig tol = ToleranceConfig::defaults_for(2);
  const NeutralInvolution x =
      solve_involution(SquareMatrix::identity(2), space, tol);
  CHECK(x.neutral_index == 0);
  CHECK(rel_diff(x.x.values(), ComplexMatrix::Identity(2, 2)) < 1e-12);
}

TEST_CASE("solve_involution: Phi = -I on the Minkowski plane") {
  const InnerProductSpace space = minkowski2();
  const ToleranceConfig tol = ToleranceConfig::defaults_for(2);
  const SquareMatrix phi = SquareMatrix::real(-RealMatrix::Identity(2, 2));
  const NeutralInvolution x = solve_involution(phi, space, tol);
  CHECK(x.neutral_index == 1);
  const ComplexMatrix xa = h_adjoint(x.x, space).values();
  CHECK(rel_diff(xa * x.x.values(), phi.values()) < tol.eps_residual);
}

TEST_CASE("solve_involution: 4x4 with m = 2, trace pinned to n - 2m") {
  const ToleranceConfig tol = ToleranceConfig::defaults_for(4);
  const InnerProductSpace space(diag_real({1, 1, -1, -1}), tol);
  const SquareMatrix phi = SquareMatrix::real(-RealMatrix::Identity(4, 4));
  const NeutralInvolution x = solve_involution(phi, space, tol);
  CHECK(x.neutral_index == 2);
  CHECK(std::abs(x.x.trace() - Complex(0, 0)) < 1e-10);
  const ComplexMatrix xa = h_adjoint(x.x, space).values();
  CHECK(rel_diff(xa * x.x.values(), phi.values()) < tol.eps_residual);
}

TEST_CASE("solve_involution: rejections") {
  const InnerProductSpace space = minkowski2();
  const ToleranceConfig tol = ToleranceConfig::defaults_for(2);
  CHECK_THROWS_AS(solve_involution(mat2(1, 1, 0, 1), space, tol),
                  NotInvolutory);
  // diag(1,-1) is involutory and H-selfadjoint, but its negative eigenspace
  // has signature -1, not zero.
  CHECK_THROWS_AS(solve_involution(diag_real({1, -1}), space, tol),
                  NegSpaceNotHyperbolic);
}

TEST_CASE("solve_involution: certified on random Phi, X^{[H]} also solves") {
  for (std::uint64_t seed : {1u, 2u, 3u, 4u}) {
    const Eigen::Index n = 5 + (seed % 3);
    const int p = static_cast<int>((n + 1) / 2);
    const int m =
        static_cast<int>(seed % (std::min<Eigen::Index>(p, n - p) + 1));
    const Field field = seed % 2 ? Field::Complex : Field::Real;
    const ToleranceConfig tol = ToleranceConfig::defaults_for(n);
    const InnerProductSpace space = gen_space(n, p, seed, field);
    const SquareMatrix phi = random_phi(space, m, seed + 30, tol);

    const NeutralInvolution x = solve_involution(phi, space, tol);
    CHECK(x.neutral_index == m);
    CHECK(x.residuals.at("phi_equation") < tol.eps_residual);

    const NeutralInvolution xadj = adjoint_involution(x, space, tol);
    const ComplexMatrix lhs =
        h_adjoint(xadj.x, space).values() * xadj.x.values();
    CHECK(rel_diff(lhs, phi.values()) < tol.eps_residual);
  }
}

TEST_CASE("solve_involution: determinism and seeded orbit members") {
  const ToleranceConfig tol = ToleranceConfig::defaults_for(6);
  const InnerProductSpace space = gen_space(6, 3, 11);
  const SquareMatrix phi = random_phi(space, 2, 12, tol);

  const NeutralInvolution a = solve_involution(phi, space, tol);
  const NeutralInvolution b = solve_involution(phi, space, tol);
  CHECK((a.x.values() - b.x.values()).norm() == 0.0);

  const NeutralInvolution c = solve_involution(phi, space, tol, 99);
  CHECK((a.x.values() - c.x.values()).norm() > 1e-8);
  // Still a solution of the same equation.
  const ComplexMatrix lhs = h_adjoint(c.x, space).values() * c.x.values();
  CHECK(rel_diff(lhs, phi.values()) < tol.eps_residual);
}

TEST_CASE("all_solutions_related: connector is H-unitary, commutes with "
          "Phi, and maps X2 to X1") {
  const ToleranceConfig tol = ToleranceConfig::defaults_for(6);
  for (std::uint64_t seed : {5u, 6u}) {
    const Field field = seed % 2 ? Field::Complex : Field::Real;
    const InnerProductSpace space = gen_space(6, 4, seed, field);
    const SquareMatrix phi = random_phi(space, 2, seed + 40, tol);

    const NeutralInvolution x1 = solve_involution(phi, space, tol, 1);
    const NeutralInvolution x2 = solve_involution(phi, space, tol, 2);

    const SquareMatrix l = all_solutions_related(x1, x2, phi, space, tol);
    CHECK(is_h_unitary(l, space, tol).residual < 1e-9);
    CHECK(rel_diff(l.values() * phi.values(), phi.values() * l.values()) <
          tol.eps_residual);
    const ComplexMatrix back =
        l.values().partialPivLu().solve(x2.x.values() * l.values());
    CHECK(rel_diff(back, x1.x.values()) < 1e-9);
  }
}

TEST_CASE("all_solutions_related: adjoint pair on the worked example") {
  const InnerProductSpace space = minkowski2();
  const ToleranceConfig tol = ToleranceConfig::defaults_for(2);
  const SquareMatrix phi = SquareMatrix::real(-RealMatrix::Identity(2, 2));
  const NeutralInvolution x1 = certify(mat2(0, 1, 1, 0), space, tol);
  const NeutralInvolution x2 = certify(mat2(0, -1, -1, 0), space, tol);

  const SquareMatrix l = all_solutions_related(x1, x2, phi, space, tol);
  CHECK(is_h_unitary(l, space, tol).residual < 1e-10);
  const ComplexMatrix back =
      l.values().partialPivLu().solve(x2.x.values() * l.values());
  CHECK(rel_diff(back, x1.x.values()) < 1e-10);
}

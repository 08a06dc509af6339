#include <doctest.h>

#include "hfactor/exact_oracle.hpp"
#include "hfactor/indefinite_space.hpp"
#include "test_support.hpp"

using namespace hfactor;
using namespace hfactor::exact;
using hfactor::testing::diag_real;
using hfactor::testing::mat2;
using hfactor::testing::rel_diff;

TEST_CASE("rational arithmetic through the matrix layer") {
  const ExactMatrix a = ExactMatrix::from_ints(2, {1, 2, 3, 4});
  const ExactMatrix inv = a.inverse();
  CHECK((a * inv - ExactMatrix::identity(2)).is_zero());
  CHECK_THROWS_AS(ExactMatrix::from_ints(2, {1, 2, 2, 4}).inverse(),
                  SingularInput);
}

TEST_CASE("rationalize: continued fractions recover simple fractions") {
  CHECK(*rationalize(0.5, 100) == Rational(1, 2));
  CHECK(*rationalize(-2.0, 100) == Rational(-2));
  CHECK(*rationalize(1.0 / 3.0, 100) == Rational(1, 3));
  CHECK(*rationalize(-0.2499999999999999, 100) == Rational(-1, 4));
}

TEST_CASE("exact_verify_identities: worked 2x2 example holds exactly") {
  const ExactMatrix x = ExactMatrix::from_ints(2, {0, 1, 1, 0});
  const ExactMatrix h = ExactMatrix::from_ints(2, {1, 0, 0, -1});
  const ExactIdentityReport rep = exact_verify_identities(x, h);
  CHECK(rep.all_ok());
  CHECK(rep.involution_residual.is_zero());
}

TEST_CASE("exact_verify_identities: diag(1,-1) fails neutrality with the "
          "expected residual pattern") {
  const ExactMatrix x = ExactMatrix::from_ints(2, {1, 0, 0, -1});
  const ExactMatrix h = ExactMatrix::from_ints(2, {1, 0, 0, -1});
  const ExactIdentityReport rep = exact_verify_identities(x, h);
  CHECK(rep.involution_ok);
  CHECK(rep.h_normal_ok);
  CHECK_FALSE(rep.h_neutral_ok);
  // X^{[H]} = X, so the residual X^{[H]}X - (X^{[H]} + X - I) = 2(I - X):
  // zero except in the slot of the non-neutral negative eigenvector.
  CHECK(rep.h_neutral_residual(0, 0).is_zero());
  CHECK(rep.h_neutral_residual(0, 1).is_zero());
  CHECK(rep.h_neutral_residual(1, 0).is_zero());
  CHECK(rep.h_neutral_residual(1, 1) == GaussRational(4));
}

TEST_CASE("exact_verify_identities: identity matrix") {
  const ExactMatrix x = ExactMatrix::identity(3);
  ExactMatrix h = ExactMatrix::identity(3);
  h(2, 2) = GaussRational(-1);
  CHECK(exact_verify_identities(x, h).all_ok());
}

TEST_CASE("exact_inertia: hand-checked signatures") {
  int pos = 0, neg = 0, zero = 0;
  SUBCASE("diag") {
    exact_inertia(ExactMatrix::from_ints(3, {2, 0, 0, 0, -5, 0, 0, 0, 0}),
                  pos, neg, zero);
    CHECK(pos == 1);
    CHECK(neg == 1);
    CHECK(zero == 1);
  }
  SUBCASE("hyperbolic plane: zero diagonal, off-diagonal coupling") {
    exact_inertia(ExactMatrix::from_ints(2, {0, 1, 1, 0}), pos, neg, zero);
    CHECK(pos == 1);
    CHECK(neg == 1);
    CHECK(zero == 0);
  }
  SUBCASE("complex Hermitian coupling") {
    ExactMatrix g(2, 2);
    g(0, 1) = GaussRational(Rational(0), Rational(1));
    g(1, 0) = GaussRational(Rational(0), Rational(-1));
    exact_inertia(g, pos, neg, zero);
    CHECK(pos == 1);
    CHECK(neg == 1);
  }
}

TEST_CASE("exact_negative_eigenspace: worked 2x2 example") {
  const ExactMatrix f = ExactMatrix::from_ints(2, {0, 1, 1, 0});
  const ExactMatrix h = ExactMatrix::from_ints(2, {1, 0, 0, -1});
  const ExactNegReport rep = exact_negative_eigenspace(f, h);
  CHECK(rep.dim == 2);
  CHECK(rep.signature == 0);
  CHECK(rep.hyperbolic);
}

TEST_CASE("exact_negative_eigenspace: identity has empty negative "
          "eigenspace") {
  const ExactMatrix f = ExactMatrix::identity(2);
  const ExactMatrix h = ExactMatrix::from_ints(2, {1, 0, 0, -1});
  const ExactNegReport rep = exact_negative_eigenspace(f, h);
  CHECK(rep.dim == 0);
  CHECK(rep.hyperbolic);
}

TEST_CASE("exact_negative_eigenspace: defective 4x4 with paired Jordan "
          "blocks") {
  // H = Z_2 + (-Z_2) and F = [[0, B], [B, 0]] with B = [[1, -1/2], [0, 1]]
  // give F^{[H]}F = J_2(-1) + J_2(-1) exactly: two paired Jordan blocks
  // with opposite sign characteristic.
  ExactMatrix h(4, 4);
  h(0, 1) = GaussRational(1);
  h(1, 0) = GaussRational(1);
  h(2, 3) = GaussRational(-1);
  h(3, 2) = GaussRational(-1);

  ExactMatrix f(4, 4);
  f(0, 2) = GaussRational(1);
  f(0, 3) = GaussRational(Rational(-1, 2));
  f(1, 3) = GaussRational(1);
  f(2, 0) = GaussRational(1);
  f(2, 1) = GaussRational(Rational(-1, 2));
  f(3, 1) = GaussRational(1);

  ExactMatrix expected(4, 4);
  expected(0, 0) = GaussRational(-1);
  expected(0, 1) = GaussRational(1);
  expected(1, 1) = GaussRational(-1);
  expected(2, 2) = GaussRational(-1);
  expected(2, 3) = GaussRational(1);
  expected(3, 3) = GaussRational(-1);

  const ExactMatrix gram = h.inverse() * f.adjoint() * h * f;
  CHECK((gram - expected).is_zero());
  // Genuinely defective: (A + I) is nonzero with (A + I)^2 = 0.
  const ExactMatrix shifted = gram + ExactMatrix::identity(4);
  CHECK_FALSE(shifted.is_zero());
  CHECK((shifted * shifted).is_zero());

  const ExactNegReport rep = exact_negative_eigenspace(f, h);
  CHECK(rep.dim == 4);
  CHECK(rep.signature == 0);
  CHECK(rep.hyperbolic);
}

TEST_CASE("count_negative_real_roots: Sturm chain on rational polynomials") {
  using hfactor::exact::detail::count_negative_real_roots;
  // x^2 + 6x + 7: roots -3 +- sqrt(2), both negative irrational.
  CHECK(count_negative_real_roots({Rational(7), Rational(6), Rational(1)}) ==
        2);
  // x^2 + 1: no real roots.
  CHECK(count_negative_real_roots({Rational(1), Rational(0), Rational(1)}) ==
        0);
  // (x+1)(x-2): one negative real root.
  CHECK(count_negative_real_roots({Rational(-2), Rational(-1), Rational(1)}) ==
        1);
  // (x+1)^2: multiple root counted once after square-free reduction.
  CHECK(count_negative_real_roots({Rational(1), Rational(2), Rational(1)}) ==
        1);
}

TEST_CASE("exact_negative_eigenspace: irrational negative eigenvalue is "
          "rejected") {
  // F = [[0, 1], [3, 1]] over H = diag(1, -1): the gram has characteristic
  // polynomial x^2 + 9x + 9 with roots (-9 +- sqrt(45))/2, both negative
  // and irrational.
  ExactMatrix h(2, 2);
  h(0, 0) = GaussRational(1);
  h(1, 1) = GaussRational(-1);
  ExactMatrix f(2, 2);
  f(0, 1) = GaussRational(1);
  f(1, 0) = GaussRational(3);
  f(1, 1) = GaussRational(1);

  const ExactMatrix gram = h.inverse() * f.adjoint() * h * f;
  const auto chi = hfactor::exact::detail::char_poly(gram);
  REQUIRE(chi.size() == 3);
  CHECK(chi[0] == GaussRational(9));
  CHECK(chi[1] == GaussRational(9));
  CHECK(chi[2] == GaussRational(1));
  CHECK_THROWS_AS(exact_negative_eigenspace(f, h), UnsupportedInstance);
}

TEST_CASE("floating pipeline agrees with the exact oracle on rational "
          "instances") {
  struct Case {
    ExactMatrix f;
    ExactMatrix h;
  };
  std::vector<Case> cases;
  cases.push_back({ExactMatrix::from_ints(2, {0, 1, 1, 0}),
                   ExactMatrix::from_ints(2, {1, 0, 0, -1})});
  cases.push_back({ExactMatrix::identity(2),
                   ExactMatrix::from_ints(2, {1, 0, 0, -1})});
  cases.push_back({ExactMatrix::from_ints(3, {2, 0, 0, 0, 0, 1, 0, 1, 0}),
                   ExactMatrix::from_ints(3, {1, 0, 0, 0, 1, 0, 0, 0, -1})});

  for (const Case& c : cases) {
    const ExactNegReport exact_rep = exact_negative_eigenspace(c.f, c.h);
    const SquareMatrix f = c.f.to_square_matrix();
    const Eigen::Index n = f.dim();
    const ToleranceConfig tol = ToleranceConfig::defaults_for(n);
    const InnerProductSpace space(c.h.to_square_matrix(), tol);
    const SubspaceReport float_rep =
        negative_eigenspace_hyperbolicity(f, space, tol);
    CHECK(float_rep.dim == exact_rep.dim);
    CHECK(float_rep.positive - float_rep.negative == exact_rep.signature);
    CHECK(float_rep.hyperbolic == exact_rep.hyperbolic);
  }
}

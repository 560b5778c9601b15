#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numbers>

#include "nctorus/element.hpp"
#include "test_util.hpp"

using namespace nct;
using nct_test::kTheta;
using nct_test::random_element;

namespace {

const Complex kI(0.0, 1.0);
constexpr double kTwoPi = 2.0 * std::numbers::pi;

TorusElement u1(double theta = kTheta) {
  return TorusElement::monomial(theta, 1, 0);
}
TorusElement u2(double theta = kTheta) {
  return TorusElement::monomial(theta, 0, 1);
}

}  // namespace

TEST_CASE("canonical sparse form never stores zeros") {
  TorusElement a(kTheta);
  a.set_coeff(2, -1, 0.5);
  a.set_coeff(2, -1, 0.0);
  CHECK(a.is_zero());
  a.add_coeff(1, 1, 1.0);
  a.add_coeff(1, 1, -1.0);
  CHECK(a.is_zero());
  CHECK(sub(u1(), u1()).is_zero());
  CHECK(a.support_radius() == 0);
  a.set_coeff(-3, 2, 1.0);
  CHECK(a.support_radius() == 3);
}

TEST_CASE("product twists by the commutation phase") {
  // normal order: u1 u2 keeps coefficient 1
  CHECK(std::abs(mul(u1(), u2()).coeff(1, 1) - 1.0) < 1e-15);

  // theta = 1/4: u2 u1 = e^{-i pi/2} u1 u2 = -i u1 u2
  TorusElement p = mul(u2(0.25), u1(0.25));
  CHECK(p.nnz() == 1);
  CHECK(std::abs(p.coeff(1, 1) - Complex(0.0, -1.0)) < 1e-15);

  // the defining relation u1 u2 = e^{2 pi i theta} u2 u1 at irrational theta
  for (double theta : {kTheta, 0.25, 0.7}) {
    TorusElement lhs = mul(u1(theta), u2(theta));
    TorusElement rhs = scale(std::polar(1.0, kTwoPi * theta),
                             mul(u2(theta), u1(theta)));
    CHECK(l1_distance(lhs, rhs) < 1e-15);
  }
}

TEST_CASE("unitarity and involution on monomials") {
  CHECK(std::abs(star(u1()).coeff(-1, 0) - 1.0) < 1e-15);
  CHECK(l1_distance(mul(u1(), star(u1())), TorusElement::unit(kTheta)) <
        1e-15);
  CHECK(l1_distance(mul(star(u1()), u1()), TorusElement::unit(kTheta)) <
        1e-15);
  CHECK(l1_distance(mul(u2(), star(u2())), TorusElement::unit(kTheta)) <
        1e-15);

  // (u1 u2)* at theta = 1/4 picks up e^{-2 pi i theta} = -i at (-1,-1)
  TorusElement s = star(TorusElement::monomial(0.25, 1, 1));
  CHECK(std::abs(s.coeff(-1, -1) - Complex(0.0, -1.0)) < 1e-15);
}

TEST_CASE("star is an involutive antihomomorphism") {
  std::mt19937_64 rng(12);
  for (int t = 0; t < 8; ++t) {
    TorusElement a = random_element(rng, kTheta, 6, 10);
    TorusElement b = random_element(rng, kTheta, 6, 10);
    double s = std::max(1.0, norm_l1(a) * norm_l1(b));
    CHECK(l1_distance(star(star(a)), a) < 1e-13 * s);
    CHECK(l1_distance(star(mul(a, b)), mul(star(b), star(a))) < 1e-13 * s);
    CHECK(l1_distance(star(scale(Complex(2.0, -3.0), a)),
                      scale(Complex(2.0, 3.0), star(a))) < 1e-13 * s);
    CHECK(l1_distance(star(add(a, b)), add(star(a), star(b))) < 1e-13 * s);
  }
}

TEST_CASE("self-adjointness predicate") {
  TorusElement a = add(add(u1(), star(u1())), TorusElement::unit(kTheta, 3.0));
  CHECK(is_self_adjoint(a));
  CHECK_FALSE(is_self_adjoint(u1()));
  CHECK(is_self_adjoint(scale(kI, sub(u2(), star(u2()))) , 1e-12));
}

TEST_CASE("derivations scale modes and satisfy Leibniz") {
  CHECK(l1_distance(derive(1, u1()), scale(Complex(0, kTwoPi), u1())) <
        1e-15);
  CHECK(derive(2, u1()).is_zero());
  TorusElement m = TorusElement::monomial(kTheta, 2, -1);
  CHECK(std::abs(derive(1, m).coeff(2, -1) - Complex(0, 2 * kTwoPi)) < 1e-14);
  CHECK(std::abs(derive(2, m).coeff(2, -1) - Complex(0, -kTwoPi)) < 1e-14);

  // the sign on inverse powers is forced by d(a*) = (d a)*
  CHECK(l1_distance(derive(1, star(u1())),
                    scale(Complex(0, -kTwoPi), star(u1()))) < 1e-15);

  std::mt19937_64 rng(34);
  for (int t = 0; t < 8; ++t) {
    TorusElement a = random_element(rng, kTheta, 6, 10);
    TorusElement b = random_element(rng, kTheta, 6, 10);
    double s = std::max(1.0, norm_l1(a) * norm_l1(b));
    for (int j = 1; j <= 2; ++j) {
      CHECK(l1_distance(derive(j, mul(a, b)),
                        add(mul(derive(j, a), b), mul(a, derive(j, b)))) <
            1e-12 * s);
      CHECK(l1_distance(derive(j, star(a)), star(derive(j, a))) < 1e-12 * s);
    }
    CHECK(l1_distance(derive(1, derive(2, a)), derive(2, derive(1, a))) <
          1e-12 * s);
  }
}

TEST_CASE("trace is the invariant tracial state") {
  CHECK(trace(u1()) == Complex(0.0));
  TorusElement a = add(add(u1(), star(u1())), TorusElement::unit(kTheta, 3.0));
  CHECK(std::abs(trace(a) - 3.0) < 1e-15);

  std::mt19937_64 rng(56);
  for (int t = 0; t < 8; ++t) {
    TorusElement x = random_element(rng, kTheta, 6, 10);
    TorusElement y = random_element(rng, kTheta, 6, 10);
    double s = std::max(1.0, norm_l1(x) * norm_l1(y));
    CHECK(std::abs(trace(mul(x, y)) - trace(mul(y, x))) < 1e-13 * s);
    Complex pos = trace(mul(x, star(x)));
    CHECK(std::real(pos) >= 0.0);
    CHECK(std::abs(std::imag(pos)) < 1e-13 * s);
    CHECK(std::abs(trace(derive(1, x))) == 0.0);
    CHECK(std::abs(trace(derive(2, x))) == 0.0);
    CHECK(std::abs(trace(x)) <= norm_l1(x) + 1e-15);
  }
}

TEST_CASE("l1 norm is submultiplicative and star-invariant") {
  std::mt19937_64 rng(78);
  for (int t = 0; t < 8; ++t) {
    TorusElement a = random_element(rng, kTheta, 6, 10);
    TorusElement b = random_element(rng, kTheta, 6, 10);
    CHECK(norm_l1(mul(a, b)) <=
          norm_l1(a) * norm_l1(b) * (1.0 + 1e-12) + 1e-15);
    CHECK(norm_l1(add(a, b)) <= norm_l1(a) + norm_l1(b) + 1e-15);
    CHECK(norm_l1(star(a)) == doctest::Approx(norm_l1(a)).epsilon(1e-13));
  }
}

TEST_CASE("ring identities on random elements") {
  std::mt19937_64 rng(90);
  const TorusElement one = TorusElement::unit(kTheta);
  for (int t = 0; t < 6; ++t) {
    TorusElement a = random_element(rng, kTheta, 5, 8);
    TorusElement b = random_element(rng, kTheta, 5, 8);
    TorusElement c = random_element(rng, kTheta, 5, 8);
    double s = std::max(1.0, norm_l1(a) * norm_l1(b) * norm_l1(c));
    CHECK(l1_distance(mul(mul(a, b), c), mul(a, mul(b, c))) < 1e-12 * s);
    CHECK(l1_distance(mul(a, add(b, c)), add(mul(a, b), mul(a, c))) <
          1e-12 * s);
    CHECK(l1_distance(mul(add(a, b), c), add(mul(a, c), mul(b, c))) <
          1e-12 * s);
    CHECK(l1_distance(mul(one, a), a) < 1e-15);
    CHECK(l1_distance(mul(a, one), a) < 1e-15);
    CHECK(l1_distance(mul(scale(kI, a), b), scale(kI, mul(a, b))) <
          1e-13 * s);
  }
}

TEST_CASE("operands must share theta") {
  TorusElement a(0.25), b(0.5);
  a.set_coeff(1, 0, 1.0);
  b.set_coeff(0, 1, 1.0);
  CHECK_THROWS_AS(add(a, b), ThetaMismatchError);
  CHECK_THROWS_AS(mul(a, b), ThetaMismatchError);
  CHECK_THROWS_AS(sub(a, b), ThetaMismatchError);
}

TEST_CASE("truncation keeps the box and accounts for the tail") {
  TorusElement a(kTheta);
  a.set_coeff(1, 0, 2.0);
  a.set_coeff(0, 5, Complex(0.0, -0.25));
  a.set_coeff(-4, 4, 0.5);
  TruncationPolicy policy{2, 0.0};
  TorusElement t = truncate(a, policy);
  CHECK(t.nnz() == 1);
  CHECK(t.support_radius() <= 2);
  CHECK(policy.tail_mass == doctest::Approx(0.75).epsilon(1e-15));
  CHECK(norm_l1(a) ==
        doctest::Approx(norm_l1(t) + policy.tail_mass).epsilon(1e-15));
  // tail mass accumulates across calls
  truncate(a, policy);
  CHECK(policy.tail_mass == doctest::Approx(1.5).epsilon(1e-15));
}

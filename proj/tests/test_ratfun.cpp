#include "spraykit/ratfun.hpp"

#include <gtest/gtest.h>

#include "spraykit/rng.hpp"

using namespace spraykit;

namespace {

RatFun random_ratfun(SeededRng& rng, const std::vector<std::string>& vars) {
  auto random_poly = [&](int max_terms) {
    Poly p;
    const int terms = static_cast<int>(rng.next_int(1, max_terms));
    for (int t = 0; t < terms; ++t) {
      Poly mono = Poly::constant(rng.next_nonzero_rational(20));
      for (const auto& v : vars) {
        mono = mono * Poly::var(v, static_cast<std::uint32_t>(rng.next_int(0, 2)));
      }
      p += mono;
    }
    return p;
  };
  Poly d = random_poly(3);
  while (d.is_zero()) d = random_poly(3);
  return RatFun(random_poly(3), d);
}

TEST(RatFunEqual, CrossMultiplicationIdentities) {
  const Poly x = Poly::var("x"), y = Poly::var("y");
  // (x^2 - 1)/(x - 1) equals (x + 1)/1 without any gcd computation.
  EXPECT_TRUE(equal(RatFun(x * x - Rational(1), x - Rational(1)), RatFun(x + Rational(1))));
  EXPECT_FALSE(equal(RatFun(x), RatFun(y)));
  // 0/p equals 0/q for any nonzero p, q.
  EXPECT_TRUE(equal(RatFun(Poly(), x + Rational(2)), RatFun(Poly(), y * y + Rational(1))));
}

TEST(RatFunEqual, IsAnEquivalenceOnRandomTriples) {
  SeededRng rng(3);
  const std::vector<std::string> vars{"x", "y"};
  for (int it = 0; it < 40; ++it) {
    const RatFun a = random_ratfun(rng, vars);
    const RatFun b = random_ratfun(rng, vars);
    const RatFun c = random_ratfun(rng, vars);
    EXPECT_TRUE(equal(a, a));
    EXPECT_EQ(equal(a, b), equal(b, a));
    if (equal(a, b) && equal(b, c)) EXPECT_TRUE(equal(a, c));
    // Scaling numerator and denominator together is invisible.
    const Poly s = Poly::var("x") + Rational(5);
    EXPECT_TRUE(equal(a, RatFun(a.num() * s, a.den() * s)));
  }
}

TEST(RatFunArith, FieldIdentitiesOnRandomValues) {
  SeededRng rng(5);
  const std::vector<std::string> vars{"x", "y"};
  for (int it = 0; it < 40; ++it) {
    const RatFun a = random_ratfun(rng, vars);
    const RatFun b = random_ratfun(rng, vars);
    EXPECT_TRUE(equal(a + b, b + a));
    EXPECT_TRUE(equal(a - a, RatFun(Rational(0))));
    if (!b.is_zero()) EXPECT_TRUE(equal((a / b) * b, a));
  }
}

TEST(RatFunEval, ExactValueAndDomainError) {
  const RatFun f(Poly::constant(1), Poly::var("x"));
  EXPECT_EQ(f.eval<Rational>({"x"}, {make_rational(1, 3)}), Rational(3));
  EXPECT_THROW(f.eval<Rational>({"x"}, {Rational(0)}), eval_domain_error);
}

TEST(RatFunEval, DomainErrorCarriesOffendingPolynomial) {
  const Poly d = Poly::var("x") - Rational(1);
  const RatFun f(Poly::constant(1), d);
  try {
    f.eval<Rational>({"x"}, {Rational(1)});
    FAIL() << "expected eval_domain_error";
  } catch (const eval_domain_error& e) {
    EXPECT_EQ(e.offending, d.to_string());
  }
}

TEST(RatFunNormalize, ContentAndSign) {
  const Poly x = Poly::var("x");
  // 2x / -4x^2 normalizes by monomial and scalar content with positive
  // leading denominator coefficient.
  const RatFun f(Rational(2) * x, Rational(-4) * x * x);
  EXPECT_EQ(f.num(), -Poly::constant(1));
  EXPECT_EQ(f.den(), Rational(2) * x);
}

TEST(RatFunSubst, CompositionOfReciprocals) {
  // f(u) = 1/u with u = 1/x collapses to x after swap-multiplying.
  const RatFun f(Poly::constant(1), Poly::var("u"));
  const RatFun inner(Poly::constant(1), Poly::var("x"));
  const RatFun g = f.subst({{"u", inner}});
  EXPECT_TRUE(equal(g, RatFun(Poly::var("x"))));
}

}  // namespace

#include "spraykit/polynomial.hpp"

#include <gtest/gtest.h>

#include "spraykit/rng.hpp"

using namespace spraykit;

namespace {

Poly random_poly(SeededRng& rng, const std::vector<std::string>& vars, int max_terms, int max_deg) {
  Poly p;
  const int terms = static_cast<int>(rng.next_int(0, max_terms));
  for (int t = 0; t < terms; ++t) {
    Poly mono = Poly::constant(rng.next_nonzero_rational(30));
    for (const auto& v : vars) {
      mono = mono * Poly::var(v, static_cast<std::uint32_t>(rng.next_int(0, max_deg)));
    }
    p += mono;
  }
  return p;
}

TEST(PolyArith, DifferenceOfSquares) {
  const Poly x = Poly::var("x"), y = Poly::var("y");
  EXPECT_EQ((x + y) * (x - y), x * x - y * y);
}

TEST(PolyArith, AddZeroIsIdentity) {
  const Poly p = Poly::parse("3/2 * x^2 + -1/1 * y^1");
  EXPECT_EQ(p + Poly(), p);
}

TEST(PolyArith, CoefficientsNormalize) {
  const Poly x = Poly::var("x");
  const Poly half_x = x * make_rational(1, 2);
  EXPECT_EQ(half_x + half_x, x);
  EXPECT_EQ((x - x).term_count(), 0u);
}

TEST(PolyArith, RingLawsOnRandomTriples) {
  SeededRng rng(7);
  const std::vector<std::string> vars{"x", "y", "z"};
  for (int it = 0; it < 60; ++it) {
    const Poly a = random_poly(rng, vars, 4, 3);
    const Poly b = random_poly(rng, vars, 4, 3);
    const Poly c = random_poly(rng, vars, 4, 3);
    EXPECT_EQ(a + b, b + a);
    EXPECT_EQ((a + b) + c, a + (b + c));
    EXPECT_EQ(a * b, b * a);
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_EQ(a * (b + c), a * b + a * c);
  }
}

TEST(PolyEval, ExactRationalAndDouble) {
  // (1 + x)^8 at x = 1/3 -> 65536/6561.
  const Poly p = (Poly::var("x") + Rational(1)).pow(8);
  EXPECT_EQ(p.eval<Rational>({"x"}, {make_rational(1, 3)}), make_rational(65536, 6561));
  EXPECT_NEAR(p.eval<double>({"x"}, {1.0 / 3.0}), 65536.0 / 6561.0, 1e-12);
}

TEST(PolySerialize, CanonicalFormRoundTrips) {
  const Poly p = Poly::parse("x^2 + -1/1*y^2 + 1/2");
  EXPECT_EQ(p.to_string(), "1/1 * x^2 + -1/1 * y^2 + 1/2");
  EXPECT_EQ(Poly::parse(p.to_string()), p);
  // Whitespace-insensitive variants.
  EXPECT_EQ(Poly::parse("1/1*x^2+-1/1*y^2+1/2"), p);
  EXPECT_EQ(Poly::parse("  x ^ 2 + - y ^ 2 + 1 / 2 "), p);
}

TEST(PolySerialize, GrlexOrderIsStable) {
  // Same polynomial assembled two ways serializes identically.
  const Poly a = Poly::var("x") * Poly::var("y") + Poly::var("x", 2) + Poly::var("y");
  const Poly b = Poly::var("y") + Poly::var("y") * Poly::var("x") + Poly::var("x", 2);
  EXPECT_EQ(a.to_string(), b.to_string());
  EXPECT_EQ(a.to_string(), "1/1 * x^2 + 1/1 * x^1 * y^1 + 1/1 * y^1");
}

TEST(PolySerialize, ParseRejectsGarbage) {
  EXPECT_THROW(Poly::parse("x +"), std::invalid_argument);
  EXPECT_THROW(Poly::parse("+ x"), std::invalid_argument);
  EXPECT_THROW(Poly::parse("3 $ x"), std::invalid_argument);
}

TEST(VDecompose, SpecExamples) {
  const Poly y = Poly::var("y"), v1 = Poly::var("v1"), v2 = Poly::var("v2");
  // p = y v1 + v1 v2 with the lowest-index tie-break: P1 = y + v2, P2 = 0.
  const Poly p = y * v1 + v1 * v2;
  const auto parts = v_decompose(p, {"v1", "v2"});
  ASSERT_EQ(parts.size(), 2u);
  EXPECT_EQ(parts[0], y + v2);
  EXPECT_TRUE(parts[1].is_zero());

  const auto zero_parts = v_decompose(Poly(), {"v1", "v2"});
  EXPECT_TRUE(zero_parts[0].is_zero());
  EXPECT_TRUE(zero_parts[1].is_zero());

  const auto cube = v_decompose(v2.pow(3), {"v1", "v2"});
  EXPECT_TRUE(cube[0].is_zero());
  EXPECT_EQ(cube[1], v2.pow(2));
}

TEST(VDecompose, PreconditionViolation) {
  EXPECT_THROW(v_decompose(Poly::var("y") + Poly::var("v1"), {"v1"}), std::invalid_argument);
}

TEST(VDecompose, RecompositionOnRandomInputs) {
  // p = sum_i v_i P_i exactly, for polynomials vanishing at v = 0.
  SeededRng rng(11);
  const std::vector<std::string> v_vars{"v1", "v2", "v3"};
  for (int it = 0; it < 50; ++it) {
    Poly p;
    for (std::size_t k = 0; k < v_vars.size(); ++k) {
      p += Poly::var(v_vars[k]) * random_poly(rng, {"y", "v1", "v2", "v3"}, 3, 2);
    }
    const auto parts = v_decompose(p, v_vars);
    Poly recomposed;
    for (std::size_t k = 0; k < v_vars.size(); ++k) {
      recomposed += Poly::var(v_vars[k]) * parts[k];
    }
    EXPECT_EQ(recomposed, p);
  }
}

TEST(Reducer, CircleRule) {
  // x2^2 -> 1 - x1^2 caps the degree in x2 at one and preserves values on
  // the circle.
  const Poly x1 = Poly::var("x1"), x2 = Poly::var("x2");
  const Reducer red({{"x2", Rational(1) - x1.pow(2)}});
  const Poly p = x2.pow(4) + x1 * x2.pow(3) + x2;
  const Poly q = red.reduce(p);
  for (const auto& [m, c] : q.terms()) {
    for (std::size_t i = 0; i < q.vars().size(); ++i) {
      if (q.vars()[i] == "x2") EXPECT_LE(m[i], 1u);
    }
  }
  const std::vector<Rational> pt{make_rational(3, 5), make_rational(4, 5)};
  EXPECT_EQ(p.eval<Rational>({"x1", "x2"}, pt), q.eval<Rational>({"x1", "x2"}, pt));
}

TEST(Reducer, FixpointIsReduced) {
  const Poly x1 = Poly::var("x1"), x2 = Poly::var("x2");
  const Reducer red({{"x2", Rational(1) - x1.pow(2)}});
  const Poly q = red.reduce(x2.pow(7));
  for (const auto& [m, c] : q.terms()) {
    for (std::size_t i = 0; i < q.vars().size(); ++i) {
      if (q.vars()[i] == "x2") EXPECT_LE(m[i], 1u);
    }
  }
}

}  // namespace

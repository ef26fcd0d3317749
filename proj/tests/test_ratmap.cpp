#include "spraykit/ratmap.hpp"

#include <gtest/gtest.h>

#include "spraykit/rng.hpp"

using namespace spraykit;

namespace {

TEST(RatMapCompose, PolynomialSubstitution) {
  // f(u) = u^2 with u = x + y.
  RatMap outer;
  outer.inputs = {"u"};
  outer.components.emplace_back(Poly::var("u", 2));
  RatMap inner;
  inner.inputs = {"x", "y"};
  inner.components.emplace_back(Poly::var("x") + Poly::var("y"));
  const RatMap c = compose(outer, inner);
  ASSERT_EQ(c.dim(), 1u);
  EXPECT_TRUE(equal(c.components[0], RatFun((Poly::var("x") + Poly::var("y")).pow(2))));
}

TEST(RatMapCompose, ReciprocalInvolution) {
  RatMap outer;
  outer.inputs = {"u"};
  outer.components.emplace_back(RatFun(Poly::constant(1), Poly::var("u")));
  RatMap inner;
  inner.inputs = {"x"};
  inner.components.emplace_back(RatFun(Poly::constant(1), Poly::var("x")));
  const RatMap c = compose(outer, inner);
  EXPECT_TRUE(equal(c.components[0], RatFun(Poly::var("x"))));
}

TEST(RatMapCompose, ArityMismatchRejected) {
  RatMap outer;
  outer.inputs = {"u", "v"};
  outer.components.emplace_back(Poly::var("u"));
  RatMap inner;
  inner.inputs = {"x"};
  inner.components.emplace_back(Poly::var("x"));
  EXPECT_THROW(compose(outer, inner), arity_error);
}

TEST(RatMapCompose, InequationsCarryOver) {
  // outer defined where u != 0, inner(x) = (x-1)/(x+1) defined where x+1 != 0.
  RatMap outer;
  outer.inputs = {"u"};
  outer.components.emplace_back(RatFun(Poly::constant(1), Poly::var("u")));
  outer.domain_inequations = {Poly::var("u")};
  RatMap inner;
  inner.inputs = {"x"};
  inner.components.emplace_back(RatFun(Poly::var("x") - Rational(1), Poly::var("x") + Rational(1)));
  inner.domain_inequations = {Poly::var("x") + Rational(1)};
  const RatMap c = compose(outer, inner);
  // x = 1 kills the substituted outer inequation.
  EXPECT_FALSE(c.in_domain<Rational>({Rational(1)}));
  EXPECT_FALSE(c.in_domain<Rational>({Rational(-1)}));
  EXPECT_TRUE(c.in_domain<Rational>({Rational(3)}));
  EXPECT_EQ(c.eval<Rational>({Rational(3)})[0], Rational(2));
}

TEST(RatMapCompose, EvalCommutesWithComposition) {
  // eval(compose(f,g), x) == eval(f, eval(g, x)) whenever both are defined.
  SeededRng rng(17);
  RatMap f;
  f.inputs = {"a", "b"};
  f.components.emplace_back(RatFun(Poly::var("a") * Poly::var("b") + Rational(1), Poly::var("a") - Poly::var("b")));
  f.components.emplace_back(Poly::var("a", 2) - Poly::var("b"));
  RatMap g;
  g.inputs = {"x", "y"};
  g.components.emplace_back(RatFun(Poly::var("x") + Rational(2), Poly::var("y", 2) + Rational(1)));
  g.components.emplace_back(Poly::var("x") * Poly::var("y"));
  const RatMap fg = compose(f, g);
  int done = 0;
  while (done < 50) {
    const std::vector<Rational> x{rng.next_rational(50), rng.next_rational(50)};
    if (!g.defined_at(x)) continue;
    const auto gx = g.eval(x);
    if (!f.defined_at(gx) || !fg.defined_at(x)) continue;
    EXPECT_EQ(fg.eval(x), f.eval(gx));
    ++done;
  }
}

TEST(RatMapStack, SharedContext) {
  RatMap a = RatMap::identity({"x", "y"});
  RatMap b;
  b.inputs = {"x", "y"};
  b.components.emplace_back(Poly::var("x") * Poly::var("y"));
  const RatMap s = stack({a, b});
  EXPECT_EQ(s.dim(), 3u);
  const auto out = s.eval<Rational>({Rational(2), Rational(5)});
  EXPECT_EQ(out, (std::vector<Rational>{Rational(2), Rational(5), Rational(10)}));
}

}  // namespace

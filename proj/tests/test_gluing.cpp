#include "spraykit/gluing.hpp"

#include <gtest/gtest.h>

#include "spraykit/gallery.hpp"

using namespace spraykit;

namespace {

TEST(CommonDenominator, PolynomialMapGivesOne) {
  RatMap m;
  m.inputs = {"x"};
  m.components.emplace_back(Poly::var("x", 2));
  m.components.emplace_back(Poly::var("x") + Rational(1));
  EXPECT_EQ(common_denominator(m), Poly::constant(1));
}

TEST(CommonDenominator, SharedDenominatorSquares) {
  // Two components over the same d produce d^2 (product rule, no gcd).
  const Poly d = Poly::var("x") + Rational(1);
  RatMap m;
  m.inputs = {"x"};
  m.components.emplace_back(Poly::var("x"), d);
  m.components.emplace_back(Poly::constant(2), d);
  EXPECT_EQ(common_denominator(m), d * d);
}

TEST(CommonDenominator, ChartTauProductForm) {
  const CircleCover cover = circle_two_chart_cover();
  const Spray s1 = spray_from_retract(cover.p1);
  const Poly q = common_denominator(s1.tau);
  // tau = i(z) - i(y) over (1+y1)(1+z1); one component, so q is that product.
  const Poly expected = (Poly::var("y1") + Rational(1)) * (Poly::var("z1") + Rational(1));
  EXPECT_EQ(q, expected);
}

TEST(RegularExtensionRewrite, FixedPointExample) {
  // f(v) = v/(1+v) with Q = 1+v: Q(0) = 1 and the rewrite reproduces f.
  const Poly v = Poly::var("v1");
  const RatFun f(v, v + Rational(1));
  const RatFun g = regular_extension_rewrite(f, v + Rational(1), {"v1"});
  EXPECT_TRUE(equal(g, f));
  // Rewritten denominator is 1 at v = 0.
  EXPECT_EQ(g.den().at_zero({"v1"}), Poly::constant(1));
}

TEST(RegularExtensionRewrite, ScalingExample) {
  // f(v) = v/(2+v) with Q(0) = 2: the result equals f(2v) = v/(1+v).
  const Poly v = Poly::var("v1");
  const RatFun f(v, v + Rational(2));
  const RatFun g = regular_extension_rewrite(f, v + Rational(2), {"v1"});
  EXPECT_TRUE(equal(g, RatFun(v, v + Rational(1))));
}

TEST(RegularExtensionRewrite, ZeroMapsToZero) {
  const RatFun g = regular_extension_rewrite(RatFun(Rational(0)), Poly::var("v1") + Rational(1), {"v1"});
  EXPECT_TRUE(g.is_zero());
}

TEST(RegularExtensionRewrite, NonVanishingWithoutExtensionRejected) {
  // f = (1+v)/(1+v) does not vanish at v = 0 and no F is supplied.
  const Poly v = Poly::var("v1");
  EXPECT_THROW(regular_extension_rewrite(RatFun(v + Rational(1), v + Rational(1)),
                                         v + Rational(1), {"v1"}),
               construction_error);
}

TEST(RegularExtensionRewrite, SuppliedExtensionIsHonored) {
  // f = (y + v)/(1 + v) restricted to v = 0 extends to F = y.
  const Poly v = Poly::var("v1"), y = Poly::var("y1");
  const RatFun f(y + v, v + Rational(1));
  const RatFun g = regular_extension_rewrite(f, v + Rational(1), {"v1"}, RatFun(y));
  EXPECT_TRUE(equal(g, f));  // Q(0) = 1, so the rewrite is the identity
}

TEST(PartitionFunction, DivisibilityIdentities) {
  const Poly Q1 = (Poly::var("y1") + Rational(1)) * (Poly::var("z1") + Rational(1));
  const Poly Q2diag = (Rational(1) - Poly::var("z1")).pow(2);
  const VarietyPresentation YxY =
      detail::pair_presentation(sphere_presentation(1), var_block("y", 2), var_block("z", 2));
  const RatFun theta = find_partition_function(Q1, Q2diag, {}, YxY, 50, 5);
  // theta (Q1^2 + Q2diag^2) = Q1^2 and (theta - 1)(Q1^2 + Q2diag^2) = -Q2diag^2
  // as exact polynomial identities via cross-multiplication.
  const Poly sum = Q1.pow(2) + Q2diag.pow(2);
  EXPECT_TRUE(equal(theta * RatFun(sum), RatFun(Q1.pow(2))));
  EXPECT_TRUE(equal((theta - Rational(1)) * RatFun(sum), RatFun(-Q2diag.pow(2))));
}

TEST(PartitionFunction, TrivialQ1StillValid) {
  const Poly Q2diag = Poly::var("z1");
  VarietyPresentation line;
  line.vars = {"y1", "z1"};
  line.sampler.kind = SamplerKind::parametrized;
  line.sampler.parametrization = RatMap::identity({"t1", "t2"});
  const RatFun theta = find_partition_function(Poly::constant(1), Q2diag, {}, line, 30, 2);
  EXPECT_TRUE(equal(theta * RatFun(Rational(1) + Q2diag.pow(2)), RatFun(Rational(1))));
}

TEST(PartitionFunction, CommonZeroRejectedWithWitness) {
  VarietyPresentation line;
  line.vars = {"x"};
  line.sampler.kind = SamplerKind::enumerated;
  line.sampler.points = {{Rational(2)}, {Rational(0)}, {Rational(1)}};
  const Poly x = Poly::var("x");
  try {
    find_partition_function(x, x, {}, line, 3, 0);
    FAIL() << "expected construction_error";
  } catch (const construction_error& e) {
    EXPECT_EQ(e.witness, "(0/1)");
  }
}

class GluedCircle : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    const CircleCover cover = circle_two_chart_cover();
    GlueOptions opt;
    opt.validation_trials = 32;
    opt.verify_trials = 32;
    glued_ = new GluedSpray(glue_sprays(cover.Y, cover.Y1, cover.Y2,
                                        spray_from_retract(cover.p1),
                                        spray_from_retract(cover.p2), opt));
  }
  static void TearDownTestSuite() {
    delete glued_;
    glued_ = nullptr;
  }
  static GluedSpray* glued_;
};

GluedSpray* GluedCircle::glued_ = nullptr;

TEST_F(GluedCircle, PassesAllAxioms) {
  const auto rep = verify_spray(glued_->spray, 200, 404);
  EXPECT_TRUE(rep.axiom1.passed) << rep.axiom1.detail;
  EXPECT_TRUE(rep.axiom2.passed) << rep.axiom2.detail;
  EXPECT_TRUE(rep.sigma_at_zero.passed) << rep.sigma_at_zero.detail;
  EXPECT_TRUE(rep.image_in_Y.passed) << rep.image_in_Y.detail;
}

TEST_F(GluedCircle, ThetaDivisibilityIsExact) {
  const auto& cert = glued_->certificate;
  const Poly sum = cert.Q1.pow(2) + cert.Q2diag.pow(2);
  EXPECT_TRUE(equal(cert.theta * RatFun(sum), RatFun(cert.Q1.pow(2))));
  EXPECT_TRUE(equal((cert.theta - Rational(1)) * RatFun(sum), RatFun(-cert.Q2diag.pow(2))));
}

TEST_F(GluedCircle, BetaVanishesOnDiagonal) {
  const auto& beta = glued_->certificate.beta;
  for (const auto& y : sample_points(glued_->spray.Y, 100, 31)) {
    Point yy = y;
    yy.insert(yy.end(), y.begin(), y.end());
    for (const auto& c : beta.components) {
      EXPECT_EQ(c.eval<Rational>(beta.inputs, yy), Rational(0));
    }
  }
}

TEST_F(GluedCircle, TauChartsAgreeOnOverlap) {
  const Spray& s = glued_->spray;
  ASSERT_EQ(s.tau_charts.size(), 1u);
  const RatMap& alt = s.tau_charts[0].map;
  const VarietyPresentation YxY =
      detail::pair_presentation(s.Y, s.y_vars, s.z_vars);
  int compared = 0;
  for (const auto& p : sample_points(YxY, 120, 61)) {
    if (!s.tau.defined_at(p) || !alt.defined_at(p)) continue;
    bool guards_ok = true;
    for (const auto& g : s.tau_charts[0].guards) {
      if (g.eval<Rational>(alt.inputs, p) == 0) {
        guards_ok = false;
        break;
      }
    }
    if (!guards_ok) continue;
    EXPECT_EQ(s.tau.eval(p), alt.eval(p)) << point_to_string(p);
    ++compared;
  }
  EXPECT_GT(compared, 50);
}

TEST_F(GluedCircle, BehavesLikeTheExplicitSphereSpray) {
  // sigma(y, tau(y, z)) agrees with the explicit sphere spray's composite:
  // both project a pair to its second member wherever defined.
  const Spray& g = glued_->spray;
  const Spray e = sphere_spray(1);
  const auto composite = [](const Spray& s) {
    return [&s](const Point& p) -> std::optional<Point> {
      const Point y(p.begin(), p.begin() + 2);
      const Point z(p.begin() + 2, p.end());
      if (!in_N(s, y, z)) return std::nullopt;
      const auto t = eval_tau(s, y, z);
      if (!t) return std::nullopt;
      return eval_sigma(s, y, *t);
    };
  };
  const VarietyPresentation YxY = detail::pair_presentation(g.Y, g.y_vars, g.z_vars);
  const auto out = identity_check(composite(g), composite(e), YxY, 200, 71);
  EXPECT_TRUE(out.passed) << (out.witness ? point_to_string(*out.witness) : "");
}

TEST_F(GluedCircle, ExactNearChartBoundaries) {
  // Rational circle points with chart denominators as small as 1e-6:
  // t = +/-1414 under inverse stereographic projection puts 1 + x1 around
  // 1/1e6, and t = +/-1/1414 puts 1 - x1 there.
  const Spray& s = glued_->spray;
  const auto& param = s.Y.sampler.parametrization;
  std::vector<Point> hard;
  for (const Rational& t : {make_rational(1414, 1), make_rational(-1414, 1),
                            make_rational(1, 1414), make_rational(-1, 1414),
                            make_rational(1414213, 1000), make_rational(-1000, 1414213)}) {
    hard.push_back(param.eval<Rational>(std::vector<Rational>{t}));
  }
  const Poly den1 = Poly::var("x1") + Rational(1);
  const Poly den2 = Rational(1) - Poly::var("x1");
  bool saw_tiny = false;
  for (const auto& p : hard) {
    const Rational d1 = den1.eval<Rational>(s.Y.vars, p);
    const Rational d2 = den2.eval<Rational>(s.Y.vars, p);
    if (abs(d1) <= make_rational(1, 500000) || abs(d2) <= make_rational(1, 500000)) saw_tiny = true;
  }
  EXPECT_TRUE(saw_tiny);

  for (const auto& y : hard) {
    for (const auto& z : hard) {
      if (!in_N(s, y, z)) continue;
      const auto t = eval_tau(s, y, z);
      ASSERT_TRUE(t.has_value()) << point_to_string(concat(y, z));
      const auto im = eval_sigma(s, y, *t);
      ASSERT_TRUE(im.has_value());
      EXPECT_EQ(*im, z) << point_to_string(concat(y, z));
    }
    const auto t0 = eval_tau(s, y, y);
    ASSERT_TRUE(t0.has_value());
    EXPECT_EQ(*t0, Point(s.n, Rational(0)));
  }
}

TEST(GlueDegenerate, SameChartTwice) {
  const VarietyPresentation Y = sphere_presentation(1);
  const Spray s = sphere_spray(1);
  GlueOptions opt;
  opt.validation_trials = 24;
  opt.verify_trials = 24;
  const GluedSpray g = glue_sprays(Y, Y, Y, s, s, opt);
  EXPECT_EQ(g.spray.n, 4u);
  EXPECT_TRUE(verify_spray(g.spray, 60, 11).all_passed());
}

TEST(GlueFailure, IncompleteCoverRejected) {
  VarietyPresentation Y = sphere_presentation(1);
  // Force the sampler to visit the uncovered point (-1, 0).
  Y.sampler.kind = SamplerKind::enumerated;
  Y.sampler.points = {{Rational(0), Rational(1)},
                      {Rational(-1), Rational(0)},
                      {Rational(1), Rational(0)},
                      {make_rational(3, 5), make_rational(4, 5)}};
  const CircleCover cover = circle_two_chart_cover();
  GlueOptions opt;
  opt.validation_trials = 4;
  opt.verify_trials = 4;
  EXPECT_THROW(glue_sprays(Y, cover.Y1, cover.Y1, spray_from_retract(cover.p1),
                           spray_from_retract(cover.p1), opt),
               construction_error);
}

}  // namespace

#pragma once

// Strong dominating sprays (n, M, N, sigma, tau) over a presented variety,
// with exact sampled verification of the axioms and the conversions between
// sprays and retract-rational presentations.

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "spraykit/errors.hpp"
#include "spraykit/variety.hpp"

namespace spraykit {

inline std::vector<std::string> var_block(const std::string& prefix, std::size_t count,
                                          std::size_t offset = 0) {
  std::vector<std::string> out;
  out.reserve(count);
  for (std::size_t j = 0; j < count; ++j) out.push_back(prefix + std::to_string(offset + j + 1));
  return out;
}

inline std::map<std::string, std::string> make_rename(const std::vector<std::string>& from,
                                                      const std::vector<std::string>& to) {
  if (from.size() != to.size()) throw arity_error("make_rename: size mismatch");
  std::map<std::string, std::string> m;
  for (std::size_t i = 0; i < from.size(); ++i) m[from[i]] = to[i];
  return m;
}

// An alternative presentation of tau, valid where its guards are nonzero.
// Single-fraction rational maps cannot always be regular across a whole
// neighbourhood of the diagonal; glued sprays carry the second chart here.
struct TauChart {
  std::vector<Poly> guards;  // in (y, z) variables
  RatMap map;
};

struct Spray {
  std::size_t n = 0;  // fiber dimension
  VarietyPresentation Y;
  std::vector<std::string> y_vars, v_vars, z_vars;
  std::vector<Poly> M_inequations;  // in (y, v)
  std::vector<Poly> N_inequations;  // in (y, z), beyond membership in Y x Y
  RatMap sigma;                     // (y, v) -> ambient of Y
  RatMap tau;                       // (y, z) -> R^n
  std::vector<TauChart> tau_charts;

  std::size_t ambient() const { return Y.ambient_dim(); }

  std::map<std::string, std::string> rename_to_y() const { return make_rename(Y.vars, y_vars); }
  std::map<std::string, std::string> rename_to_z() const { return make_rename(Y.vars, z_vars); }

  Reducer yz_reducer() const {
    return Y.reducer.renamed(rename_to_y()).merged(Y.reducer.renamed(rename_to_z()));
  }
  Reducer y_reducer() const { return Y.reducer.renamed(rename_to_y()); }
};

// Registers every component denominator as an explicit domain inequation:
// the computable stand-in for the map's maximal domain.
inline void adopt_denominator_domain(RatMap& m) {
  for (const auto& f : m.components) push_inequation(m.domain_inequations, f.den());
}

// Fills in block variable names and synchronizes sigma/tau domains with the
// M/N inequation lists.
inline Spray make_spray(std::size_t n, VarietyPresentation Y, RatMap sigma, RatMap tau,
                        std::vector<Poly> M_ineqs, std::vector<Poly> N_ineqs,
                        std::vector<TauChart> tau_charts = {}) {
  Spray s;
  s.n = n;
  s.Y = std::move(Y);
  s.y_vars = var_block("y", s.Y.ambient_dim());
  s.v_vars = var_block("v", n);
  s.z_vars = var_block("z", s.Y.ambient_dim());
  s.sigma = std::move(sigma);
  s.tau = std::move(tau);
  s.M_inequations = std::move(M_ineqs);
  s.N_inequations = std::move(N_ineqs);
  for (const auto& f : s.sigma.components) push_inequation(s.M_inequations, f.den());
  s.sigma.domain_inequations = s.M_inequations;
  s.tau.domain_inequations = s.N_inequations;
  s.tau_charts = std::move(tau_charts);

  std::vector<std::string> yv = s.y_vars;
  yv.insert(yv.end(), s.v_vars.begin(), s.v_vars.end());
  std::vector<std::string> yz = s.y_vars;
  yz.insert(yz.end(), s.z_vars.begin(), s.z_vars.end());
  s.sigma.inputs = yv;
  s.tau.inputs = yz;
  return s;
}

inline Point concat(const Point& a, const Point& b) {
  Point p = a;
  p.insert(p.end(), b.begin(), b.end());
  return p;
}

inline bool in_M(const Spray& s, const Point& y, const Point& v) {
  const Point p = concat(y, v);
  for (const auto& q : s.M_inequations) {
    if (q.eval<Rational>(s.sigma.inputs, p) == 0) return false;
  }
  return true;
}

inline bool in_N(const Spray& s, const Point& y, const Point& z) {
  const Point p = concat(y, z);
  for (const auto& q : s.N_inequations) {
    if (q.eval<Rational>(s.tau.inputs, p) == 0) return false;
  }
  return true;
}

// tau at (y, z), falling back to alternative charts where the primary
// fraction is not defined. nullopt when no presentation applies.
inline std::optional<Point> eval_tau(const Spray& s, const Point& y, const Point& z) {
  const Point p = concat(y, z);
  if (s.tau.defined_at(p)) return s.tau.eval(p);
  for (const auto& chart : s.tau_charts) {
    bool guards_ok = true;
    for (const auto& g : chart.guards) {
      if (g.eval<Rational>(chart.map.inputs, p) == 0) {
        guards_ok = false;
        break;
      }
    }
    if (guards_ok && chart.map.defined_at(p)) return chart.map.eval(p);
  }
  return std::nullopt;
}

inline std::optional<Point> eval_sigma(const Spray& s, const Point& y, const Point& v) {
  const Point p = concat(y, v);
  if (!s.sigma.defined_at(p)) return std::nullopt;
  return s.sigma.eval(p);
}

// ---------------------------------------------------------------------------
// Axiom verification
// ---------------------------------------------------------------------------

struct SprayVerification {
  CheckOutcome axiom1;         // sigma(y, tau(y,z)) = z with (y, tau(y,z)) in M
  CheckOutcome axiom2;         // tau(y, y) = 0
  CheckOutcome sigma_at_zero;  // sigma(y, 0) = y
  CheckOutcome image_in_Y;     // generators of Y vanish on sigma(y, v)

  bool all_passed() const {
    return axiom1.passed && axiom2.passed && sigma_at_zero.passed && image_in_Y.passed;
  }
};

namespace detail {

inline Point zero_point(std::size_t n) { return Point(n, Rational(0)); }

// Fiber vector with |v_j| <= 1/(2n), so that sum v_j^2 < 1 strictly.
inline Point ball_fiber(SeededRng& rng, std::size_t n) {
  Point v;
  v.reserve(n);
  const std::int64_t m = static_cast<std::int64_t>(n);
  for (std::size_t j = 0; j < n; ++j) {
    v.push_back(make_rational(Integer(rng.next_int(-50, 50)), Integer(rng.next_int(100 * m, 200 * m))));
  }
  return v;
}

}  // namespace detail

// All four spray checks by exact evaluation at seeded samples. Throws
// sampling_exhausted when the in-domain budget runs out (inconclusive).
inline SprayVerification verify_spray(const Spray& s, std::size_t trials, std::uint64_t seed) {
  SprayVerification rep;
  rep.axiom1 = rep.axiom2 = rep.sigma_at_zero = rep.image_in_Y = CheckOutcome::pass();

  // axiom2 and sigma(y,0)=y on single samples of Y.
  {
    SeededRng rng(seed);
    std::size_t cursor = 0;
    for (std::size_t i = 0; i < trials; ++i) {
      const Point y = detail::next_point(s.Y, rng, &cursor);
      if (rep.axiom2.passed) {
        const auto t = eval_tau(s, y, y);
        if (!t) {
          rep.axiom2 = CheckOutcome::fail(y, "tau undefined on the diagonal");
        } else if (*t != detail::zero_point(s.n)) {
          rep.axiom2 = CheckOutcome::fail(y, "tau(y,y) != 0");
        }
      }
      if (rep.sigma_at_zero.passed) {
        const auto im = eval_sigma(s, y, detail::zero_point(s.n));
        if (!im) {
          rep.sigma_at_zero = CheckOutcome::fail(y, "sigma undefined at (y, 0)");
        } else if (*im != y) {
          rep.sigma_at_zero = CheckOutcome::fail(y, "sigma(y,0) != y");
        }
      }
      if (!rep.axiom2.passed && !rep.sigma_at_zero.passed) break;
    }
  }

  // axiom1 on pairs satisfying the N inequations.
  {
    SeededRng rng(seed + 1);
    std::size_t cursor = 0;
    std::size_t done = 0, attempts = 0;
    const std::size_t budget = trials * detail::kRetryFactor + detail::kRetryFactor;
    while (done < trials) {
      if (++attempts > budget) {
        throw sampling_exhausted("verify_spray: axiom-1 pair sampling budget exhausted");
      }
      const Point y = detail::next_point(s.Y, rng, &cursor);
      const Point z = detail::next_point(s.Y, rng, &cursor);
      if (!in_N(s, y, z)) continue;
      const auto t = eval_tau(s, y, z);
      if (!t) {
        rep.axiom1 = CheckOutcome::fail(concat(y, z), "tau undefined on an N pair");
        break;
      }
      if (!in_M(s, y, *t)) {
        rep.axiom1 = CheckOutcome::fail(concat(y, z), "(y, tau(y,z)) violates M inequations");
        break;
      }
      const auto im = eval_sigma(s, y, *t);
      if (!im) {
        rep.axiom1 = CheckOutcome::fail(concat(y, z), "sigma undefined at (y, tau(y,z))");
        break;
      }
      if (*im != z) {
        rep.axiom1 = CheckOutcome::fail(concat(y, z), "sigma(y, tau(y,z)) != z");
        break;
      }
      ++done;
    }
  }

  // Image of sigma stays on Y.
  {
    SeededRng rng(seed + 2);
    std::size_t cursor = 0;
    std::size_t done = 0, attempts = 0;
    const std::size_t budget = trials * detail::kRetryFactor + detail::kRetryFactor;
    while (done < trials && rep.image_in_Y.passed) {
      if (++attempts > budget) {
        throw sampling_exhausted("verify_spray: image sampling budget exhausted");
      }
      const Point y = detail::next_point(s.Y, rng, &cursor);
      Point v;
      v.reserve(s.n);
      for (std::size_t j = 0; j < s.n; ++j) v.push_back(rng.next_rational(100));
      if (!in_M(s, y, v)) continue;
      const auto im = eval_sigma(s, y, v);
      if (!im) {
        rep.image_in_Y = CheckOutcome::fail(concat(y, v), "sigma undefined inside M");
        break;
      }
      for (const auto& g : s.Y.generators) {
        if (g.eval<Rational>(s.Y.vars, *im) != 0) {
          rep.image_in_Y = CheckOutcome::fail(concat(y, v), "sigma image violates a generator");
          break;
        }
      }
      ++done;
    }
  }

  return rep;
}

// ---------------------------------------------------------------------------
// Retract-rational presentations
// ---------------------------------------------------------------------------

struct RetractPresentation {
  VarietyPresentation Y;
  std::size_t n = 0;                   // chart dimension
  std::vector<std::string> w_vars;     // coordinates of W in R^n
  std::vector<Poly> W_inequations;     // in w_vars
  RatMap i;  // Y.vars -> R^n
  RatMap r;  // w_vars -> ambient of Y
};

// r(i(y)) = y at sampled points of Y, and i(y) satisfies the W inequations.
inline CheckOutcome verify_retract(const RetractPresentation& p, std::size_t trials,
                                   std::uint64_t seed) {
  SeededRng rng(seed);
  std::size_t cursor = 0;
  for (std::size_t k = 0; k < trials; ++k) {
    const Point y = detail::next_point(p.Y, rng, &cursor);
    if (!p.i.defined_at(y)) return CheckOutcome::fail(y, "i undefined at sample");
    const Point w = p.i.eval(y);
    for (const auto& q : p.W_inequations) {
      if (q.eval<Rational>(p.w_vars, w) == 0) {
        return CheckOutcome::fail(y, "i(y) violates a W inequation");
      }
    }
    if (!p.r.defined_at(w)) return CheckOutcome::fail(y, "r undefined at i(y)");
    if (p.r.eval(w) != y) return CheckOutcome::fail(y, "r(i(y)) != y");
  }
  return CheckOutcome::pass();
}

// Spray from a retract presentation: sigma(y,v) = r(i(y)+v), tau = i(z)-i(y),
// N = Y x Y, M = preimage of W under (y,v) -> i(y)+v.
inline Spray spray_from_retract(const RetractPresentation& p, std::size_t verify_trials = 64,
                                std::uint64_t seed = 20240101) {
  const CheckOutcome ok = verify_retract(p, verify_trials, seed);
  if (!ok.passed) {
    throw construction_error("spray_from_retract: retract verification failed (" + ok.detail + ")",
                             ok.witness ? point_to_string(*ok.witness) : "");
  }
  const std::size_t m = p.Y.ambient_dim();
  const auto y_vars = var_block("y", m);
  const auto v_vars = var_block("v", p.n);
  const auto z_vars = var_block("z", m);
  const auto to_y = make_rename(p.Y.vars, y_vars);
  const auto to_z = make_rename(p.Y.vars, z_vars);
  const Reducer red_y = p.Y.reducer.renamed(to_y);
  const Reducer red_yz = red_y.merged(p.Y.reducer.renamed(to_z));

  // inner(y, v) = i(y) + v
  RatMap inner;
  inner.inputs = y_vars;
  inner.inputs.insert(inner.inputs.end(), v_vars.begin(), v_vars.end());
  const RatMap i_y = p.i.rename(to_y);
  for (std::size_t j = 0; j < p.n; ++j) {
    inner.components.push_back(i_y.components[j] + RatFun::var(v_vars[j]));
  }
  inner.domain_inequations = i_y.domain_inequations;
  for (const auto& f : i_y.components) push_inequation(inner.domain_inequations, f.den());

  RatMap r_w = p.r;
  r_w.domain_inequations = p.W_inequations;
  RatMap sigma = compose(r_w, inner, red_y);
  std::vector<Poly> M_ineqs = sigma.domain_inequations;

  const RatMap i_z = p.i.rename(to_z);
  RatMap tau;
  tau.inputs = y_vars;
  tau.inputs.insert(tau.inputs.end(), z_vars.begin(), z_vars.end());
  for (std::size_t j = 0; j < p.n; ++j) {
    tau.components.push_back((i_z.components[j] - i_y.components[j]).reduced(red_yz));
  }

  return make_spray(p.n, p.Y, std::move(sigma), std::move(tau), std::move(M_ineqs), {});
}

// Retract presentation extracted from a spray at a base point:
// i(z) = tau(y0, z), r(v) = sigma(y0, v), V = {z in Y : (y0, z) in N}.
inline RetractPresentation retract_from_spray(const Spray& s, const Point& basepoint) {
  if (!contains(s.Y, basepoint)) {
    throw construction_error("retract_from_spray: basepoint not on Y", point_to_string(basepoint));
  }
  std::map<std::string, RatFun> fix_y;
  for (std::size_t k = 0; k < s.y_vars.size(); ++k) fix_y[s.y_vars[k]] = RatFun(basepoint[k]);

  RetractPresentation p;
  p.n = s.n;
  p.w_vars = s.v_vars;

  // V = Y with the N inequations pinned at y = basepoint (translated back to
  // the ambient variable names), plus the denominators of i.
  p.Y = s.Y;
  const auto z_to_ambient = make_rename(s.z_vars, s.Y.vars);

  p.i.inputs = s.Y.vars;
  for (const auto& f : s.tau.components) {
    p.i.components.push_back(f.subst(fix_y).rename(z_to_ambient));
  }
  for (const auto& q : s.N_inequations) {
    const Poly pinned = RatFun::subst_poly_into(q, fix_y).num().rename(z_to_ambient);
    if (pinned.is_constant()) {
      if (pinned.is_zero()) throw construction_error("retract_from_spray: N vanishes identically at basepoint");
      continue;
    }
    push_inequation(p.Y.inequations, pinned);
    push_inequation(p.i.domain_inequations, pinned);
  }
  for (const auto& f : p.i.components) {
    if (!f.den().is_constant()) {
      push_inequation(p.Y.inequations, f.den());
      push_inequation(p.i.domain_inequations, f.den());
    }
  }

  p.r.inputs = p.w_vars;
  for (const auto& f : s.sigma.components) p.r.components.push_back(f.subst(fix_y));
  for (const auto& q : s.M_inequations) {
    const Poly pinned = RatFun::subst_poly_into(q, fix_y).num();
    if (pinned.is_constant()) {
      if (pinned.is_zero()) throw construction_error("retract_from_spray: M vanishes identically at basepoint");
      continue;
    }
    push_inequation(p.W_inequations, pinned);
  }
  for (const auto& f : p.r.components) push_inequation(p.W_inequations, f.den());
  p.r.domain_inequations = p.W_inequations;
  return p;
}

// ---------------------------------------------------------------------------
// Ball rescaling and the global-spray export
// ---------------------------------------------------------------------------

// sigma'(y,v) = sigma(y, f(y) v), tau' = tau / f. The caller asserts that
// f stays below the boundary distance of M; the toolkit validates positivity
// of f and membership of the sampled unit ball in M'.
inline Spray rescale_to_unit_ball(const Spray& s, const RatFun& f, std::size_t trials = 128,
                                  std::uint64_t seed = 20240202) {
  // Positivity of f (expressed in y-block names) at samples.
  {
    SeededRng rng(seed);
    std::size_t cursor = 0;
    for (std::size_t k = 0; k < trials; ++k) {
      const Point y = detail::next_point(s.Y, rng, &cursor);
      Rational value;
      try {
        value = f.eval<Rational>(s.y_vars, y);
      } catch (const eval_domain_error&) {
        throw construction_error("rescale_to_unit_ball: f undefined at sample", point_to_string(y));
      }
      if (value <= 0) {
        throw construction_error("rescale_to_unit_ball: f not positive at sample", point_to_string(y));
      }
    }
  }

  const Reducer red_y = s.y_reducer();
  // inner(y, v) = (y, f(y) v)
  RatMap inner;
  inner.inputs = s.sigma.inputs;
  for (const auto& yv : s.y_vars) inner.components.push_back(RatFun::var(yv));
  for (const auto& vv : s.v_vars) inner.components.push_back(f * RatFun::var(vv));
  if (!f.den().is_constant()) push_inequation(inner.domain_inequations, f.den());

  RatMap sigma2 = compose(s.sigma, inner, red_y);
  std::vector<Poly> M_ineqs = sigma2.domain_inequations;
  RatMap tau2 = s.tau;
  for (auto& c : tau2.components) c = c / f;
  // tau' keeps N; division by f only adds the (positive) numerator of f to
  // the denominators.

  Spray out = make_spray(s.n, s.Y, std::move(sigma2), std::move(tau2), std::move(M_ineqs),
                         s.N_inequations, s.tau_charts);
  // tau charts scale the same way.
  for (auto& chart : out.tau_charts) {
    for (auto& c : chart.map.components) c = c / f;
  }

  // Sampled unit-ball membership in M'.
  {
    SeededRng rng(seed + 1);
    std::size_t cursor = 0;
    for (std::size_t k = 0; k < trials; ++k) {
      const Point y = detail::next_point(s.Y, rng, &cursor);
      const Point v = detail::ball_fiber(rng, out.n);
      if (!in_M(out, y, v) || !eval_sigma(out, y, v)) {
        throw construction_error("rescale_to_unit_ball: sampled ball point escapes M'",
                                 point_to_string(concat(y, v)));
      }
    }
  }
  return out;
}

// The dominating-spray export s(y, v) = sigma(y, v / (1 + ||v||^2)), total in
// v once the unit ball sits inside M.
inline RatMap to_global_spray(const Spray& s) {
  Poly one_plus_norm = Poly::constant(1);
  for (const auto& vv : s.v_vars) one_plus_norm += Poly::var(vv, 2);

  RatMap inner;
  inner.inputs = s.sigma.inputs;
  for (const auto& yv : s.y_vars) inner.components.push_back(RatFun::var(yv));
  for (const auto& vv : s.v_vars) {
    inner.components.push_back(RatFun(Poly::var(vv), one_plus_norm));
  }
  return compose(s.sigma, inner, s.y_reducer());
}

// ---------------------------------------------------------------------------
// Product sprays
// ---------------------------------------------------------------------------

inline Spray product_spray(const Spray& s1, const Spray& s2) {
  const VarietyPresentation Y = product_presentation(s1.Y, s2.Y, "_1", "_2");
  const std::size_t m1 = s1.ambient(), m2 = s2.ambient();
  const std::size_t n = s1.n + s2.n;
  const auto y_vars = var_block("y", m1 + m2);
  const auto v_vars = var_block("v", n);
  const auto z_vars = var_block("z", m1 + m2);

  auto shift = [&](const Spray& s, std::size_t y_off, std::size_t v_off) {
    std::map<std::string, std::string> ren;
    for (std::size_t k = 0; k < s.ambient(); ++k) {
      ren[s.y_vars[k]] = y_vars[y_off + k];
      ren[s.z_vars[k]] = z_vars[y_off + k];
    }
    for (std::size_t j = 0; j < s.n; ++j) ren[s.v_vars[j]] = v_vars[v_off + j];
    return ren;
  };
  const auto r1 = shift(s1, 0, 0);
  const auto r2 = shift(s2, m1, s1.n);

  RatMap sigma;
  sigma.inputs = y_vars;
  sigma.inputs.insert(sigma.inputs.end(), v_vars.begin(), v_vars.end());
  RatMap tau;
  tau.inputs = y_vars;
  tau.inputs.insert(tau.inputs.end(), z_vars.begin(), z_vars.end());

  std::vector<Poly> M_ineqs, N_ineqs;
  for (const auto& pr : {std::make_pair(&s1, &r1), std::make_pair(&s2, &r2)}) {
    const Spray& s = *pr.first;
    const auto& ren = *pr.second;
    for (const auto& c : s.sigma.components) sigma.components.push_back(c.rename(ren));
    for (const auto& c : s.tau.components) tau.components.push_back(c.rename(ren));
    for (const auto& q : s.M_inequations) push_inequation(M_ineqs, q.rename(ren));
    for (const auto& q : s.N_inequations) push_inequation(N_ineqs, q.rename(ren));
  }
  return make_spray(n, Y, std::move(sigma), std::move(tau), std::move(M_ineqs), std::move(N_ineqs));
}

}  // namespace spraykit

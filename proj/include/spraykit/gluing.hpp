#pragma once

// Gluing strong dominating sprays over a two-chart cover Y = Y1 u Y2.
//
// The construction follows four steps: recenter both sprays so that
// Y x {0} lies in their M-domains, compose the sigmas, build the partition
// function theta and the bridge map beta, then assemble tau. tau genuinely
// needs two chart presentations (the direct formula and the rewritten
// "g-form"); the glued spray stores the direct one and carries the other as
// a fallback chart, and the two are checked to agree on sampled overlap
// points.

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "spraykit/spray.hpp"

namespace spraykit {

// Product of the component denominators, with no gcd reduction. A map with
// the same denominator d in both components yields d^2.
inline Poly common_denominator(const RatMap& m) {
  Poly q = Poly::constant(1);
  for (const auto& f : m.components) q = q * f.den();
  return q;
}

// cof[k] = product of den_j over j != k, so den_k * cof_k = common denominator.
inline std::vector<Poly> denominator_cofactors(const RatMap& m) {
  const std::size_t n = m.components.size();
  std::vector<Poly> prefix(n + 1, Poly::constant(1)), suffix(n + 1, Poly::constant(1));
  for (std::size_t k = 0; k < n; ++k) prefix[k + 1] = prefix[k] * m.components[k].den();
  for (std::size_t k = n; k > 0; --k) suffix[k - 1] = suffix[k] * m.components[k - 1].den();
  std::vector<Poly> cof(n);
  for (std::size_t k = 0; k < n; ++k) cof[k] = prefix[k] * suffix[k + 1];
  return cof;
}

namespace detail {

// Validates that a rational function of the base variables vanishes at the
// supplied exact sample points (it is dropped from a rewritten fraction).
using VanishValidator = std::function<void(const RatFun&, const std::string&)>;

inline VanishValidator strict_validator() {
  return [](const RatFun& r, const std::string& what) {
    if (!r.num().is_zero()) {
      throw construction_error("regular_extension_rewrite: " + what +
                               " does not vanish syntactically and no extension was supplied");
    }
  };
}

inline VanishValidator sampled_validator(const std::vector<std::string>& names,
                                         const std::vector<Point>& samples) {
  return [names, samples](const RatFun& r, const std::string& what) {
    for (const auto& p : samples) {
      Rational value;
      try {
        value = r.eval<Rational>(names, p);
      } catch (const eval_domain_error&) {
        continue;  // sample outside the fraction's domain
      }
      if (value != 0) {
        throw construction_error("gluing: dropped term (" + what + ") does not vanish on the variety",
                                 point_to_string(p));
      }
    }
  };
}

// Core of the regular-extension rewrite. Given P, Q regular near the
// v = 0 locus with Q f = P, and q0 congruent to Q|_{v=0} on the base,
// produces a fraction equal to f(u, q0 v) on the variety whose denominator
// does not vanish at v = 0:
//
//   g = F + sum_i v_i P_i(u, q0 v) / (1 + sum_i v_i Q_i(u, q0 v)).
//
// The v-free parts of P - Q F and Q - q0 vanish on the variety; they are
// dropped after validation.
inline RatFun rewrite_at_zero(const RatFun& P_in, const RatFun& Q, const Poly& q0,
                              const std::vector<std::string>& v_vars,
                              const std::optional<RatFun>& F, const VanishValidator& validate,
                              const Reducer& red = {}) {
  RatFun P = P_in;
  if (F) P = (P - Q * (*F)).reduced(red);

  const auto split = [&](const RatFun& r, const std::string& what) {
    const Poly n0 = r.num().at_zero(v_vars);
    validate(RatFun(n0, r.den().at_zero(v_vars)), what);
    return v_decompose(red.reduce(r.num() - n0), v_vars);
  };

  const std::vector<Poly> p_parts = split(P, "P at v=0");
  // Q - q0 as a fraction over den(Q): numerator num(Q) - q0 den(Q).
  const std::vector<Poly> q_parts = [&] {
    const Poly shifted = red.reduce(Q.num() - q0 * Q.den());
    const Poly n0 = shifted.at_zero(v_vars);
    validate(RatFun(n0, Q.den().at_zero(v_vars)), "Q - q0 at v=0");
    return v_decompose(red.reduce(shifted - n0), v_vars);
  }();

  std::map<std::string, Poly> scale;
  for (const auto& v : v_vars) scale[v] = q0 * Poly::var(v);
  const auto substv = [&](const Poly& p) { return p.subst(scale, &red); };

  Poly num_sum, den_sum;
  for (std::size_t j = 0; j < v_vars.size(); ++j) {
    if (!p_parts[j].is_zero()) num_sum += Poly::var(v_vars[j]) * substv(p_parts[j]);
    if (!q_parts[j].is_zero()) den_sum += Poly::var(v_vars[j]) * substv(q_parts[j]);
  }
  const Poly dP = substv(P.den());
  const Poly dQ = substv(Q.den());
  // g - F = (num_sum / dP) / (1 + den_sum / dQ) = num_sum dQ / (dP (dQ + den_sum)).
  RatFun g(red.reduce(num_sum * dQ), red.reduce(dP * (dQ + den_sum)));
  if (F) g = (g + *F).reduced(red);
  return g;
}

}  // namespace detail

// Rewrites f(u, Q(u,0) v) as a fraction regular near v = 0, for Q a
// polynomial with Q f = P (a polynomial identity). P is num(f) when
// den(f) = Q; otherwise it must be supplied. Everything here is checked
// syntactically; the sampled variant used by the gluing lives inside
// glue_sprays.
inline RatFun regular_extension_rewrite(const RatFun& f, const Poly& Q,
                                        const std::vector<std::string>& v_vars,
                                        std::optional<RatFun> F = std::nullopt,
                                        std::optional<Poly> P_explicit = std::nullopt) {
  Poly P;
  if (P_explicit) {
    P = *P_explicit;
  } else if (f.den() == Q) {
    P = f.num();
  } else {
    const RatFun prod = f * RatFun(Q);
    if (!prod.is_polynomial()) {
      throw construction_error("regular_extension_rewrite: Q f = P fails as a polynomial identity");
    }
    P = prod.as_polynomial();
  }
  if (!(f.num() * Q == P * f.den())) {
    throw construction_error("regular_extension_rewrite: Q f = P fails as identity");
  }
  const Poly q0 = Q.at_zero(v_vars);
  if (q0.is_zero()) throw construction_error("regular_extension_rewrite: Q vanishes at v = 0");
  return detail::rewrite_at_zero(RatFun(P), RatFun(Q), q0, v_vars, F, detail::strict_validator());
}

// ---------------------------------------------------------------------------
// The partition function theta
// ---------------------------------------------------------------------------

// theta = Q1^2 / (Q1^2 + Q2diag^2): Q1 divides theta and Q2diag divides
// theta - 1 with cofactors regular wherever the sum of squares is nonzero,
// which the no-common-zero premise guarantees on Ntilde. The premise is
// validated at sampled points of v satisfying the Ntilde inequations.
inline RatFun find_partition_function(const Poly& Q1, const Poly& Q2diag,
                                      const std::vector<Poly>& ntilde_inequations,
                                      const VarietyPresentation& v, std::size_t trials,
                                      std::uint64_t seed) {
  SeededRng rng(seed);
  std::size_t cursor = 0;
  std::size_t done = 0, attempts = 0;
  const std::size_t budget = trials * detail::kRetryFactor + detail::kRetryFactor;
  while (done < trials) {
    if (++attempts > budget) {
      throw sampling_exhausted("find_partition_function: Ntilde sampling budget exhausted");
    }
    const Point p = detail::next_point(v, rng, &cursor);
    bool in_ntilde = true;
    for (const auto& q : ntilde_inequations) {
      if (q.eval<Rational>(v.vars, p) == 0) {
        in_ntilde = false;
        break;
      }
    }
    if (!in_ntilde) continue;
    if (Q1.eval<Rational>(v.vars, p) == 0 && Q2diag.eval<Rational>(v.vars, p) == 0) {
      throw construction_error("find_partition_function: Q1 and Q2(z,z) share a zero inside Ntilde",
                               point_to_string(p));
    }
    ++done;
  }
  return RatFun(Q1.pow(2), Q1.pow(2) + Q2diag.pow(2));
}

// ---------------------------------------------------------------------------
// Gluing
// ---------------------------------------------------------------------------

struct GluingCertificate {
  Poly Q1;       // denominator cleared from tau_1 (after recentering)
  Poly Q2;       // denominator cleared from tau_2
  Poly Q2diag;   // Q2(z, z)
  RatFun theta;  // partition function on Ntilde
  RatMap beta;   // theta * tau_1, regular across chart-1 boundaries
  std::vector<Poly> Ntilde_inequations;  // sum-of-squares description of N1 u (Y x Y2)
  Poly recenter_q1;  // Q(y,0) used to recenter spray 1
  Poly recenter_q2;
};

struct GluedSpray {
  Spray spray;
  GluingCertificate certificate;
};

struct GlueOptions {
  std::size_t validation_trials = 48;  // sampled identity checks during construction
  std::size_t verify_trials = 48;      // axiom checks on inputs and output
  std::uint64_t seed = 20240707;
  bool verify_inputs = true;
  bool verify_output = true;
};

namespace detail {

// Y x Y presentation over explicit variable blocks.
inline VarietyPresentation pair_presentation(const VarietyPresentation& Y,
                                             const std::vector<std::string>& y_vars,
                                             const std::vector<std::string>& z_vars) {
  VarietyPresentation left = Y, right = Y;
  const auto to_y = make_rename(Y.vars, y_vars);
  const auto to_z = make_rename(Y.vars, z_vars);
  auto apply = [](VarietyPresentation& v, const std::map<std::string, std::string>& ren,
                  const std::vector<std::string>& names) {
    v.vars = names;
    for (auto& g : v.generators) g = g.rename(ren);
    for (auto& q : v.inequations) q = q.rename(ren);
    v.reducer = v.reducer.renamed(ren);
  };
  apply(left, to_y, y_vars);
  apply(right, to_z, z_vars);

  VarietyPresentation out;
  out.vars = y_vars;
  out.vars.insert(out.vars.end(), z_vars.begin(), z_vars.end());
  out.generators = left.generators;
  out.generators.insert(out.generators.end(), right.generators.begin(), right.generators.end());
  out.inequations = left.inequations;
  out.inequations.insert(out.inequations.end(), right.inequations.begin(), right.inequations.end());
  out.reducer = left.reducer.merged(right.reducer);
  out.sampler.kind = SamplerKind::product;
  out.sampler.factor1 = std::make_shared<VarietyPresentation>(std::move(left));
  out.sampler.factor2 = std::make_shared<VarietyPresentation>(std::move(right));
  return out;
}

inline Poly product_of(const std::vector<Poly>& polys) {
  Poly p = Poly::constant(1);
  for (const auto& q : polys) p = p * q;
  return p;
}

struct RecenteredSpray {
  Spray spray;
  Poly Q;   // common denominator of the original sigma
  Poly q0;  // Q at v = 0, in the y block
};

// Step 1: replace sigma(y,v) by sigma(y, Q(y,0) v) rewritten through the
// regular-extension lemma so that Y x {0} lands inside the new M, and divide
// tau by Q(y,0) accordingly. The regular extension of sigma(.,0) is the
// ambient coordinate map y itself.
inline RecenteredSpray recenter_spray(const Spray& s, const std::vector<Point>& y_samples,
                                      const GlueOptions& opt) {
  RecenteredSpray out;
  const Reducer red_y = s.Y.reducer.renamed(make_rename(s.Y.vars, s.y_vars));
  const Reducer red_yz = s.yz_reducer();

  out.Q = red_y.reduce(common_denominator(s.sigma));
  out.q0 = out.Q.at_zero(s.v_vars);
  if (out.q0.is_zero()) {
    throw construction_error("recenter_spray: common denominator vanishes identically at v = 0");
  }

  const auto validator = sampled_validator(s.y_vars, y_samples);
  const std::vector<Poly> cof = denominator_cofactors(s.sigma);

  RatMap sigma2;
  sigma2.inputs = s.sigma.inputs;
  for (std::size_t k = 0; k < s.sigma.components.size(); ++k) {
    const Poly P = red_y.reduce(s.sigma.components[k].num() * cof[k]);
    const RatFun F = RatFun(Poly::var(s.y_vars[k]));
    RatFun g = rewrite_at_zero(RatFun(P), RatFun(out.Q), out.q0, s.v_vars, F, validator, red_y);
    sigma2.components.push_back(std::move(g));
    // The rewritten denominator must be exactly 1 at v = 0.
    if (!(sigma2.components.back().den().at_zero(s.v_vars).is_constant())) {
      throw construction_error("recenter_spray: rewritten denominator still vanishes at v = 0");
    }
  }

  RatMap tau2;
  tau2.inputs = s.tau.inputs;
  for (const auto& c : s.tau.components) {
    tau2.components.push_back(RatFun(c.num(), red_yz.reduce(c.den() * out.q0)));
  }

  std::vector<Poly> M_ineqs;  // the denominator domain of the rewritten sigma
  for (const auto& f : sigma2.components) push_inequation(M_ineqs, f.den());
  out.spray = make_spray(s.n, s.Y, std::move(sigma2), std::move(tau2), std::move(M_ineqs),
                         s.N_inequations);

  // Internal consistency: the recentered spray still satisfies axiom 1 at
  // sampled pairs.
  if (opt.validation_trials > 0) {
    const auto rep = verify_spray(out.spray, opt.validation_trials / 2 + 1, opt.seed + 13);
    if (!rep.all_passed()) {
      throw construction_error("recenter_spray: recentered spray fails verification");
    }
  }
  return out;
}

}  // namespace detail

// Glues sprays s1 over Y1 and s2 over Y2 into a spray over Y = Y1 u Y2.
inline GluedSpray glue_sprays(const VarietyPresentation& Y, const VarietyPresentation& Y1,
                              const VarietyPresentation& Y2, const Spray& s1, const Spray& s2,
                              const GlueOptions& opt = {}) {
  const std::size_t m = Y.ambient_dim();
  const std::size_t n1 = s1.n, n2 = s2.n;
  if (s1.ambient() != m || s2.ambient() != m) {
    throw arity_error("glue_sprays: ambient dimensions disagree");
  }

  // Cover check: the chart inequation products have no common zero on Y
  // samples (equivalently, their sum of squares stays nonzero).
  const Poly cov1 = detail::product_of(Y1.inequations);
  const Poly cov2 = detail::product_of(Y2.inequations);
  const std::vector<Point> Y_samples = sample_points(Y, opt.validation_trials, opt.seed);
  for (const auto& p : Y_samples) {
    if (cov1.eval<Rational>(Y.vars, p) == 0 && cov2.eval<Rational>(Y.vars, p) == 0) {
      throw construction_error("glue_sprays: Y1 u Y2 misses a sampled point of Y",
                               point_to_string(p));
    }
  }

  if (opt.verify_inputs) {
    if (!verify_spray(s1, opt.verify_trials, opt.seed + 1).all_passed()) {
      throw construction_error("glue_sprays: input spray over Y1 fails verification");
    }
    if (!verify_spray(s2, opt.verify_trials, opt.seed + 2).all_passed()) {
      throw construction_error("glue_sprays: input spray over Y2 fails verification");
    }
  }

  const auto y_vars = var_block("y", m);
  const auto z_vars = var_block("z", m);
  const auto v_all = var_block("v", n1 + n2);
  const Reducer red_y = Y.reducer.renamed(make_rename(Y.vars, y_vars));
  const Reducer red_yz = red_y.merged(Y.reducer.renamed(make_rename(Y.vars, z_vars)));

  // Step 1: recenter both sprays.
  const detail::RecenteredSpray r1 = detail::recenter_spray(s1, Y_samples, opt);
  const detail::RecenteredSpray r2 = detail::recenter_spray(s2, Y_samples, opt);
  const Spray& t1 = r1.spray;
  const Spray& t2 = r2.spray;

  // Step 2: sigma(y, v, w) = sigma_2(sigma_1(y, v), w) with n = n1 + n2.
  RatMap inner_sigma;
  inner_sigma.inputs = y_vars;
  inner_sigma.inputs.insert(inner_sigma.inputs.end(), v_all.begin(), v_all.end());
  for (std::size_t k = 0; k < m; ++k) inner_sigma.components.push_back(t1.sigma.components[k]);
  for (std::size_t j = 0; j < n2; ++j) {
    inner_sigma.components.push_back(RatFun::var(v_all[n1 + j]));
  }
  inner_sigma.domain_inequations = t1.M_inequations;
  RatMap sigma = compose(t2.sigma, inner_sigma, red_y);
  std::vector<Poly> M_ineqs = sigma.domain_inequations;

  // Step 3: denominators of the taus, theta and beta.
  GluingCertificate cert;
  cert.recenter_q1 = r1.q0;
  cert.recenter_q2 = r2.q0;
  cert.Q1 = red_yz.reduce(common_denominator(t1.tau));
  cert.Q2 = red_yz.reduce(common_denominator(t2.tau));
  const auto y_to_z = make_rename(y_vars, z_vars);
  cert.Q2diag = red_yz.reduce(cert.Q2.rename(y_to_z));

  // N1 and Y x Y2 inside Y x Y, and the sum-of-squares form of their union.
  std::vector<Poly> N1_guards = t1.N_inequations;
  for (const auto& q : Y1.inequations) {
    push_inequation(N1_guards, q.rename(make_rename(Y.vars, y_vars)));
    push_inequation(N1_guards, q.rename(make_rename(Y.vars, z_vars)));
  }
  std::vector<Poly> Y2z_guards;
  for (const auto& q : Y2.inequations) {
    push_inequation(Y2z_guards, q.rename(make_rename(Y.vars, z_vars)));
  }
  cert.Ntilde_inequations = {red_yz.reduce(detail::product_of(N1_guards).pow(2) +
                                           detail::product_of(Y2z_guards).pow(2))};

  const VarietyPresentation YxY = detail::pair_presentation(Y, y_vars, z_vars);
  cert.theta = find_partition_function(cert.Q1, cert.Q2diag, cert.Ntilde_inequations, YxY,
                                       opt.validation_trials, opt.seed + 3);
  // The shared beta/theta denominator, reduced on the variety. Zero sets
  // agree with theta's own denominator.
  const Poly S = red_yz.reduce(cert.Q1.pow(2) + cert.Q2diag.pow(2));

  // beta = theta * tau_1 assembled with the single denominator S:
  // component k is Q1 * P1_k / S with P1_k = num_k * cof_k.
  const std::vector<Poly> cof1 = denominator_cofactors(t1.tau);
  cert.beta.inputs = t1.tau.inputs;
  for (std::size_t j = 0; j < n1; ++j) {
    const Poly P1j = red_yz.reduce(t1.tau.components[j].num() * cof1[j]);
    cert.beta.components.emplace_back(red_yz.reduce(cert.Q1 * P1j), S);
  }
  cert.beta.domain_inequations = {S};

  const std::vector<Point> pair_samples = sample_points(YxY, opt.validation_trials, opt.seed + 4);
  // beta vanishes on the diagonal.
  for (const auto& p : Y_samples) {
    Point yy = concat(p, p);
    for (const auto& c : cert.beta.components) {
      if (c.eval<Rational>(cert.beta.inputs, yy) != 0) {
        throw construction_error("glue_sprays: beta does not vanish on the diagonal",
                                 point_to_string(p));
      }
    }
  }

  // Step 4, direct chart: tau(y,z) = (beta, tau_2(sigma_1(y, beta), z)).
  RatMap tau_B;
  {
    RatMap inner;  // (y, z) -> (y, beta(y, z))
    inner.inputs = cert.beta.inputs;
    for (const auto& yv : y_vars) inner.components.push_back(RatFun::var(yv));
    for (const auto& c : cert.beta.components) inner.components.push_back(c);
    inner.domain_inequations = {S};
    const RatMap u_map = compose(t1.sigma, inner, red_yz);  // sigma_1(y, beta)

    RatMap uz;  // (y, z) -> (u, z)
    uz.inputs = u_map.inputs;
    uz.components = u_map.components;
    uz.domain_inequations = u_map.domain_inequations;
    for (const auto& zv : z_vars) uz.components.push_back(RatFun::var(zv));

    const RatMap second = compose(t2.tau, uz, red_yz);
    tau_B.inputs = cert.beta.inputs;
    tau_B.components = cert.beta.components;
    tau_B.components.insert(tau_B.components.end(), second.components.begin(),
                            second.components.end());
  }

  // Step 4, g-form chart near the chart-1 diagonal:
  //   h(y,z,v) = tau_2(sigma_1(y, v + tau_1(y,z)), z),
  //   g(y,z,v) = h(y,z, Q2(z,z) v) rewritten regular near v = 0,
  //   second block = g(y, z, ((theta - 1)/Q2(z,z)) tau_1(y,z)).
  RatMap tau_A;
  {
    const auto h_vars = var_block("v", n1);
    std::vector<std::string> yzv = tau_B.inputs;
    yzv.insert(yzv.end(), h_vars.begin(), h_vars.end());

    RatMap shift;  // (y, z, v) -> (y, v + tau_1(y,z))
    shift.inputs = yzv;
    for (const auto& yv : y_vars) shift.components.push_back(RatFun::var(yv));
    for (std::size_t j = 0; j < n1; ++j) {
      shift.components.push_back(RatFun::var(h_vars[j]) + t1.tau.components[j]);
    }
    const RatMap u_shift = compose(t1.sigma, shift, red_yz);  // sigma_1(y, v + tau_1)

    std::map<std::string, RatFun> into_u;
    for (std::size_t k = 0; k < m; ++k) into_u[y_vars[k]] = u_shift.components[k];
    // z variables substitute for themselves.

    const auto validator = detail::sampled_validator(tau_B.inputs, [&] {
      std::vector<Point> filtered;
      for (const auto& p : pair_samples) {
        bool ok = true;
        for (const auto& g : N1_guards) {
          if (g.eval<Rational>(tau_B.inputs, p) == 0) {
            ok = false;
            break;
          }
        }
        if (ok) filtered.push_back(p);
      }
      return filtered;
    }());

    // Q2 lives in (y, z); substituting u = sigma_1(y, v + tau_1) for its
    // y block gives Q2(sigma_1(y, v + tau_1), z), the denominator-clearing
    // function of h.
    const std::vector<Poly> cof2 = denominator_cofactors(t2.tau);
    const RatFun Q_h = RatFun::subst_poly_into(cert.Q2, into_u, &red_yz);

    RatMap g_map;
    g_map.inputs = yzv;
    for (std::size_t j = 0; j < n2; ++j) {
      const Poly P2j = red_yz.reduce(t2.tau.components[j].num() * cof2[j]);
      const RatFun Ph = RatFun::subst_poly_into(P2j, into_u, &red_yz);
      g_map.components.push_back(detail::rewrite_at_zero(Ph, Q_h, cert.Q2diag, h_vars,
                                                         std::nullopt, validator, red_yz));
    }

    // w = ((theta - 1)/Q2diag) tau_1 = -(Q2diag / S) tau_1, with the
    // denominator-free assembly -(Q2diag Q1 P1_j) / (S Q1) per component.
    std::map<std::string, RatFun> w_sub;
    for (std::size_t j = 0; j < n1; ++j) {
      const RatFun w_j =
          (RatFun(-cert.Q2diag) * t1.tau.components[j] / RatFun(S)).reduced(red_yz);
      w_sub[h_vars[j]] = w_j;
    }
    tau_A.inputs = tau_B.inputs;
    tau_A.components = cert.beta.components;
    for (const auto& g : g_map.components) {
      tau_A.components.push_back(g.subst(w_sub, &red_yz));
    }
  }

  // The two chart presentations agree on sampled overlap points.
  for (const auto& p : pair_samples) {
    if (!tau_A.defined_at(p) || !tau_B.defined_at(p)) continue;
    if (tau_A.eval<Rational>(p) != tau_B.eval<Rational>(p)) {
      throw construction_error("glue_sprays: tau chart presentations disagree at an overlap sample",
                               point_to_string(p));
    }
  }

  TauChart chartA;
  chartA.guards = N1_guards;
  push_inequation(chartA.guards, S);
  chartA.map = tau_A;
  chartA.map.domain_inequations = {S};

  Spray glued = make_spray(n1 + n2, Y, std::move(sigma), std::move(tau_B), std::move(M_ineqs), {S},
                           {std::move(chartA)});

  if (opt.verify_output) {
    const auto rep = verify_spray(glued, opt.verify_trials, opt.seed + 5);
    auto explain = [](const char* name, const CheckOutcome& c) {
      return std::string(name) + ": " + c.detail +
             (c.witness ? " at " + point_to_string(*c.witness) : "");
    };
    if (!rep.axiom1.passed) throw construction_error("glue_sprays: " + explain("axiom1", rep.axiom1));
    if (!rep.axiom2.passed) throw construction_error("glue_sprays: " + explain("axiom2", rep.axiom2));
    if (!rep.sigma_at_zero.passed) {
      throw construction_error("glue_sprays: " + explain("sigma_at_zero", rep.sigma_at_zero));
    }
    if (!rep.image_in_Y.passed) {
      throw construction_error("glue_sprays: " + explain("image_in_Y", rep.image_in_Y));
    }
  }
  return {std::move(glued), std::move(cert)};
}

// Left fold of binary gluing over an ordered chart list. Chart order is
// user-visible: it changes the (behaviorally equivalent) output formulas.
inline GluedSpray glue_cover(const VarietyPresentation& Y,
                             const std::vector<std::pair<VarietyPresentation, Spray>>& charts,
                             const GlueOptions& opt = {}) {
  if (charts.empty()) throw arity_error("glue_cover: empty chart list");
  if (charts.size() == 1) {
    return {charts.front().second, {}};
  }
  VarietyPresentation acc_domain = charts.front().first;
  Spray acc = charts.front().second;
  GluingCertificate last_cert;
  for (std::size_t k = 1; k < charts.size(); ++k) {
    const bool last = (k + 1 == charts.size());
    // Union-so-far: on real points, the complement of the common zeros of
    // the chart inequation products.
    VarietyPresentation next_domain = Y;
    if (!last) {
      const Poly a = detail::product_of(acc_domain.inequations);
      const Poly b = detail::product_of(charts[k].first.inequations);
      next_domain.inequations.push_back(a.pow(2) + b.pow(2));
    }
    GluedSpray g = glue_sprays(next_domain, acc_domain, charts[k].first, acc, charts[k].second, opt);
    acc = std::move(g.spray);
    last_cert = std::move(g.certificate);
    acc_domain = std::move(next_domain);
  }
  return {std::move(acc), std::move(last_cert)};
}

}  // namespace spraykit

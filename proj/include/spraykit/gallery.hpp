#pragma once

// Worked fixtures: explicit sphere and circle-group sprays, the two-chart
// stereographic cover of the circle, and the disconnected cubic surface with
// its third-intersection map.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "spraykit/spray.hpp"

namespace spraykit {

// ---------------------------------------------------------------------------
// Spheres
// ---------------------------------------------------------------------------

// S^dim in R^{dim+1} with the inverse-stereographic sampler
//   x1 = (1 - |t|^2) / (1 + |t|^2),  x_{j+1} = 2 t_j / (1 + |t|^2).
inline VarietyPresentation sphere_presentation(std::size_t dim) {
  if (dim < 1) throw std::invalid_argument("sphere dimension must be >= 1");
  const std::size_t m = dim + 1;
  VarietyPresentation Y;
  Y.vars = var_block("x", m);
  Poly norm2;
  for (const auto& xv : Y.vars) norm2 += Poly::var(xv, 2);
  Y.generators.push_back(norm2 - Rational(1));

  Poly rest;  // x_m^2 = 1 - (x_1^2 + ... + x_{m-1}^2)
  for (std::size_t i = 0; i + 1 < m; ++i) rest += Poly::var(Y.vars[i], 2);
  Y.reducer = Reducer({{Y.vars[m - 1], Rational(1) - rest}});

  RatMap param;
  param.inputs = var_block("t", dim);
  Poly tnorm;
  for (const auto& tv : param.inputs) tnorm += Poly::var(tv, 2);
  const Poly den = tnorm + Rational(1);
  param.components.push_back(RatFun(Rational(1) - tnorm, den));
  for (const auto& tv : param.inputs) {
    param.components.push_back(RatFun(Rational(2) * Poly::var(tv), den));
  }
  Y.sampler.kind = SamplerKind::parametrized;
  Y.sampler.parametrization = std::move(param);
  return Y;
}

// The explicit spray over S^dim: tau(y,z) = z - y and sigma(y,v) the second
// intersection of the sphere with the line through -y and y + v.
inline Spray sphere_spray(std::size_t dim) {
  VarietyPresentation Y = sphere_presentation(dim);
  const std::size_t m = dim + 1;
  const auto y_vars = var_block("y", m);
  const auto v_vars = var_block("v", m);
  const auto z_vars = var_block("z", m);

  Poly dot_2y_w;   // <2y, v + 2y>
  Poly norm_w;     // ||v + 2y||^2
  Poly n_ineq;     // ||z + y||^2
  for (std::size_t k = 0; k < m; ++k) {
    const Poly yk = Poly::var(y_vars[k]);
    const Poly vk = Poly::var(v_vars[k]);
    const Poly zk = Poly::var(z_vars[k]);
    dot_2y_w += Rational(2) * yk * (vk + Rational(2) * yk);
    norm_w += (vk + Rational(2) * yk).pow(2);
    n_ineq += (zk + yk).pow(2);
  }

  RatMap sigma;
  sigma.inputs = y_vars;
  sigma.inputs.insert(sigma.inputs.end(), v_vars.begin(), v_vars.end());
  for (std::size_t k = 0; k < m; ++k) {
    const Poly yk = Poly::var(y_vars[k]);
    const Poly wk = Poly::var(v_vars[k]) + Rational(2) * yk;
    sigma.components.emplace_back(-yk * norm_w + dot_2y_w * wk, norm_w);
  }

  RatMap tau;
  tau.inputs = y_vars;
  tau.inputs.insert(tau.inputs.end(), z_vars.begin(), z_vars.end());
  for (std::size_t k = 0; k < m; ++k) {
    tau.components.emplace_back(Poly::var(z_vars[k]) - Poly::var(y_vars[k]));
  }

  return make_spray(m, std::move(Y), std::move(sigma), std::move(tau), {norm_w}, {n_ineq});
}

// ---------------------------------------------------------------------------
// The circle as a rational group
// ---------------------------------------------------------------------------

// S^1 with complex multiplication; chart phi(x1,x2) = x2/(1+x1) centered at
// the neutral element (1,0): sigma(a,v) = a * phi^{-1}(v), tau(a,b) =
// phi(a^{-1} b).
inline Spray circle_group_spray() {
  VarietyPresentation Y = sphere_presentation(1);
  const auto y_vars = var_block("y", 2);
  const auto v = Poly::var("v1");
  const auto z_vars = var_block("z", 2);

  const Poly y1 = Poly::var(y_vars[0]), y2 = Poly::var(y_vars[1]);
  const Poly z1 = Poly::var(z_vars[0]), z2 = Poly::var(z_vars[1]);

  const Poly den_v = v.pow(2) + Rational(1);
  const Poly inv_c = Rational(1) - v.pow(2);  // phi^{-1}(v) = (inv_c, 2v)/den_v
  const Poly inv_s = Rational(2) * v;

  RatMap sigma;
  sigma.inputs = {y_vars[0], y_vars[1], "v1"};
  sigma.components.emplace_back(y1 * inv_c - y2 * inv_s, den_v);
  sigma.components.emplace_back(y1 * inv_s + y2 * inv_c, den_v);

  // a^{-1} b = (y1 z1 + y2 z2, y1 z2 - y2 z1) on the unit circle.
  const Poly re = y1 * z1 + y2 * z2;
  const Poly im = y1 * z2 - y2 * z1;
  RatMap tau;
  tau.inputs = y_vars;
  tau.inputs.insert(tau.inputs.end(), z_vars.begin(), z_vars.end());
  tau.components.emplace_back(im, re + Rational(1));

  return make_spray(1, std::move(Y), std::move(sigma), std::move(tau), {}, {re + Rational(1)});
}

// ---------------------------------------------------------------------------
// Two stereographic charts covering the circle
// ---------------------------------------------------------------------------

struct CircleCover {
  VarietyPresentation Y;   // S^1
  VarietyPresentation Y1;  // S^1 minus (-1, 0)
  VarietyPresentation Y2;  // S^1 minus (1, 0)
  RetractPresentation p1;  // i(z) = z2/(1+z1), r = inverse stereographic
  RetractPresentation p2;  // i(z) = z2/(1-z1)
};

inline CircleCover circle_two_chart_cover() {
  CircleCover c;
  c.Y = sphere_presentation(1);
  const Poly x1 = Poly::var(c.Y.vars[0]);
  const Poly x2 = Poly::var(c.Y.vars[1]);

  c.Y1 = c.Y;
  c.Y1.inequations.push_back(x1 + Rational(1));
  c.Y2 = c.Y;
  c.Y2.inequations.push_back(Rational(1) - x1);

  const Poly t = Poly::var("w1");
  const Poly dent = t.pow(2) + Rational(1);

  c.p1.Y = c.Y1;
  c.p1.n = 1;
  c.p1.w_vars = {"w1"};
  c.p1.i.inputs = c.Y.vars;
  c.p1.i.components.emplace_back(x2, x1 + Rational(1));
  c.p1.i.domain_inequations = {x1 + Rational(1)};
  c.p1.r.inputs = {"w1"};
  c.p1.r.components.emplace_back(Rational(1) - t.pow(2), dent);
  c.p1.r.components.emplace_back(Rational(2) * t, dent);

  c.p2.Y = c.Y2;
  c.p2.n = 1;
  c.p2.w_vars = {"w1"};
  c.p2.i.inputs = c.Y.vars;
  c.p2.i.components.emplace_back(x2, Rational(1) - x1);
  c.p2.i.domain_inequations = {Rational(1) - x1};
  c.p2.r.inputs = {"w1"};
  c.p2.r.components.emplace_back(t.pow(2) - Rational(1), dent);
  c.p2.r.components.emplace_back(Rational(2) * t, dent);
  return c;
}

// ---------------------------------------------------------------------------
// The disconnected cubic surface of the counterexample gallery
// ---------------------------------------------------------------------------

// Homogeneous cubic in projective coordinates plus a distinguished affine
// chart. The fixture surface is malleable but not retract rational (it has
// two connected components); no obstruction proof is mechanized here, the
// surface serves as the negative example and as the stage for the
// third-intersection map.
struct CubicSurface {
  Poly P;                               // homogeneous of degree 3
  std::vector<std::string> proj_vars;   // projective coordinates
  std::size_t affine_chart = 3;         // index of the dehomogenizing variable

  std::vector<std::string> affine_vars() const {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < proj_vars.size(); ++i) {
      if (i != affine_chart) out.push_back(proj_vars[i]);
    }
    return out;
  }

  Poly affine_equation() const {
    std::map<std::string, Poly> subs;
    subs[proj_vars[affine_chart]] = Poly::constant(1);
    return P.subst(subs);
  }

  bool contains_affine(const Point& p) const {
    return affine_equation().eval<Rational>(affine_vars(), p) == 0;
  }
};

// w (x^2 + y^2) - z (z - w) (z - 2w) = 0. In the chart w = 1 the real points
// satisfy x^2 + y^2 = z (z - 1) (z - 2), which forces z in [0,1] or z >= 2:
// two connected components.
inline CubicSurface disconnected_cubic_fixture() {
  CubicSurface s;
  s.proj_vars = {"x", "y", "z", "w"};
  s.affine_chart = 3;
  const Poly x = Poly::var("x"), y = Poly::var("y"), z = Poly::var("z"), w = Poly::var("w");
  s.P = w * (x.pow(2) + y.pow(2)) - z * (z - w) * (z - Rational(2) * w);
  if (s.P.total_degree() != 3) throw std::logic_error("cubic fixture is not a cubic");
  return s;
}

// Coefficients (c0..c3) of P(p + t (q - p)) as a cubic in t.
inline std::array<Rational, 4> cubic_line_restriction(const CubicSurface& s, const Point& p,
                                                      const Point& q) {
  const auto vars = s.affine_vars();
  if (p.size() != vars.size() || q.size() != vars.size()) {
    throw arity_error("cubic_line_restriction: point dimension mismatch");
  }
  std::map<std::string, Poly> subs;
  for (std::size_t i = 0; i < vars.size(); ++i) {
    subs[vars[i]] = Poly::constant(p[i]) + Poly::constant(q[i] - p[i]) * Poly::var("t");
  }
  const Poly c = s.affine_equation().subst(subs);
  std::array<Rational, 4> coef{0, 0, 0, 0};
  for (const auto& [m, cc] : c.terms()) {
    const std::size_t deg = m.empty() ? 0 : m[0];
    if (deg > 3) throw std::logic_error("line restriction has degree > 3");
    coef[deg] = cc;
  }
  return coef;
}

// The third intersection of the line through two distinct surface points.
// With roots 0, 1, t* of the restricted cubic, the root-sum identity gives
// t* = -c2/c3 - 1. Throws construction_error("pair not in U") on improper
// or tangent configurations.
inline Point cubic_third_point(const CubicSurface& s, const Point& p, const Point& q) {
  if (p == q) throw construction_error("pair not in U: points coincide");
  if (!s.contains_affine(p)) throw construction_error("first point not on the surface", point_to_string(p));
  if (!s.contains_affine(q)) throw construction_error("second point not on the surface", point_to_string(q));
  const auto c = cubic_line_restriction(s, p, q);
  // c[0] = 0 and c sums to zero at t = 1 because both points lie on the surface.
  if (c[3] == 0) throw construction_error("pair not in U: line meets the surface improperly");
  if (c[1] == 0) throw construction_error("pair not in U: line tangent at the first point");
  if (c[1] + Rational(2) * c[2] + Rational(3) * c[3] == 0) {
    throw construction_error("pair not in U: line tangent at the second point");
  }
  const Rational t_star = -c[2] / c[3] - 1;
  if (t_star == 0 || t_star == 1) {
    throw construction_error("pair not in U: third intersection degenerates to an endpoint");
  }
  Point out(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) out[i] = p[i] + t_star * (q[i] - p[i]);
  return out;
}

// Exact rational points on the fixture surface, produced by slicing with
// planes z = z0 and rotating one integral point around the slice circle.
// Slices where z0 (z0-1) (z0-2) is not a sum of two rational squares are
// skipped.
inline std::vector<Point> cubic_slice_points(const CubicSurface& s, std::size_t count,
                                             std::uint64_t seed) {
  SeededRng rng(seed);
  std::vector<Point> out;
  const Poly eq = s.affine_equation();
  const auto vars = s.affine_vars();
  int guard = 0;
  while (out.size() < count) {
    if (++guard > 20000) throw sampling_exhausted("cubic_slice_points: generation budget exhausted");
    const std::int64_t a = rng.next_int(-40, 40);
    const std::int64_t b = rng.next_int(1, 6);
    // z0 = a/b, radius^2 = z0(z0-1)(z0-2) = a(a-b)(a-2b) / b^3.
    const Integer N = Integer(a) * Integer(a - b) * Integer(a - 2 * b) * Integer(b);
    if (N < 0) continue;
    // x = A/b^2, y = B/b^2 with A^2 + B^2 = N.
    std::optional<std::pair<Integer, Integer>> split;
    for (Integer A = 0; A * A <= N; ++A) {
      const Integer rem = N - A * A;
      const Integer B = sqrt(rem);
      if (B * B == rem) {
        split = std::make_pair(A, B);
        break;
      }
    }
    if (!split) continue;
    const Rational z0 = make_rational(Integer(a), Integer(b));
    const Rational b2 = make_rational(Integer(b) * Integer(b), 1);
    Rational x0 = Rational(split->first) / b2;
    Rational y0 = Rational(split->second) / b2;
    // Rotate around the slice circle by rational circle points.
    for (int rot = 0; rot < 4 && out.size() < count; ++rot) {
      const Rational u = rng.next_rational(40);
      const Rational cd = Rational(1) + u * u;
      const Rational cc = (Rational(1) - u * u) / cd;
      const Rational ss = Rational(2) * u / cd;
      const Point pt{x0 * cc - y0 * ss, x0 * ss + y0 * cc, z0};
      if (eq.eval<Rational>(vars, pt) != 0) {
        throw std::logic_error("cubic_slice_points produced an off-surface point");
      }
      out.push_back(pt);
    }
  }
  return out;
}

}  // namespace spraykit

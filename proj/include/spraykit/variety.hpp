#pragma once

// Variety presentations with exact rational-point samplers, plus the
// Schwartz-Zippel style identity check that replaces symbolic ideal
// membership throughout the toolkit.

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "spraykit/errors.hpp"
#include "spraykit/ratmap.hpp"
#include "spraykit/rng.hpp"

namespace spraykit {

using Point = std::vector<Rational>;

inline std::string point_to_string(const Point& p) {
  std::string s = "(";
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) s += ", ";
    s += rat_to_string(p[i]);
  }
  return s + ")";
}

struct VarietyPresentation;

enum class SamplerKind { parametrized, product, graph, enumerated };

inline const char* to_string(SamplerKind k) {
  switch (k) {
    case SamplerKind::parametrized: return "parametrized";
    case SamplerKind::product: return "product";
    case SamplerKind::graph: return "graph";
    case SamplerKind::enumerated: return "enumerated";
  }
  return "?";
}

// Emits exact rational points of a presentation; same seed, same sequence.
struct RationalPointSampler {
  SamplerKind kind = SamplerKind::enumerated;
  RatMap parametrization;  // parametrized: params -> ambient; graph: base -> fiber
  std::shared_ptr<VarietyPresentation> factor1, factor2;  // product
  std::shared_ptr<VarietyPresentation> base;              // graph
  std::vector<Point> points;                              // enumerated
  std::int64_t seed = 0;                                  // default stream
  std::int64_t magnitude_bound = SeededRng::kDefaultMagnitudeBound;
};

struct VarietyPresentation {
  std::vector<std::string> vars;    // ambient coordinates, ordered
  std::vector<Poly> generators;     // ideal of the Zariski closure
  std::vector<Poly> inequations;    // Zariski-open restriction
  RationalPointSampler sampler;
  Reducer reducer;                  // optional square rules of the generators

  std::size_t ambient_dim() const { return vars.size(); }
};

inline bool contains(const VarietyPresentation& v, const Point& p) {
  if (p.size() != v.ambient_dim()) {
    throw arity_error("contains: point dimension " + std::to_string(p.size()) + " != ambient " +
                      std::to_string(v.ambient_dim()));
  }
  for (const auto& g : v.generators) {
    if (g.eval<Rational>(v.vars, p) != 0) return false;
  }
  for (const auto& q : v.inequations) {
    if (q.eval<Rational>(v.vars, p) == 0) return false;
  }
  return true;
}

namespace detail {

constexpr int kRetryFactor = 64;

inline std::optional<Point> try_next_point(const VarietyPresentation& v, SeededRng& rng,
                                           std::size_t* enum_cursor);

inline Point next_point(const VarietyPresentation& v, SeededRng& rng, std::size_t* enum_cursor,
                        int budget = kRetryFactor) {
  for (int attempt = 0; attempt < budget; ++attempt) {
    if (auto p = try_next_point(v, rng, enum_cursor)) return *p;
  }
  throw sampling_exhausted("sampler failed to produce an in-domain point within retry budget");
}

inline std::optional<Point> try_next_point(const VarietyPresentation& v, SeededRng& rng,
                                           std::size_t* enum_cursor) {
  const auto& s = v.sampler;
  Point p;
  switch (s.kind) {
    case SamplerKind::parametrized: {
      std::vector<Rational> params;
      params.reserve(s.parametrization.arity());
      for (std::size_t i = 0; i < s.parametrization.arity(); ++i) {
        params.push_back(rng.next_rational(s.magnitude_bound));
      }
      if (!s.parametrization.defined_at(params)) return std::nullopt;
      p = s.parametrization.eval(params);
      break;
    }
    case SamplerKind::product: {
      std::size_t dummy = 0;
      Point a = next_point(*s.factor1, rng, &dummy);
      Point b = next_point(*s.factor2, rng, &dummy);
      p = std::move(a);
      p.insert(p.end(), b.begin(), b.end());
      break;
    }
    case SamplerKind::graph: {
      std::size_t dummy = 0;
      Point x = next_point(*s.base, rng, &dummy);
      if (!s.parametrization.defined_at(x)) return std::nullopt;
      Point y = s.parametrization.eval(x);
      p = std::move(x);
      p.insert(p.end(), y.begin(), y.end());
      break;
    }
    case SamplerKind::enumerated: {
      if (*enum_cursor >= s.points.size()) {
        throw sampling_exhausted("enumerated sampler exhausted after " +
                                 std::to_string(s.points.size()) + " points");
      }
      p = s.points[(*enum_cursor)++];
      break;
    }
  }
  if (p.size() != v.ambient_dim()) {
    throw construction_error("sampler emitted a point of wrong dimension");
  }
  for (const auto& q : v.inequations) {
    if (q.eval<Rational>(v.vars, p) == 0) return std::nullopt;
  }
  return p;
}

}  // namespace detail

// `count` exact points of v, deterministically from `seed`. Enumerated
// samplers ignore the seed and walk their list in order.
inline std::vector<Point> sample_points(const VarietyPresentation& v, std::size_t count,
                                        std::uint64_t seed) {
  SeededRng rng(seed);
  std::size_t enum_cursor = 0;
  std::vector<Point> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    out.push_back(detail::next_point(v, rng, &enum_cursor));
  }
  return out;
}

// Product presentation Y1 x Y2 with variables renamed by the given suffixes.
inline VarietyPresentation product_presentation(const VarietyPresentation& a,
                                                const VarietyPresentation& b,
                                                const std::string& suffix_a,
                                                const std::string& suffix_b) {
  auto rename_map = [](const std::vector<std::string>& vars, const std::string& suffix) {
    std::map<std::string, std::string> m;
    for (const auto& v : vars) m[v] = v + suffix;
    return m;
  };
  const auto ma = rename_map(a.vars, suffix_a);
  const auto mb = rename_map(b.vars, suffix_b);

  VarietyPresentation out;
  for (const auto& v : a.vars) out.vars.push_back(ma.at(v));
  for (const auto& v : b.vars) out.vars.push_back(mb.at(v));
  for (const auto& g : a.generators) out.generators.push_back(g.rename(ma));
  for (const auto& g : b.generators) out.generators.push_back(g.rename(mb));
  for (const auto& q : a.inequations) out.inequations.push_back(q.rename(ma));
  for (const auto& q : b.inequations) out.inequations.push_back(q.rename(mb));
  out.reducer = a.reducer.renamed(ma).merged(b.reducer.renamed(mb));

  auto fa = std::make_shared<VarietyPresentation>(a);
  fa->vars = out.vars;
  fa->vars.resize(a.vars.size());
  for (auto& g : fa->generators) g = g.rename(ma);
  for (auto& q : fa->inequations) q = q.rename(ma);
  fa->sampler.parametrization = a.sampler.parametrization;  // parametrization targets are positional
  fa->reducer = a.reducer.renamed(ma);

  auto fb = std::make_shared<VarietyPresentation>(b);
  fb->vars.clear();
  for (const auto& v : b.vars) fb->vars.push_back(mb.at(v));
  for (auto& g : fb->generators) g = g.rename(mb);
  for (auto& q : fb->inequations) q = q.rename(mb);
  fb->reducer = b.reducer.renamed(mb);

  out.sampler.kind = SamplerKind::product;
  out.sampler.factor1 = std::move(fa);
  out.sampler.factor2 = std::move(fb);
  return out;
}

// ---------------------------------------------------------------------------
// Probabilistic identity checking: exact evaluation at seeded random points.
// ---------------------------------------------------------------------------

struct CheckOutcome {
  bool passed = false;
  std::optional<Point> witness;  // first failing point
  std::string detail;

  static CheckOutcome pass() { return {true, std::nullopt, {}}; }
  static CheckOutcome fail(Point w, std::string d = {}) { return {false, std::move(w), std::move(d)}; }
};

// Partial exact-evaluation closure; nullopt marks an out-of-domain point.
using PointFun = std::function<std::optional<Point>(const Point&)>;

// Exact agreement of two evaluators at `trials` sampled points of v where
// both sides are defined. Failure carries the first witness.
inline CheckOutcome identity_check(const PointFun& lhs, const PointFun& rhs,
                                   const VarietyPresentation& v, std::size_t trials,
                                   std::uint64_t seed) {
  SeededRng rng(seed);
  std::size_t enum_cursor = 0;
  std::size_t done = 0;
  std::size_t attempts = 0;
  const std::size_t budget = trials * detail::kRetryFactor + detail::kRetryFactor;
  while (done < trials) {
    if (++attempts > budget) {
      throw sampling_exhausted("identity_check: fewer than " + std::to_string(trials) +
                               " in-domain samples within retry budget");
    }
    Point p = detail::next_point(v, rng, &enum_cursor);
    const auto a = lhs(p);
    const auto b = rhs(p);
    if (!a || !b) continue;
    if (*a != *b) return CheckOutcome::fail(std::move(p));
    ++done;
  }
  return CheckOutcome::pass();
}

inline PointFun as_point_fun(const RatMap& m) {
  return [&m](const Point& p) -> std::optional<Point> {
    if (!m.defined_at(p)) return std::nullopt;
    return m.eval(p);
  };
}

inline CheckOutcome identity_check(const RatMap& lhs, const RatMap& rhs,
                                   const VarietyPresentation& v, std::size_t trials,
                                   std::uint64_t seed) {
  if (lhs.arity() != v.ambient_dim() || rhs.arity() != v.ambient_dim()) {
    throw arity_error("identity_check: map arity does not match ambient dimension");
  }
  if (lhs.dim() != rhs.dim()) throw arity_error("identity_check: component counts differ");
  return identity_check(as_point_fun(lhs), as_point_fun(rhs), v, trials, seed);
}

}  // namespace spraykit

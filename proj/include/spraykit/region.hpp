#pragma once

// Closed/open semialgebraic regions with exact sign-based membership and
// deterministic rational grids inside their bounding boxes.

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "spraykit/errors.hpp"
#include "spraykit/polynomial.hpp"

namespace spraykit {

enum class Rel { le, lt, eq };  // p <= 0, p < 0, p == 0

inline const char* to_string(Rel r) {
  switch (r) {
    case Rel::le: return "<=";
    case Rel::lt: return "<";
    case Rel::eq: return "=";
  }
  return "?";
}

struct Region {
  std::vector<std::string> vars;
  std::vector<std::pair<Poly, Rel>> constraints;
  std::vector<std::pair<Rational, Rational>> bounding_box;  // closed [lo, hi] per coordinate

  std::size_t dim() const { return vars.size(); }

  bool contains(const std::vector<Rational>& p) const {
    if (p.size() != vars.size()) throw arity_error("Region::contains: dimension mismatch");
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (p[i] < bounding_box[i].first || p[i] > bounding_box[i].second) return false;
    }
    for (const auto& [poly, rel] : constraints) {
      const Rational value = poly.eval<Rational>(vars, p);
      switch (rel) {
        case Rel::le:
          if (value > 0) return false;
          break;
        case Rel::lt:
          if (value >= 0) return false;
          break;
        case Rel::eq:
          if (value != 0) return false;
          break;
      }
    }
    return true;
  }

  // Axis-aligned box region.
  static Region box(const std::vector<std::string>& vars,
                    std::vector<std::pair<Rational, Rational>> bounds) {
    Region r;
    r.vars = vars;
    r.bounding_box = std::move(bounds);
    for (std::size_t i = 0; i < vars.size(); ++i) {
      const Poly x = Poly::var(vars[i]);
      r.constraints.emplace_back(Poly::constant(r.bounding_box[i].first) - x, Rel::le);
      r.constraints.emplace_back(x - Poly::constant(r.bounding_box[i].second), Rel::le);
    }
    return r;
  }
};

// Uniform rational grid over the bounding box, filtered by region membership.
// `points_per_axis` nodes per coordinate (endpoints included).
inline std::vector<std::vector<Rational>> region_grid(const Region& r, std::size_t points_per_axis) {
  if (points_per_axis < 2) points_per_axis = 2;
  std::vector<std::vector<Rational>> axes(r.dim());
  for (std::size_t i = 0; i < r.dim(); ++i) {
    const Rational lo = r.bounding_box[i].first;
    const Rational hi = r.bounding_box[i].second;
    const Rational step = (hi - lo) / Rational(Integer(points_per_axis - 1));
    for (std::size_t j = 0; j < points_per_axis; ++j) {
      axes[i].push_back(lo + step * Rational(Integer(j)));
    }
  }
  std::vector<std::vector<Rational>> out;
  std::vector<std::size_t> idx(r.dim(), 0);
  for (;;) {
    std::vector<Rational> p(r.dim());
    for (std::size_t i = 0; i < r.dim(); ++i) p[i] = axes[i][idx[i]];
    if (r.contains(p)) out.push_back(std::move(p));
    std::size_t k = 0;
    while (k < r.dim() && ++idx[k] == points_per_axis) idx[k++] = 0;
    if (k == r.dim()) break;
  }
  return out;
}

// Per-axis count so the full box grid carries roughly `total` nodes.
inline std::size_t axis_count_for(std::size_t total, std::size_t dim) {
  if (dim <= 1) return total;
  double k = std::pow(static_cast<double>(total), 1.0 / static_cast<double>(dim));
  auto n = static_cast<std::size_t>(k + 0.5);
  return n < 2 ? 2 : n;
}

}  // namespace spraykit

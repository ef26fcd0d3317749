#pragma once

// Rational maps: tuples of rational functions over an ordered input context,
// together with the inequations cutting out the Zariski-open domain.

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "spraykit/errors.hpp"
#include "spraykit/ratfun.hpp"

namespace spraykit {

struct RatMap {
  std::vector<std::string> inputs;       // positional variable names
  std::vector<RatFun> components;
  std::vector<Poly> domain_inequations;  // defined where every entry is nonzero

  std::size_t arity() const { return inputs.size(); }
  std::size_t dim() const { return components.size(); }

  static RatMap identity(const std::vector<std::string>& vars) {
    RatMap m;
    m.inputs = vars;
    for (const auto& v : vars) m.components.push_back(RatFun::var(v));
    return m;
  }

  // True iff every domain inequation is nonzero at the point.
  template <class T>
  bool in_domain(const std::vector<T>& point) const {
    check_arity(point.size());
    for (const auto& q : domain_inequations) {
      if (q.eval<T>(inputs, point) == Poly::from_rational<T>(0)) return false;
    }
    return true;
  }

  template <class T>
  std::vector<T> eval(const std::vector<T>& point) const {
    check_arity(point.size());
    for (const auto& q : domain_inequations) {
      if (q.eval<T>(inputs, point) == Poly::from_rational<T>(0)) {
        throw eval_domain_error("domain inequation vanishes at evaluation point", q.to_string());
      }
    }
    std::vector<T> out;
    out.reserve(components.size());
    for (const auto& f : components) out.push_back(f.eval<T>(inputs, point));
    return out;
  }

  // True when the point satisfies the inequations and no component
  // denominator vanishes there.
  template <class T>
  bool defined_at(const std::vector<T>& point) const {
    if (!in_domain(point)) return false;
    for (const auto& f : components) {
      if (f.den().eval<T>(inputs, point) == Poly::from_rational<T>(0)) return false;
    }
    return true;
  }

  RatMap rename(const std::map<std::string, std::string>& mapping) const {
    RatMap out;
    out.inputs.reserve(inputs.size());
    for (const auto& v : inputs) {
      auto it = mapping.find(v);
      out.inputs.push_back(it == mapping.end() ? v : it->second);
    }
    for (const auto& f : components) out.components.push_back(f.rename(mapping));
    for (const auto& q : domain_inequations) out.domain_inequations.push_back(q.rename(mapping));
    return out;
  }

  RatMap reduced(const Reducer& r) const {
    if (r.empty()) return *this;
    RatMap out;
    out.inputs = inputs;
    for (const auto& f : components) out.components.push_back(f.reduced(r));
    for (const auto& q : domain_inequations) out.domain_inequations.push_back(r.reduce(q));
    return out;
  }

  void check_arity(std::size_t n) const {
    if (n != inputs.size()) {
      throw arity_error("rational map expects " + std::to_string(inputs.size()) + " inputs, got " +
                        std::to_string(n));
    }
  }
};

// Adds q to the list unless it is a nonzero constant or already present
// (structural comparison); an identically-zero inequation is rejected.
inline void push_inequation(std::vector<Poly>& list, const Poly& q) {
  if (q.is_zero()) throw construction_error("identically-zero inequation would empty the domain");
  if (q.is_constant()) return;
  for (const auto& p : list) {
    if (p == q) return;
  }
  list.push_back(q);
}

// Componentwise substitution: (outer o inner)(x) = outer(inner(x)).
//
// The result keeps inner's inequations and carries over outer's inequations
// through the substitution by their numerators; denominators introduced by
// the substitution are nonzero wherever inner is defined.
inline RatMap compose(const RatMap& outer, const RatMap& inner, const Reducer& reduce = {}) {
  if (outer.arity() != inner.dim()) {
    throw arity_error("compose: outer arity " + std::to_string(outer.arity()) +
                      " != inner dimension " + std::to_string(inner.dim()));
  }
  std::map<std::string, RatFun> subs;
  for (std::size_t i = 0; i < outer.inputs.size(); ++i) subs[outer.inputs[i]] = inner.components[i];
  const Reducer* red = reduce.empty() ? nullptr : &reduce;

  RatMap out;
  out.inputs = inner.inputs;
  out.domain_inequations = inner.domain_inequations;
  for (const auto& f : outer.components) {
    out.components.push_back(f.subst(subs, red));
  }
  for (const auto& q : outer.domain_inequations) {
    const RatFun image = RatFun::subst_poly_into(q, subs, red);
    push_inequation(out.domain_inequations, image.num());
  }
  return out;
}

// Stacks the components of several maps over a shared input context.
inline RatMap stack(const std::vector<RatMap>& maps) {
  if (maps.empty()) throw arity_error("stack: no maps");
  RatMap out;
  out.inputs = maps.front().inputs;
  for (const auto& m : maps) {
    if (m.inputs != out.inputs) throw arity_error("stack: mismatched input contexts");
    out.components.insert(out.components.end(), m.components.begin(), m.components.end());
    for (const auto& q : m.domain_inequations) push_inequation(out.domain_inequations, q);
  }
  return out;
}

}  // namespace spraykit

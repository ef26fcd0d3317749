#pragma once

// Sparse multivariate polynomials over exact rationals.
//
// Variables are identified by name and kept sorted; terms live in a map
// ordered by descending graded-lexicographic order, so iteration order and
// the text serialization are canonical for a given mathematical polynomial.

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <map>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "spraykit/errors.hpp"
#include "spraykit/rational.hpp"

namespace spraykit {

using Monomial = std::vector<std::uint32_t>;

namespace detail {

inline std::uint64_t total_degree(const Monomial& m) {
  std::uint64_t d = 0;
  for (auto e : m) d += e;
  return d;
}

// Descending grlex: higher total degree first, ties broken lexicographically.
struct GrlexGreater {
  bool operator()(const Monomial& a, const Monomial& b) const {
    const auto da = total_degree(a), db = total_degree(b);
    if (da != db) return da > db;
    return a > b;
  }
};

}  // namespace detail

class Poly {
 public:
  using TermMap = std::map<Monomial, Rational, detail::GrlexGreater>;

  Poly() = default;

  static Poly constant(Rational c) {
    Poly p;
    if (c != 0) p.terms_[{}] = std::move(c);
    return p;
  }

  static Poly var(const std::string& name, std::uint32_t exponent = 1) {
    if (exponent == 0) return constant(1);
    Poly p;
    p.vars_ = {name};
    p.terms_[{exponent}] = 1;
    return p;
  }

  const std::vector<std::string>& vars() const { return vars_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  bool is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && detail::total_degree(terms_.begin()->first) == 0);
  }

  // Value when constant; throws otherwise.
  Rational constant_value() const {
    if (terms_.empty()) return 0;
    if (!is_constant()) throw std::logic_error("Poly::constant_value on non-constant");
    return terms_.begin()->second;
  }

  std::uint64_t total_degree() const {
    std::uint64_t d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, detail::total_degree(m));
    return d;
  }

  std::size_t term_count() const { return terms_.size(); }

  // Coefficient of the grlex-leading term (0 for the zero polynomial).
  Rational leading_coefficient() const {
    return terms_.empty() ? Rational(0) : terms_.begin()->second;
  }

  friend Poly operator-(const Poly& p) {
    Poly r = p;
    for (auto& [m, c] : r.terms_) c = -c;
    return r;
  }

  friend Poly operator+(const Poly& a, const Poly& b) { return add_impl(a, b, /*negate_b=*/false); }
  friend Poly operator-(const Poly& a, const Poly& b) { return add_impl(a, b, /*negate_b=*/true); }

  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly();
    auto [av, bv, vars] = aligned(a, b);
    Poly r;
    r.vars_ = std::move(vars);
    Monomial m(r.vars_.size());
    for (const auto& [ma, ca] : av) {
      for (const auto& [mb, cb] : bv) {
        for (std::size_t i = 0; i < m.size(); ++i) m[i] = ma[i] + mb[i];
        const Rational prod = ca * cb;
        auto [it, fresh] = r.terms_.try_emplace(m, prod);
        if (!fresh) {
          it->second += prod;
          if (it->second == 0) r.terms_.erase(it);
        }
      }
    }
    r.trim();
    return r;
  }

  friend Poly operator*(const Poly& a, const Rational& c) {
    if (c == 0) return Poly();
    Poly r = a;
    for (auto& [m, coef] : r.terms_) coef *= c;
    return r;
  }
  friend Poly operator*(const Rational& c, const Poly& a) { return a * c; }

  Poly& operator+=(const Poly& o) { return *this = *this + o; }
  Poly& operator-=(const Poly& o) { return *this = *this - o; }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }

  Poly pow(std::uint32_t e) const {
    Poly r = constant(1);
    Poly base = *this;
    while (e > 0) {
      if (e & 1) r = r * base;
      if (e >>= 1) base = base * base;
    }
    return r;
  }

  friend bool operator==(const Poly& a, const Poly& b) {
    auto [av, bv, vars] = aligned(a, b);
    return av == bv;
  }
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

  // Exact or floating evaluation; `names` gives the position of each value.
  template <class T>
  T eval(const std::vector<std::string>& names, const std::vector<T>& values) const {
    const auto idx = positions(names);
    T acc = from_rational<T>(0);
    std::vector<T> powers;
    for (const auto& [m, c] : terms_) {
      T t = from_rational<T>(c);
      for (std::size_t i = 0; i < m.size(); ++i) {
        for (std::uint32_t k = 0; k < m[i]; ++k) t = t * values[idx[i]];
      }
      acc = acc + t;
    }
    return acc;
  }

  // Substitute every variable by a polynomial (variables absent from `subs`
  // are substituted by themselves). Powers are cached, and optionally kept
  // in reduced form through a square-rule reducer (declared below).
  template <class Red = std::nullptr_t>
  Poly subst(const std::map<std::string, Poly>& subs, const Red* red = nullptr) const {
    std::vector<Poly> images(vars_.size());
    for (std::size_t i = 0; i < vars_.size(); ++i) {
      auto it = subs.find(vars_[i]);
      images[i] = (it == subs.end()) ? var(vars_[i]) : it->second;
    }
    auto maybe_reduce = [&](Poly p) {
      if constexpr (!std::is_same_v<Red, std::nullptr_t>) {
        if (red) return red->reduce(std::move(p));
      }
      return p;
    };
    std::vector<std::vector<Poly>> pow_cache(vars_.size());
    auto power = [&](std::size_t i, std::uint32_t e) -> const Poly& {
      auto& cache = pow_cache[i];
      if (cache.empty()) cache.push_back(constant(1));
      while (cache.size() <= e) cache.push_back(maybe_reduce(cache.back() * images[i]));
      return cache[e];
    };
    Poly acc;
    for (const auto& [m, c] : terms_) {
      Poly t = constant(c);
      for (std::size_t i = 0; i < m.size(); ++i) {
        if (m[i] > 0) t = maybe_reduce(t * power(i, m[i]));
      }
      acc += t;
    }
    return maybe_reduce(std::move(acc));
  }

  // p with the listed variables set to zero.
  Poly at_zero(const std::vector<std::string>& zero_vars) const {
    std::map<std::string, Poly> subs;
    for (const auto& v : zero_vars) subs[v] = Poly();
    return subst(subs);
  }

  Poly rename(const std::map<std::string, std::string>& mapping) const {
    std::map<std::string, Poly> subs;
    for (const auto& [from, to] : mapping) subs[from] = var(to);
    return subst(subs);
  }

  bool uses_var(const std::string& name) const {
    auto it = std::lower_bound(vars_.begin(), vars_.end(), name);
    if (it == vars_.end() || *it != name) return false;
    const std::size_t i = static_cast<std::size_t>(it - vars_.begin());
    for (const auto& [m, c] : terms_) {
      if (m[i] > 0) return true;
    }
    return false;
  }

  // lcm of coefficient denominators (1 for the zero polynomial).
  Integer denominator_lcm() const {
    Integer l = 1;
    for (const auto& [m, c] : terms_) l = lcm(l, denominator(c));
    return l;
  }

  // gcd of coefficient numerators (0 for the zero polynomial).
  Integer numerator_gcd() const {
    Integer g = 0;
    for (const auto& [m, c] : terms_) g = gcd(g, numerator(c));
    return g;
  }

  // Componentwise-min exponent vector over all terms (the monomial content).
  Monomial monomial_content() const {
    if (terms_.empty()) return {};
    Monomial m(vars_.size(), UINT32_MAX);
    for (const auto& [mono, c] : terms_) {
      for (std::size_t i = 0; i < m.size(); ++i) m[i] = std::min(m[i], mono[i]);
    }
    return m;
  }

  // Divide by x^content where the content exponents are <= every term's.
  Poly divide_monomial(const Monomial& content) const {
    Poly r;
    r.vars_ = vars_;
    for (const auto& [m, c] : terms_) {
      Monomial q(m.size());
      for (std::size_t i = 0; i < m.size(); ++i) {
        if (m[i] < content[i]) throw std::logic_error("monomial content does not divide term");
        q[i] = m[i] - content[i];
      }
      r.terms_.emplace(std::move(q), c);
    }
    r.trim();
    return r;
  }

  std::string to_string() const;
  static Poly parse(const std::string& text);

  // Drops variables that no term uses.
  void trim() {
    if (vars_.empty()) return;
    std::vector<bool> used(vars_.size(), false);
    for (const auto& [m, c] : terms_) {
      for (std::size_t i = 0; i < m.size(); ++i) {
        if (m[i] > 0) used[i] = true;
      }
    }
    if (std::all_of(used.begin(), used.end(), [](bool b) { return b; })) return;
    std::vector<std::string> nv;
    for (std::size_t i = 0; i < vars_.size(); ++i) {
      if (used[i]) nv.push_back(vars_[i]);
    }
    TermMap nt;
    for (const auto& [m, c] : terms_) {
      Monomial q;
      q.reserve(nv.size());
      for (std::size_t i = 0; i < m.size(); ++i) {
        if (used[i]) q.push_back(m[i]);
      }
      nt.emplace(std::move(q), c);
    }
    vars_ = std::move(nv);
    terms_ = std::move(nt);
  }

  template <class T>
  static T from_rational(const Rational& q) {
    if constexpr (std::is_same_v<T, Rational>) {
      return q;
    } else {
      return to_double(q);
    }
  }

 private:
  static Poly add_impl(const Poly& a, const Poly& b, bool negate_b) {
    auto [av, bv, vars] = aligned(a, b);
    Poly r;
    r.vars_ = std::move(vars);
    r.terms_ = std::move(av);
    for (const auto& [m, c] : bv) {
      const Rational d = negate_b ? Rational(-c) : c;
      auto [it, fresh] = r.terms_.try_emplace(m, d);
      if (!fresh) {
        it->second += d;
        if (it->second == 0) r.terms_.erase(it);
      }
    }
    r.trim();
    return r;
  }

  // Remaps both term maps onto the sorted union of the two variable lists.
  static std::tuple<TermMap, TermMap, std::vector<std::string>> aligned(const Poly& a, const Poly& b) {
    if (a.vars_ == b.vars_) return {a.terms_, b.terms_, a.vars_};
    std::vector<std::string> u;
    std::set_union(a.vars_.begin(), a.vars_.end(), b.vars_.begin(), b.vars_.end(), std::back_inserter(u));
    return {remap(a, u), remap(b, u), u};
  }

  static TermMap remap(const Poly& p, const std::vector<std::string>& u) {
    std::vector<std::size_t> pos = p.positions(u);
    TermMap out;
    for (const auto& [m, c] : p.terms_) {
      Monomial q(u.size(), 0);
      for (std::size_t i = 0; i < m.size(); ++i) q[pos[i]] = m[i];
      out.emplace(std::move(q), c);
    }
    return out;
  }

  // Position of each of this poly's variables inside `names`.
  std::vector<std::size_t> positions(const std::vector<std::string>& names) const {
    std::vector<std::size_t> idx(vars_.size());
    for (std::size_t i = 0; i < vars_.size(); ++i) {
      auto it = std::find(names.begin(), names.end(), vars_[i]);
      if (it == names.end()) throw arity_error("variable " + vars_[i] + " missing from evaluation context");
      idx[i] = static_cast<std::size_t>(it - names.begin());
    }
    return idx;
  }

  std::vector<std::string> vars_;  // sorted, unique
  TermMap terms_;                  // no zero coefficients; keys sized to vars_
};

inline Poly operator+(const Poly& a, const Rational& c) { return a + Poly::constant(c); }
inline Poly operator+(const Rational& c, const Poly& a) { return a + Poly::constant(c); }
inline Poly operator-(const Poly& a, const Rational& c) { return a - Poly::constant(c); }
inline Poly operator-(const Rational& c, const Poly& a) { return Poly::constant(c) - a; }

// ---------------------------------------------------------------------------
// Text format: terms joined by " + ", each "n/d" or "n/d * x^e y^e".
// ---------------------------------------------------------------------------

inline std::string Poly::to_string() const {
  if (terms_.empty()) return "0/1";
  std::string out;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    if (!first) out += " + ";
    first = false;
    out += numerator(c).str();
    out += '/';
    out += denominator(c).str();
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i] == 0) continue;
      out += " * ";
      out += vars_[i];
      out += '^';
      out += std::to_string(m[i]);
    }
  }
  return out;
}

namespace detail {

struct PolyLexer {
  explicit PolyLexer(const std::string& s) : s_(s) {}

  void skip_ws() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  bool done() {
    skip_ws();
    return i_ >= s_.size();
  }
  char peek() {
    skip_ws();
    return i_ < s_.size() ? s_[i_] : '\0';
  }
  bool consume(char c) {
    if (peek() != c) return false;
    ++i_;
    return true;
  }
  std::string number() {
    skip_ws();
    std::size_t b = i_;
    while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
    if (b == i_) throw std::invalid_argument("expected number at offset " + std::to_string(b) + " in: " + s_);
    return s_.substr(b, i_ - b);
  }
  std::string ident() {
    skip_ws();
    std::size_t b = i_;
    auto head = [](char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; };
    auto tail = [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; };
    if (i_ < s_.size() && head(s_[i_])) {
      ++i_;
      while (i_ < s_.size() && tail(s_[i_])) ++i_;
    }
    if (b == i_) throw std::invalid_argument("expected identifier at offset " + std::to_string(b) + " in: " + s_);
    return s_.substr(b, i_ - b);
  }

  const std::string& s_;
  std::size_t i_ = 0;
};

}  // namespace detail

inline Poly Poly::parse(const std::string& text) {
  detail::PolyLexer lex(text);
  Poly acc;
  bool first_term = true;
  while (!lex.done()) {
    Rational sign_c = 1;
    if (lex.consume('+')) {
      if (first_term) throw std::invalid_argument("leading '+' in polynomial: " + text);
    } else if (lex.consume('-')) {
      sign_c = -1;
    } else if (!first_term) {
      throw std::invalid_argument("expected '+' or '-' between terms in: " + text);
    }
    first_term = false;

    // Optional extra sign directly on the coefficient ("+ -1/2 * x").
    if (lex.consume('-')) sign_c = -sign_c;

    Rational coeff = 1;
    bool saw_coeff = false;
    if (std::isdigit(static_cast<unsigned char>(lex.peek()))) {
      Integer n(lex.number());
      Integer d = 1;
      if (lex.consume('/')) d = Integer(lex.number());
      coeff = make_rational(n, d);
      saw_coeff = true;
    }

    Poly term = constant(coeff * sign_c);
    bool expect_factor = saw_coeff ? lex.consume('*') : true;
    // Factors may also follow a coefficient without '*' (e.g. "2x").
    while (true) {
      const char c = lex.peek();
      const bool starts_var = std::isalpha(static_cast<unsigned char>(c)) || c == '_';
      if (!starts_var) {
        if (expect_factor && !saw_coeff) throw std::invalid_argument("empty term in polynomial: " + text);
        break;
      }
      std::string v = lex.ident();
      std::uint32_t e = 1;
      if (lex.consume('^')) e = static_cast<std::uint32_t>(std::stoul(lex.number()));
      term = term * var(v, e);
      saw_coeff = true;  // factors seen; trailing '*' optional from here on
      lex.consume('*');
      expect_factor = false;
    }
    acc += term;
  }
  return acc;
}

// ---------------------------------------------------------------------------
// v-decomposition: p = sum_i v_i * P_i for p vanishing at v = 0.
// ---------------------------------------------------------------------------

// Each monomial is assigned to its lowest-index v-variable with positive
// exponent. Precondition: every term of p contains some v-variable, i.e.
// p becomes identically zero when all of v_vars are set to zero.
inline std::vector<Poly> v_decompose(const Poly& p, const std::vector<std::string>& v_vars) {
  std::vector<Poly> parts(v_vars.size());
  for (const auto& [m, c] : p.terms()) {
    std::size_t chosen = v_vars.size();
    for (std::size_t k = 0; k < v_vars.size(); ++k) {
      auto it = std::find(p.vars().begin(), p.vars().end(), v_vars[k]);
      if (it == p.vars().end()) continue;
      const std::size_t pos = static_cast<std::size_t>(it - p.vars().begin());
      if (m[pos] > 0) {
        chosen = k;
        break;
      }
    }
    if (chosen == v_vars.size()) {
      throw std::invalid_argument("v_decompose: polynomial does not vanish at v = 0 (term " +
                                  Poly::constant(c).to_string() + " has no v-variable)");
    }
    // term / v_chosen
    Poly t;
    {
      Poly mono = Poly::constant(c);
      for (std::size_t i = 0; i < m.size(); ++i) {
        if (m[i] == 0) continue;
        std::uint32_t e = m[i];
        if (p.vars()[i] == v_vars[chosen]) --e;
        if (e > 0) mono = mono * Poly::var(p.vars()[i], e);
      }
      t = mono;
    }
    parts[chosen] += t;
  }
  return parts;
}

// ---------------------------------------------------------------------------
// Square-rule reduction: rewrite var^2 -> rhs, used to keep representatives
// of functions on a variety small. Exact on the variety's points.
// ---------------------------------------------------------------------------

struct SquareRule {
  std::string var;  // variable whose square is rewritten
  Poly rhs;         // polynomial free of `var`
};

class Reducer {
 public:
  Reducer() = default;
  explicit Reducer(std::vector<SquareRule> rules) : rules_(std::move(rules)) {}

  const std::vector<SquareRule>& rules() const { return rules_; }
  bool empty() const { return rules_.empty(); }

  Reducer renamed(const std::map<std::string, std::string>& mapping) const {
    std::vector<SquareRule> out;
    out.reserve(rules_.size());
    for (const auto& r : rules_) {
      auto it = mapping.find(r.var);
      out.push_back({it == mapping.end() ? r.var : it->second, r.rhs.rename(mapping)});
    }
    return Reducer(std::move(out));
  }

  Reducer merged(const Reducer& other) const {
    std::vector<SquareRule> out = rules_;
    out.insert(out.end(), other.rules_.begin(), other.rules_.end());
    return Reducer(std::move(out));
  }

  Poly reduce(Poly p) const {
    for (int round = 0; round < 16; ++round) {
      bool changed = false;
      for (const auto& rule : rules_) {
        Poly q = apply_rule(p, rule);
        if (!(q == p)) {
          p = std::move(q);
          changed = true;
        }
      }
      if (!changed) return p;
    }
    throw std::logic_error("Reducer::reduce did not reach a fixpoint (cyclic rules?)");
  }

 private:
  static Poly apply_rule(const Poly& p, const SquareRule& rule) {
    if (!p.uses_var(rule.var)) return p;
    auto it = std::find(p.vars().begin(), p.vars().end(), rule.var);
    const std::size_t pos = static_cast<std::size_t>(it - p.vars().begin());
    Poly out;
    for (const auto& [m, c] : p.terms()) {
      const std::uint32_t e = m[pos];
      Poly mono = Poly::constant(c);
      for (std::size_t i = 0; i < m.size(); ++i) {
        if (i == pos || m[i] == 0) continue;
        mono = mono * Poly::var(p.vars()[i], m[i]);
      }
      if (e >= 2) {
        mono = mono * rule.rhs.pow(e / 2);
        if (e % 2) mono = mono * Poly::var(rule.var);
      } else if (e == 1) {
        mono = mono * Poly::var(rule.var);
      }
      out += mono;
    }
    return out;
  }

  std::vector<SquareRule> rules_;
};

}  // namespace spraykit

#pragma once

// Rational functions as unreduced fractions of polynomials. There is no
// multivariate gcd anywhere: equality is cross-multiplication, and the only
// normalization applied is scalar content and common-monomial cancellation,
// which keeps coefficient growth bounded through deep compositions.

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "spraykit/errors.hpp"
#include "spraykit/polynomial.hpp"

namespace spraykit {

class RatFun {
 public:
  RatFun() : num_(), den_(Poly::constant(1)) {}
  RatFun(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) { normalize(); }
  /* implicit */ RatFun(Poly p) : num_(std::move(p)), den_(Poly::constant(1)) { normalize(); }
  /* implicit */ RatFun(const Rational& c) : num_(Poly::constant(c)), den_(Poly::constant(1)) {}

  static RatFun var(const std::string& name) { return RatFun(Poly::var(name)); }

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }

  bool is_polynomial() const { return den_.is_constant(); }

  // Numerator scaled by the constant denominator; throws if not polynomial.
  Poly as_polynomial() const {
    if (!is_polynomial()) throw std::logic_error("RatFun::as_polynomial: denominator is not constant");
    return num_ * (Rational(1) / den_.constant_value());
  }

  friend RatFun operator-(const RatFun& f) { return RatFun(-f.num_, f.den_, no_normalize{}); }

  friend RatFun operator+(const RatFun& a, const RatFun& b) {
    if (a.den_ == b.den_) return RatFun(a.num_ + b.num_, a.den_);
    return RatFun(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }
  friend RatFun operator-(const RatFun& a, const RatFun& b) {
    if (a.den_ == b.den_) return RatFun(a.num_ - b.num_, a.den_);
    return RatFun(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
  }
  friend RatFun operator*(const RatFun& a, const RatFun& b) {
    return RatFun(a.num_ * b.num_, a.den_ * b.den_);
  }
  friend RatFun operator/(const RatFun& a, const RatFun& b) {
    if (b.num_.is_zero()) throw eval_domain_error("division by the zero rational function");
    return RatFun(a.num_ * b.den_, a.den_ * b.num_);
  }

  RatFun& operator+=(const RatFun& o) { return *this = *this + o; }
  RatFun& operator-=(const RatFun& o) { return *this = *this - o; }
  RatFun& operator*=(const RatFun& o) { return *this = *this * o; }
  RatFun& operator/=(const RatFun& o) { return *this = *this / o; }

  RatFun pow(std::uint32_t e) const {
    RatFun r(Rational(1));
    RatFun base = *this;
    while (e > 0) {
      if (e & 1) r = r * base;
      if (e >>= 1) base = base * base;
    }
    return r;
  }

  // Equality by cross-multiplication: num_a * den_b == num_b * den_a.
  friend bool equal(const RatFun& a, const RatFun& b) {
    return a.num_ * b.den_ == b.num_ * a.den_;
  }

  template <class T>
  T eval(const std::vector<std::string>& names, const std::vector<T>& values) const {
    const T d = den_.eval<T>(names, values);
    if (d == Poly::from_rational<T>(0)) {
      throw eval_domain_error("denominator vanishes at evaluation point", den_.to_string());
    }
    return num_.eval<T>(names, values) / d;
  }

  // Substitute variables by rational functions.
  RatFun subst(const std::map<std::string, RatFun>& subs, const Reducer* red = nullptr) const {
    return subst_poly_into(num_, subs, red) / subst_poly_into(den_, subs, red);
  }

  RatFun rename(const std::map<std::string, std::string>& mapping) const {
    return RatFun(num_.rename(mapping), den_.rename(mapping), no_normalize{});
  }

  RatFun reduced(const Reducer& r) const {
    if (r.empty()) return *this;
    return RatFun(r.reduce(num_), r.reduce(den_));
  }

  std::string to_string() const { return num_.to_string() + " | " + den_.to_string(); }

  // Substitutes rational functions into a polynomial. All terms are put
  // over the single common denominator prod_i den_i^{max_i}, which keeps the
  // result polynomial-sized instead of compounding denominators term by term.
  // A reducer, when given, keeps every intermediate in reduced form.
  static RatFun subst_poly_into(const Poly& p, const std::map<std::string, RatFun>& subs,
                                const Reducer* red = nullptr) {
    if (p.is_zero()) return RatFun(Rational(0));
    auto maybe_reduce = [&](Poly q) { return red ? red->reduce(std::move(q)) : q; };
    const std::size_t nv = p.vars().size();
    std::vector<RatFun> images(nv);
    for (std::size_t i = 0; i < nv; ++i) {
      auto it = subs.find(p.vars()[i]);
      images[i] = (it == subs.end()) ? RatFun::var(p.vars()[i]) : it->second;
    }
    std::vector<std::uint32_t> maxe(nv, 0);
    for (const auto& [m, c] : p.terms()) {
      for (std::size_t i = 0; i < nv; ++i) maxe[i] = std::max(maxe[i], m[i]);
    }
    // Power tables for numerators and denominators.
    std::vector<std::vector<Poly>> num_pow(nv), den_pow(nv);
    for (std::size_t i = 0; i < nv; ++i) {
      num_pow[i].push_back(Poly::constant(1));
      den_pow[i].push_back(Poly::constant(1));
      for (std::uint32_t e = 1; e <= maxe[i]; ++e) {
        num_pow[i].push_back(maybe_reduce(num_pow[i].back() * images[i].num()));
        den_pow[i].push_back(maybe_reduce(den_pow[i].back() * images[i].den()));
      }
    }
    Poly num_acc;
    for (const auto& [m, c] : p.terms()) {
      Poly t = Poly::constant(c);
      for (std::size_t i = 0; i < nv; ++i) {
        if (maxe[i] == 0) continue;
        if (m[i] > 0) t = maybe_reduce(t * num_pow[i][m[i]]);
        if (maxe[i] > m[i]) t = maybe_reduce(t * den_pow[i][maxe[i] - m[i]]);
      }
      num_acc += t;
    }
    Poly den_acc = Poly::constant(1);
    for (std::size_t i = 0; i < nv; ++i) {
      den_acc = maybe_reduce(den_acc * den_pow[i][maxe[i]]);
    }
    return RatFun(std::move(num_acc), std::move(den_acc));
  }

 private:
  struct no_normalize {};
  RatFun(Poly num, Poly den, no_normalize) : num_(std::move(num)), den_(std::move(den)) {}

  void normalize() {
    if (den_.is_zero()) throw eval_domain_error("rational function with identically-zero denominator");
    if (num_.is_zero()) {
      den_ = Poly::constant(1);
      return;
    }
    // Cancel any shared monomial factor.
    {
      const Monomial cn = num_.monomial_content();
      const Monomial cd = den_.monomial_content();
      Monomial shared;
      bool nontrivial = false;
      // Intersect over the union of variable lists by name.
      std::map<std::string, std::uint32_t> en, ed;
      for (std::size_t i = 0; i < cn.size(); ++i) en[num_.vars()[i]] = cn[i];
      for (std::size_t i = 0; i < cd.size(); ++i) ed[den_.vars()[i]] = cd[i];
      std::map<std::string, std::uint32_t> common;
      for (const auto& [v, e] : en) {
        auto it = ed.find(v);
        if (it != ed.end() && e > 0 && it->second > 0) {
          common[v] = std::min(e, it->second);
          nontrivial = true;
        }
      }
      if (nontrivial) {
        auto strip = [&common](Poly& p) {
          Monomial content(p.vars().size(), 0);
          for (std::size_t i = 0; i < p.vars().size(); ++i) {
            auto it = common.find(p.vars()[i]);
            if (it != common.end()) content[i] = it->second;
          }
          p = p.divide_monomial(content);
        };
        strip(num_);
        strip(den_);
      }
    }
    // Scalar normalization: integer coefficients with trivial joint content,
    // positive leading denominator coefficient.
    const Rational scale = make_rational(lcm(num_.denominator_lcm(), den_.denominator_lcm()), 1);
    num_ = num_ * scale;
    den_ = den_ * scale;
    Integer g = gcd(num_.numerator_gcd(), den_.numerator_gcd());
    if (den_.leading_coefficient() < 0) g = -g;
    if (g != 0 && g != 1) {
      const Rational inv = make_rational(1, 1) / Rational(g);
      num_ = num_ * inv;
      den_ = den_ * inv;
    }
  }

  Poly num_;
  Poly den_;
};

inline RatFun operator+(const RatFun& a, const Rational& c) { return a + RatFun(c); }
inline RatFun operator-(const RatFun& a, const Rational& c) { return a - RatFun(c); }
inline RatFun operator*(const RatFun& a, const Rational& c) { return a * RatFun(c); }
inline RatFun operator*(const Rational& c, const RatFun& a) { return a * RatFun(c); }

}  // namespace spraykit

#pragma once

// Lengths |h(φ^n(w))| obey x_{n+1} = 2x_n - x_{n-1} + x_{n-2}, whose
// characteristic polynomial t^3 - 2t^2 + t - 1 has a real root β and a
// complex pair λ, conj(λ). This header solves such sequences in closed form
// with rigorous interval enclosures, bounds the family ratios
// (K + Σ x_{m+2j}) / x_{m+2J} for all J, and gives 1 + β²/(β²-1).

#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "fewpal/rational.hpp"

namespace fewpal {

// Closed interval of doubles; every operation rounds outward by one ulp,
// which covers the half-ulp error of round-to-nearest.
struct Interval {
  double lo = 0, hi = 0;

  Interval() = default;
  Interval(double v) : lo(v), hi(v) {}  // exact doubles only
  Interval(double l, double h) : lo(l), hi(h) {}

  static Interval outward(double l, double h) {
    return {std::nextafter(l, -INFINITY), std::nextafter(h, INFINITY)};
  }
  static Interval of(const Rational& r) {
    const double d = r.to_double();
    return outward(d, d);
  }

  double mid() const { return lo + (hi - lo) / 2; }
  double width() const { return hi - lo; }
  double mag() const { return std::max(std::abs(lo), std::abs(hi)); }
  bool contains(double v) const { return lo <= v && v <= hi; }
  bool positive() const { return lo > 0; }
  bool negative() const { return hi < 0; }

  friend Interval operator+(Interval a, Interval b) { return outward(a.lo + b.lo, a.hi + b.hi); }
  friend Interval operator-(Interval a, Interval b) { return outward(a.lo - b.hi, a.hi - b.lo); }
  friend Interval operator-(Interval a) { return {-a.hi, -a.lo}; }
  friend Interval operator*(Interval a, Interval b) {
    const double p[] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
    return outward(*std::min_element(p, p + 4), *std::max_element(p, p + 4));
  }
  friend Interval operator/(Interval a, Interval b) {
    if (b.lo <= 0 && b.hi >= 0) throw std::domain_error("interval division by an interval containing 0");
    const double p[] = {a.lo / b.lo, a.lo / b.hi, a.hi / b.lo, a.hi / b.hi};
    return outward(*std::min_element(p, p + 4), *std::max_element(p, p + 4));
  }
};

inline Interval sqr(Interval a) {
  if (a.lo <= 0 && a.hi >= 0) return {0.0, std::nextafter(a.mag() * a.mag(), INFINITY)};
  const double l = std::min(std::abs(a.lo), std::abs(a.hi)), h = a.mag();
  return Interval::outward(l * l, h * h);
}

// Square root of the non-negative part; outward rounding can push a sum of
// squares just below zero.
inline Interval sqrt(Interval a) {
  if (a.hi < 0) throw std::domain_error("interval square root of a negative value");
  return {a.lo <= 0 ? 0.0 : std::nextafter(std::sqrt(a.lo), -INFINITY), std::nextafter(std::sqrt(a.hi), INFINITY)};
}

inline Interval pow(Interval a, std::size_t n) {
  Interval r(1.0);
  for (std::size_t i = 0; i < n; ++i) r = r * a;
  return r;
}

inline Interval hull(Interval a, Interval b) { return {std::min(a.lo, b.lo), std::max(a.hi, b.hi)}; }

struct ComplexInterval {
  Interval re, im;

  friend ComplexInterval operator+(const ComplexInterval& a, const ComplexInterval& b) {
    return {a.re + b.re, a.im + b.im};
  }
  friend ComplexInterval operator-(const ComplexInterval& a, const ComplexInterval& b) {
    return {a.re - b.re, a.im - b.im};
  }
  friend ComplexInterval operator*(const ComplexInterval& a, const ComplexInterval& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend ComplexInterval operator/(const ComplexInterval& a, const ComplexInterval& b) {
    const Interval d = b.norm2();
    const ComplexInterval n = a * b.conj();
    return {n.re / d, n.im / d};
  }
  ComplexInterval conj() const { return {re, -im}; }
  Interval norm2() const { return sqr(re) + sqr(im); }
  Interval abs() const { return sqrt(norm2()); }
};

inline ComplexInterval real(Interval x) { return {x, Interval(0.0)}; }

inline ComplexInterval pow(ComplexInterval a, std::size_t n) {
  ComplexInterval r{Interval(1.0), Interval(0.0)};
  for (std::size_t i = 0; i < n; ++i) r = r * a;
  return r;
}

// Roots of t^3 - 2t^2 + t - 1 and the constants of one sequence
// x_n = A β^n + B λ^n + conj(B) conj(λ)^n.
struct CubicRoots {
  Interval beta;
  ComplexInterval lambda;  // imaginary part positive; the third root is its conjugate

  static Interval residual(Interval t) { return ((t - Interval(2.0)) * t + Interval(1.0)) * t - Interval(1.0); }
  static ComplexInterval residual(const ComplexInterval& t) {
    const ComplexInterval one = real(Interval(1.0)), two = real(Interval(2.0));
    return ((t - two) * t + one) * t - one;
  }
};

// β by bisection on exact rationals, then the complex pair from the root
// relations β + 2 Re λ = 2 and β |λ|² = 1.
inline CubicRoots cubic_roots(unsigned bisections = 64) {
  auto p = [](const Rational& t) { return ((t - Rational(2)) * t + Rational(1)) * t - Rational(1); };
  Rational lo = Rational::parse("175/100"), hi = Rational::parse("176/100");
  if (!(p(lo) < Rational(0) && Rational(0) < p(hi))) throw std::logic_error("root not bracketed");
  for (unsigned i = 0; i < bisections; ++i) {
    Rational m = (lo + hi) / Rational(2);
    (p(m) < Rational(0) ? lo : hi) = m;
  }
  CubicRoots r;
  r.beta = hull(Interval::of(lo), Interval::of(hi));
  const Interval re = (Interval(2.0) - r.beta) / Interval(2.0);
  const Interval mod2 = Interval(1.0) / r.beta;
  r.lambda = {re, sqrt(mod2 - re * re)};
  return r;
}

struct CubicConstants {
  std::int64_t x0 = 0, x1 = 0, x2 = 0;  // seeds
  CubicRoots roots;
  Interval A;
  ComplexInterval B;  // the conjugate constant is conj(B)

  // enclosure of x_n
  Interval value(std::size_t n) const {
    return A * pow(roots.beta, n) + Interval(2.0) * (B * pow(roots.lambda, n)).re;
  }

  // exact x_n from the recurrence
  std::int64_t exact(std::size_t n) const {
    std::int64_t a = x0, b = x1, c = x2;
    if (n == 0) return a;
    if (n == 1) return b;
    for (std::size_t i = 2; i < n; ++i) {
      const std::int64_t d = 2 * c - b + a;
      a = b;
      b = c;
      c = d;
    }
    return c;
  }

  // widest enclosure among the constants
  double error_radius() const {
    return std::max({A.width(), B.re.width(), B.im.width(), roots.beta.width(), roots.lambda.re.width(),
                     roots.lambda.im.width()}) /
           2;
  }
};

inline CubicConstants sequence_solver(std::int64_t x0, std::int64_t x1, std::int64_t x2) {
  CubicConstants k{x0, x1, x2, cubic_roots(), {}, {}};
  const Interval b = k.roots.beta;
  const ComplexInterval l1 = k.roots.lambda, l2 = l1.conj(), bc = real(b);
  const Interval X0(static_cast<double>(x0)), X1(static_cast<double>(x1)), X2(static_cast<double>(x2));
  // Vandermonde solution
  k.A = (X0 * l1.norm2() - Interval(2.0) * X1 * l1.re + X2) / (bc - l1).norm2();
  const ComplexInterval num = real(X0) * bc * l2 - real(X1) * (bc + l2) + real(X2);
  const ComplexInterval den = (bc - l1) * (l2 - l1);
  if (den.norm2().lo <= 0) throw std::domain_error("singular Vandermonde system");
  k.B = num / den;
  return k;
}

// 1 + β²/(β²-1), the asymptotic critical exponent shared by p, nu(p), mu(p).
inline Interval asymptotic_exponent() {
  const Interval b2 = pow(cubic_roots().beta, 2);
  return Interval(1.0) + b2 / (b2 - Interval(1.0));
}

// A family of bispecials whose length ratio over the shortest return is
//   R(J) = (K + Σ_{j=0..J} x_{m+2j}) / x_{m+2J},   J ≥ 0,
// with paper index n = J + shift. An optional exceptional first member is
// given by explicit lengths.
struct FamilyRatioSpec {
  std::string word;    // p, nu_p, mu_p
  char family = 'A';
  std::int64_t K = 0;
  std::size_t m = 0;   // parity offset of the summed terms
  std::size_t shift = 0;
  std::int64_t seed[3] = {0, 0, 0};
  std::optional<std::pair<std::int64_t, std::int64_t>> exceptional;  // n = 0 lengths |v|, |r|
};

inline std::vector<FamilyRatioSpec> family_ratio_specs(const std::string& word) {
  const std::int64_t a[3] = {3, 5, 9}, b[3] = {2, 4, 7};        // |φ^n(012)|, |φ^n(01)|
  const std::int64_t c[3] = {6, 10, 17}, d[3] = {4, 7, 13};     // under nu
  const std::int64_t e[3] = {11, 21, 36}, f[3] = {10, 15, 26};  // under mu
  auto mk = [&](char fam, std::int64_t K, std::size_t m, std::size_t shift, const std::int64_t* s,
                std::optional<std::pair<std::int64_t, std::int64_t>> ex = {}) {
    return FamilyRatioSpec{word, fam, K, m, shift, {s[0], s[1], s[2]}, ex};
  };
  if (word == "p") return {mk('A', 1, 1, 1, a, std::pair{1, 2}), mk('B', 0, 0, 0, a), mk('C', 0, 0, 0, b), mk('D', 0, 1, 0, b)};
  if (word == "nu_p") return {mk('A', 4, 1, 1, c, std::pair{4, 3}), mk('B', 1, 0, 0, c), mk('C', 2, 0, 0, d), mk('D', 2, 1, 0, d)};
  if (word == "mu_p") return {mk('A', 6, 1, 1, e), mk('B', 6, 0, 0, e), mk('C', 0, 0, 0, f), mk('D', 8, 1, 0, f)};
  throw std::invalid_argument("no family ratios for '" + word + "'");
}

struct FamilyRatioReport {
  FamilyRatioSpec spec;
  Rational target;
  std::vector<std::pair<std::size_t, Rational>> exact;  // (n, ratio) for n ≤ N
  Rational max_exact;
  std::size_t witness_n = 0;
  std::optional<std::size_t> tail_from_n;  // ratio ≤ target proved for all n ≥ this
  double tail_margin = 0;                  // lower end of the certified slack at that n
  double precision = 0;                    // widest interval used

  bool exact_within() const { return max_exact <= target; }
  bool bounded() const { return exact_within() && tail_from_n.has_value(); }
  std::string verdict() const {
    if (!exact_within()) return "exceeds target";
    return tail_from_n ? "bounded by target" : "inconclusive";
  }
};

// Exact ratios for n ≤ N, then a tail certificate: for J ≥ J0,
//   K - Aβ^m/(β²-1) + 2|B|(T|λ|^{m+2J} + |λ|^m (1 + |λ|^{2J+2}) / |1-λ²|)
//     ≤ A β^{m+2J} (T - β²/(β²-1))
// implies R(J) ≤ T; the left side falls and the right side grows with J, so
// checking J0 suffices.
inline FamilyRatioReport family_ratio_analysis(const FamilyRatioSpec& spec, const Rational& target, std::size_t N = 30) {
  if (N < 2) throw std::invalid_argument("family ratio analysis needs N >= 2");
  FamilyRatioReport rep{spec, target, {}, Rational(0), 0, std::nullopt, 0, 0};
  const CubicConstants k = sequence_solver(spec.seed[0], spec.seed[1], spec.seed[2]);
  if (spec.exceptional) rep.exact.push_back({0, Rational(spec.exceptional->first, spec.exceptional->second)});
  for (std::size_t J = 0; J + spec.shift <= N; ++J) {
    std::int64_t sum = spec.K;
    for (std::size_t j = 0; j <= J; ++j) sum += k.exact(spec.m + 2 * j);
    rep.exact.push_back({J + spec.shift, Rational(sum, k.exact(spec.m + 2 * J))});
  }
  bool first = true;
  for (auto& [n, r] : rep.exact) {
    if (first || rep.max_exact < r) {
      rep.max_exact = r;
      rep.witness_n = n;
      first = false;
    }
  }

  const Interval T = Interval::of(target);
  const Interval beta = k.roots.beta, b2 = beta * beta;
  const Interval tau = T - b2 / (b2 - Interval(1.0));
  const Interval lmod = k.roots.lambda.abs(), babs = k.B.abs();
  const ComplexInterval one = real(Interval(1.0));
  const Interval one_minus_l2 = (one - k.roots.lambda * k.roots.lambda).abs();
  for (std::size_t J = 0; J + spec.shift <= N; ++J) {
    if (!tau.positive()) break;
    const std::size_t top = spec.m + 2 * J;
    const Interval lhs = Interval(static_cast<double>(spec.K)) - k.A * pow(beta, spec.m) / (b2 - Interval(1.0)) +
                         Interval(2.0) * babs *
                             (T * pow(lmod, top) +
                              pow(lmod, spec.m) * (Interval(1.0) + pow(lmod, 2 * J + 2)) / one_minus_l2);
    const Interval rhs = k.A * pow(beta, top) * tau;
    const Interval slack = rhs - lhs;
    rep.precision = std::max({rep.precision, slack.width(), k.error_radius() * 2});
    if (slack.positive()) {
      rep.tail_from_n = J + spec.shift;
      rep.tail_margin = slack.lo;
      break;
    }
  }
  return rep;
}

}  // namespace fewpal

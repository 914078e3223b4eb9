#pragma once

// Repetition exponents of finite words: smallest periods, critical exponents
// and freeness tests against an ExponentBound. All decisions are exact.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "fewpal/rational.hpp"
#include "fewpal/word.hpp"

namespace fewpal {

// Smallest period of w via the failure function.
inline std::size_t smallest_period(std::span<const Letter> w) {
  const std::size_t n = w.size();
  if (n == 0) return 0;
  std::vector<std::size_t> border(n + 1, 0);
  std::size_t k = 0;
  for (std::size_t i = 1; i < n; ++i) {
    while (k > 0 && w[i] != w[k]) k = border[k];
    if (w[i] == w[k]) ++k;
    border[i + 1] = k;
  }
  return n - border[n];
}

// (|v| / p, prefix of length p) with p the smallest period of v.
inline std::pair<Rational, Word> exponent_of(const Word& v) {
  if (v.empty()) throw std::invalid_argument("exponent of the empty word is undefined");
  auto l = v.letters();
  const std::size_t p = smallest_period(l);
  return {Rational(static_cast<std::int64_t>(v.size()), static_cast<std::int64_t>(p)),
          v.prefix(p)};
}

// A maximal repetition: w[start, start+length) has period `period`.
struct Repetition {
  std::size_t start = 0;
  std::size_t length = 0;
  std::size_t period = 0;

  Rational exponent() const {
    return {static_cast<std::int64_t>(length), static_cast<std::int64_t>(period)};
  }
};

namespace detail {

// Maximal run [s, t] of positions i with w[i] == w[i+p] that contains i.
inline std::pair<std::size_t, std::size_t> match_run(std::span<const Letter> w, std::size_t p,
                                                     std::size_t i) {
  std::size_t s = i;
  while (s > 0 && w[s - 1] == w[s - 1 + p]) --s;
  std::size_t t = i;
  while (t + 1 + p < w.size() && w[t + 1] == w[t + 1 + p]) ++t;
  return {s, t};
}

}  // namespace detail

// Repetition of maximal exponent in w (earliest start among ties for a
// period, smallest period among equal exponents). For each period p only
// match runs long enough to beat the current best are located, by sampling
// positions at a stride equal to the required run length.
inline Repetition max_repetition(std::span<const Letter> w) {
  const std::size_t n = w.size();
  if (n == 0) throw std::invalid_argument("critical exponent of the empty word is undefined");
  Repetition best{0, 1, 1};
  for (std::size_t p = 1; p < n; ++p) {
    // need a match run of length m with (m + p) / p > best, i.e.
    // m * best.period > (best.length - best.period) * p
    std::size_t need = (best.length - best.period) * p / best.period + 1;
    if (need > n - p) break;
    std::size_t i = need - 1;
    while (i + p < n) {
      if (w[i] != w[i + p]) {
        i += need;
        continue;
      }
      auto [s, t] = detail::match_run(w, p, i);
      const std::size_t m = t - s + 1;
      if (m * best.period > (best.length - best.period) * p) {
        best = Repetition{s, m + p, p};
        // stride grows with the new best; recompute from the next position
        need = (best.length - best.period) * p / best.period + 1;
        if (need > n - p) break;
        i = t + need;
        continue;
      }
      i = t + 1 + need;
    }
  }
  return best;
}

inline Rational critical_exponent(std::span<const Letter> w) { return max_repetition(w).exponent(); }

inline Rational critical_exponent(const Word& w) {
  auto l = w.letters();
  return critical_exponent(std::span<const Letter>(l));
}

struct Violation {
  Word factor;
  Word period;
  Rational exponent;
  std::size_t start = 0;

  std::size_t end() const { return start + factor.size(); }
};

struct FreenessResult {
  std::optional<Violation> violation;

  bool free() const noexcept { return !violation.has_value(); }
  explicit operator bool() const noexcept { return free(); }
};

// Checks every factor against the bound. On failure reports the forbidden
// repetition with the smallest end position, then the smallest length.
inline FreenessResult is_free(std::span<const Letter> w, const ExponentBound& bound,
                              unsigned alphabet = 0) {
  const std::size_t n = w.size();
  std::size_t best_end = n + 1;
  std::size_t best_len = 0;
  std::size_t best_start = 0;
  for (std::size_t p = 1; p < n; ++p) {
    const std::size_t len = bound.min_violating_length(p);
    if (len > n) break;
    const std::size_t need = len - p;  // required match-run length, ≥ 1
    std::size_t i = need - 1;
    while (i + p < n) {
      if (w[i] != w[i + p]) {
        i += need;
        continue;
      }
      auto [s, t] = detail::match_run(w, p, i);
      if (t - s + 1 >= need) {
        const std::size_t end = s + len;
        if (end < best_end || (end == best_end && len < best_len)) {
          best_end = end;
          best_len = len;
          best_start = s;
        }
        break;  // later runs for this period end later
      }
      i = t + 1 + need;
    }
  }
  if (best_end > n) return {};
  std::vector<Letter> f(w.begin() + static_cast<std::ptrdiff_t>(best_start),
                        w.begin() + static_cast<std::ptrdiff_t>(best_start + best_len));
  Word factor(f, alphabet);
  auto [e, per] = exponent_of(factor);
  return {Violation{factor, per, e, best_start}};
}

inline FreenessResult is_free(const Word& w, const ExponentBound& bound) {
  auto l = w.letters();
  return is_free(std::span<const Letter>(l), bound, w.alphabet_size());
}

// Incremental test used by backtracking: assuming w without its last letter
// satisfies the bound, decides whether w does, by looking only at
// repetitions that end at the last position.
class LastPositionChecker {
 public:
  LastPositionChecker() = default;
  explicit LastPositionChecker(ExponentBound bound, std::size_t max_len = 1024)
      : bound_(std::move(bound)) {
    grow(max_len);
  }

  const ExponentBound& bound() const noexcept { return bound_; }

  // Returns the period of a forbidden suffix repetition, or 0 if none.
  std::size_t violation_at_end(std::span<const Letter> w) {
    const std::size_t n = w.size();
    if (n > min_len_.size()) grow(2 * n);
    const std::size_t last = n - 1;
    for (std::size_t p = 1; p < n; ++p) {
      const std::size_t len = min_len_[p];
      if (len > n) break;
      std::size_t k = 0;
      const std::size_t need = len - p;
      while (k < need && w[last - k] == w[last - k - p]) ++k;
      if (k == need) return p;
    }
    return 0;
  }

 private:
  void grow(std::size_t max_len) {
    const std::size_t from = min_len_.size();
    min_len_.resize(max_len + 1);
    for (std::size_t p = from; p <= max_len; ++p) {
      min_len_[p] = p == 0 ? 0 : bound_.min_violating_length(p);
    }
  }

  ExponentBound bound_;
  std::vector<std::size_t> min_len_;
};

}  // namespace fewpal

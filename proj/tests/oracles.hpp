#pragma once

// Brute-force reference implementations used as test oracles.

#include <cstdint>
#include <set>
#include <string>
#include <vector>

namespace oracle {

inline bool is_pal(const std::string& s) { return std::string(s.rbegin(), s.rend()) == s; }

// Distinct palindromic factors, including the empty word.
inline std::set<std::string> palindromes(const std::string& s) {
  std::set<std::string> out{""};
  for (std::size_t i = 0; i < s.size(); ++i) {
    for (std::size_t j = i + 1; j <= s.size(); ++j) {
      const auto f = s.substr(i, j - i);
      if (is_pal(f)) out.insert(f);
    }
  }
  return out;
}

inline std::size_t period(const std::string& s) {
  for (std::size_t p = 1; p < s.size(); ++p) {
    bool ok = true;
    for (std::size_t i = 0; i + p < s.size() && ok; ++i) ok = s[i] == s[i + p];
    if (ok) return p;
  }
  return s.size();
}

// Largest |f| / period(f) over factors, as a reduced pair (num, den).
inline std::pair<std::size_t, std::size_t> max_exponent(const std::string& s) {
  std::size_t bn = 1, bd = 1;
  for (std::size_t i = 0; i < s.size(); ++i) {
    for (std::size_t j = i + 1; j <= s.size(); ++j) {
      const std::size_t n = j - i, d = period(s.substr(i, n));
      if (n * bd > bn * d) {
        bn = n;
        bd = d;
      }
    }
  }
  return {bn, bd};
}

// Every factor has exponent < num/den (strict false) or ≤ num/den (strict true).
inline bool free_of(const std::string& s, std::size_t num, std::size_t den, bool strict) {
  for (std::size_t i = 0; i < s.size(); ++i) {
    for (std::size_t j = i + 1; j <= s.size(); ++j) {
      const std::size_t n = j - i, p = period(s.substr(i, n));
      if (strict ? n * den > num * p : n * den >= num * p) return false;
    }
  }
  return true;
}

inline std::set<std::string> factors(const std::string& s, std::size_t n) {
  std::set<std::string> out;
  for (std::size_t i = 0; i + n <= s.size(); ++i) out.insert(s.substr(i, n));
  return out;
}

inline std::vector<std::string> all_words(std::size_t n, unsigned k) {
  std::vector<std::string> out{""};
  for (std::size_t l = 0; l < n; ++l) {
    std::vector<std::string> next;
    for (const auto& w : out)
      for (unsigned c = 0; c < k; ++c) next.push_back(w + char('0' + c));
    out = next;
  }
  return out;
}

// Fixed point of 0→01, 1→21, 2→0 by direct string rewriting.
inline std::string p_prefix(std::size_t n) {
  std::string w = "0";
  while (w.size() < n) {
    std::string next;
    for (char c : w) next += c == '0' ? "01" : c == '1' ? "21" : "0";
    w = next;
  }
  return w.substr(0, n);
}

inline std::string apply(const std::vector<std::string>& images, const std::string& w) {
  std::string out;
  for (char c : w) out += images[c - '0'];
  return out;
}

}  // namespace oracle

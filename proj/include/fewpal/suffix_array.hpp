#pragma once

// Suffix array by prefix doubling and LCP array by Kasai's algorithm.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <span>
#include <vector>

#include "fewpal/word.hpp"

namespace fewpal {

struct SuffixArray {
  std::vector<std::uint32_t> sa;   // suffix start positions in lexicographic order
  std::vector<std::uint32_t> lcp;  // lcp[i] = lcp(sa[i-1], sa[i]), lcp[0] = 0
};

inline SuffixArray build_suffix_array(std::span<const Letter> text) {
  const std::size_t n = text.size();
  SuffixArray out;
  out.sa.resize(n);
  std::iota(out.sa.begin(), out.sa.end(), 0U);
  std::vector<std::uint32_t> rank(n), tmp(n);
  for (std::size_t i = 0; i < n; ++i) rank[i] = text[i];
  for (std::size_t k = 1;; k <<= 1) {
    auto key = [&](std::uint32_t i) {
      std::uint64_t second = i + k < n ? rank[i + k] + 1ULL : 0ULL;
      return (static_cast<std::uint64_t>(rank[i]) << 32) | second;
    };
    std::sort(out.sa.begin(), out.sa.end(), [&](std::uint32_t a, std::uint32_t b) { return key(a) < key(b); });
    tmp[out.sa[0]] = 0;
    for (std::size_t i = 1; i < n; ++i) {
      tmp[out.sa[i]] = tmp[out.sa[i - 1]] + (key(out.sa[i - 1]) < key(out.sa[i]) ? 1 : 0);
    }
    rank.swap(tmp);
    if (n == 0 || rank[out.sa[n - 1]] == n - 1) break;
  }
  out.lcp.assign(n, 0);
  std::size_t h = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (rank[i] == 0) {
      h = 0;
      continue;
    }
    const std::size_t j = out.sa[rank[i] - 1];
    while (i + h < n && j + h < n && text[i + h] == text[j + h]) ++h;
    out.lcp[rank[i]] = static_cast<std::uint32_t>(h);
    if (h > 0) --h;
  }
  return out;
}

// Calls f(begin, end) for every maximal block sa[begin, end) of suffixes of
// length ≥ len sharing their first len letters: one block per distinct
// factor of that length.
template <class F>
void for_each_factor_class(const SuffixArray& s, std::size_t text_len, std::size_t len, F&& f) {
  const std::size_t n = s.sa.size();
  std::size_t i = 0;
  while (i < n) {
    if (text_len - s.sa[i] < len) {
      ++i;
      continue;
    }
    std::size_t j = i + 1;
    while (j < n && s.lcp[j] >= len) ++j;
    f(i, j);
    i = j;
  }
}

// Number of distinct factors of every length 0..max_len.
inline std::vector<std::size_t> factor_complexity(const SuffixArray& s, std::size_t text_len, std::size_t max_len) {
  // a suffix of length ≥ n starts a new length-n class unless lcp with its
  // predecessor is ≥ n
  std::vector<std::int64_t> diff(max_len + 2, 0);
  for (std::size_t i = 0; i < s.sa.size(); ++i) {
    const std::size_t len = text_len - s.sa[i];
    const std::size_t from = std::min<std::size_t>(i == 0 ? 0 : s.lcp[i], max_len + 1) + 1;
    const std::size_t to = std::min(len, max_len);  // counts lengths from..to
    if (from <= to) {
      diff[from] += 1;
      diff[to + 1] -= 1;
    }
  }
  std::vector<std::size_t> out(max_len + 1, 0);
  std::int64_t run = 0;
  for (std::size_t n = 1; n <= max_len; ++n) {
    run += diff[n];
    out[n] = static_cast<std::size_t>(run);
  }
  out[0] = 1;
  return out;
}

}  // namespace fewpal

#pragma once

// Morphisms between free monoids over small alphabets: application, fixed
// point prefixes, incidence matrices, uniformity, the synchronizing property
// of uniform morphisms and synchronization points of factors of images.

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "fewpal/word.hpp"

namespace fewpal {

using IncidenceMatrix = std::vector<std::vector<std::uint64_t>>;

struct SynchronizingResult {
  struct Counterexample {
    Letter a, b, c;
    std::size_t offset;  // f(c) occurs in f(ab) at this offset
  };
  std::optional<Counterexample> counterexample;

  bool synchronizing() const noexcept { return !counterexample.has_value(); }
};

class Morphism {
 public:
  Morphism() = default;

  Morphism(std::string name, std::vector<Word> images, unsigned target_alphabet = 0)
      : name_(std::move(name)), images_(std::move(images)) {
    if (images_.empty() || images_.size() > max_alphabet_size) {
      throw std::invalid_argument("morphism needs between 1 and 4 source letters");
    }
    unsigned top = 2;
    for (const auto& im : images_) {
      for (std::size_t i = 0; i < im.size(); ++i) top = std::max<unsigned>(top, im[i] + 1U);
      erasing_ = erasing_ || im.empty();
    }
    target_ = target_alphabet == 0 ? top : target_alphabet;
    if (top > target_) throw std::invalid_argument("image letter outside target alphabet");
    for (auto& im : images_) im = im.with_alphabet(target_);
    injective_ = compute_injective();
  }

  // Text format: one line per source letter, "letter -> image". Blank lines
  // and lines starting with '#' are ignored.
  static Morphism parse(const std::string& name, std::istream& in) {
    std::map<unsigned, Word> by_letter;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      auto first = line.find_first_not_of(" \t\r");
      if (first == std::string::npos || line[first] == '#') continue;
      auto arrow = line.find("->");
      if (arrow == std::string::npos) {
        throw std::invalid_argument(name + ":" + std::to_string(line_no) + ": expected 'letter -> image'");
      }
      auto trim = [](std::string s) {
        auto b = s.find_first_not_of(" \t\r");
        auto e = s.find_last_not_of(" \t\r");
        return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
      };
      std::string lhs = trim(line.substr(0, arrow));
      std::string rhs = trim(line.substr(arrow + 2));
      if (lhs.size() != 1 || lhs[0] < '0' || lhs[0] > '3') {
        throw std::invalid_argument(name + ":" + std::to_string(line_no) + ": bad source letter '" + lhs + "'");
      }
      unsigned letter = static_cast<unsigned>(lhs[0] - '0');
      if (!by_letter.emplace(letter, Word::parse(rhs)).second) {
        throw std::invalid_argument(name + ": letter " + lhs + " defined twice");
      }
    }
    std::vector<Word> images;
    for (unsigned a = 0; a < by_letter.size(); ++a) {
      auto it = by_letter.find(a);
      if (it == by_letter.end()) throw std::invalid_argument(name + ": source letters must be 0..d-1");
      images.push_back(it->second);
    }
    return Morphism(name, std::move(images));
  }

  static Morphism load(const std::string& name, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open morphism file " + path);
    return parse(name, in);
  }

  std::string to_text() const {
    std::ostringstream os;
    for (std::size_t a = 0; a < images_.size(); ++a) os << a << " -> " << images_[a].str() << '\n';
    return os.str();
  }

  const std::string& name() const noexcept { return name_; }
  unsigned source_alphabet() const noexcept { return static_cast<unsigned>(images_.size()); }
  unsigned target_alphabet() const noexcept { return target_; }
  const Word& image(Letter a) const { return images_.at(a); }
  const std::vector<Word>& images() const noexcept { return images_; }
  bool erasing() const noexcept { return erasing_; }
  bool injective() const noexcept { return injective_; }

  std::size_t max_image_length() const {
    std::size_t m = 0;
    for (const auto& im : images_) m = std::max(m, im.size());
    return m;
  }

  void apply_to(std::span<const Letter> w, std::vector<Letter>& out) const {
    for (Letter c : w) {
      if (c >= images_.size()) {
        throw std::invalid_argument("letter " + std::to_string(c) + " outside the source alphabet of " + name_);
      }
      const Word& im = images_[c];
      for (std::size_t i = 0; i < im.size(); ++i) out.push_back(im[i]);
    }
  }

  Word apply(const Word& w) const {
    std::vector<Letter> out;
    auto l = w.letters();
    apply_to(l, out);
    return Word(out, target_);
  }

  Word operator()(const Word& w) const { return apply(w); }

  Word apply_n(Word w, std::size_t times) const {
    for (std::size_t i = 0; i < times; ++i) w = apply(w);
    return w;
  }

  // [M]_{kj} = |image(j)|_k
  IncidenceMatrix incidence_matrix() const {
    IncidenceMatrix m(target_, std::vector<std::uint64_t>(images_.size(), 0));
    for (std::size_t j = 0; j < images_.size(); ++j) {
      auto pv = parikh(images_[j], target_);
      for (std::size_t k = 0; k < target_; ++k) m[k][j] = pv.counts[k];
    }
    return m;
  }

  std::optional<std::size_t> uniform_length() const {
    for (const auto& im : images_) {
      if (im.size() != images_.front().size()) return std::nullopt;
    }
    return images_.front().size();
  }

  // f(ab) = u f(c) v forces u = ε and a = c, or v = ε and b = c.
  SynchronizingResult synchronizing() const {
    auto q = uniform_length();
    if (!q) throw std::logic_error("synchronizing test needs a uniform morphism; " + name_ + " is not");
    const auto d = static_cast<Letter>(images_.size());
    for (Letter a = 0; a < d; ++a) {
      for (Letter b = 0; b < d; ++b) {
        auto ab = (images_[a] + images_[b]).letters();
        for (Letter c = 0; c < d; ++c) {
          auto fc = images_[c].letters();
          for (std::size_t off = 0; off <= *q; ++off) {
            if (off == 0 && a == c) continue;
            if (off == *q && b == c) continue;
            if (std::equal(fc.begin(), fc.end(), ab.begin() + static_cast<std::ptrdiff_t>(off))) {
              return {SynchronizingResult::Counterexample{a, b, c, off}};
            }
          }
        }
      }
    }
    return {};
  }

  bool prolongable(Letter seed) const {
    return seed < images_.size() && images_[seed].size() >= 2 && images_[seed][0] == seed;
  }

  // Length-n prefix of the fixed point starting with seed, expanding the
  // buffer letter by letter behind a read cursor.
  std::vector<Letter> fixed_point_letters(Letter seed, std::size_t n) const {
    if (!prolongable(seed)) {
      throw std::invalid_argument(name_ + " is not prolongable on letter " + std::to_string(seed));
    }
    if (target_ != images_.size()) throw std::invalid_argument(name_ + " is not an endomorphism");
    std::vector<Letter> buf;
    buf.reserve(n + max_image_length());
    const Word& first = images_[seed];
    for (std::size_t i = 0; i < first.size(); ++i) buf.push_back(first[i]);
    for (std::size_t cursor = 1; buf.size() < n; ++cursor) {
      const Word& im = images_[buf[cursor]];
      for (std::size_t i = 0; i < im.size(); ++i) buf.push_back(im[i]);
    }
    buf.resize(n);
    return buf;
  }

  Word fixed_point_prefix(Letter seed, std::size_t n) const {
    return Word(fixed_point_letters(seed, n), target_);
  }

 private:
  // Injective on all words iff the images form a code. Non-erasing and
  // either prefix- or suffix-free images is sufficient; otherwise run the
  // Sardinas–Patterson test, and finally cross-check by brute force on all
  // source words of length ≤ 2k, k the longest image.
  bool compute_injective() const {
    if (erasing_) return false;
    std::set<Word> distinct(images_.begin(), images_.end());
    if (distinct.size() != images_.size()) return false;
    auto free_of = [&](bool prefix) {
      for (std::size_t i = 0; i < images_.size(); ++i) {
        for (std::size_t j = 0; j < images_.size(); ++j) {
          if (i == j || images_[i].size() > images_[j].size()) continue;
          Word part = prefix ? images_[j].prefix(images_[i].size()) : images_[j].suffix(images_[i].size());
          if (part == images_[i]) return false;
        }
      }
      return true;
    };
    if (free_of(true) || free_of(false)) return true;
    return sardinas_patterson();
  }

  bool sardinas_patterson() const {
    std::set<Word> code(images_.begin(), images_.end());
    auto quotient = [](const std::set<Word>& xs, const std::set<Word>& ys) {
      std::set<Word> out;
      for (const auto& x : xs) {
        for (const auto& y : ys) {
          if (x.size() < y.size() && y.prefix(x.size()) == x) out.insert(y.substr(x.size(), y.size()));
        }
      }
      return out;
    };
    std::set<Word> current = quotient(code, code);
    std::set<std::set<Word>> seen;
    while (!current.empty() && seen.insert(current).second) {
      for (const auto& w : current) {
        if (code.count(w)) return false;
      }
      auto next = quotient(code, current);
      auto more = quotient(current, code);
      next.insert(more.begin(), more.end());
      current = std::move(next);
    }
    return true;
  }

  std::string name_;
  std::vector<Word> images_;
  unsigned target_ = 2;
  bool erasing_ = false;
  bool injective_ = false;
};

inline Morphism identity_morphism(unsigned alphabet) {
  std::vector<Word> images;
  for (unsigned a = 0; a < alphabet; ++a) images.push_back(Word({static_cast<Letter>(a)}, alphabet));
  return Morphism("id", std::move(images), alphabet);
}

inline IncidenceMatrix multiply(const IncidenceMatrix& a, const IncidenceMatrix& b) {
  IncidenceMatrix out(a.size(), std::vector<std::uint64_t>(b.front().size(), 0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t k = 0; k < b.size(); ++k)
      for (std::size_t j = 0; j < b.front().size(); ++j) out[i][j] += a[i][k] * b[k][j];
  return out;
}

inline std::vector<std::uint64_t> multiply(const IncidenceMatrix& m, const ParikhVector& v) {
  std::vector<std::uint64_t> out(m.size(), 0);
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < v.counts.size(); ++j) out[i] += m[i][j] * v.counts[j];
  return out;
}

// Characteristic polynomial det(tI - M) of a square integer matrix, highest
// degree first, by the Faddeev–LeVerrier recursion (exact over integers for
// the small matrices used here).
inline std::vector<std::int64_t> characteristic_polynomial(const IncidenceMatrix& m) {
  const std::size_t n = m.size();
  using Mat = std::vector<std::vector<std::int64_t>>;
  Mat a(n, std::vector<std::int64_t>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i][j] = static_cast<std::int64_t>(m[i][j]);
  auto mul = [&](const Mat& x, const Mat& y) {
    Mat z(n, std::vector<std::int64_t>(n, 0));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t j = 0; j < n; ++j) z[i][j] += x[i][k] * y[k][j];
    return z;
  };
  std::vector<std::int64_t> coeff(n + 1, 0);
  coeff[0] = 1;
  Mat mk(n, std::vector<std::int64_t>(n, 0));  // M_0 = 0
  for (std::size_t k = 1; k <= n; ++k) {
    Mat next = mul(a, mk);
    for (std::size_t i = 0; i < n; ++i) next[i][i] += coeff[k - 1];
    mk = next;
    Mat am = mul(a, mk);
    std::int64_t trace = 0;
    for (std::size_t i = 0; i < n; ++i) trace += am[i][i];
    coeff[k] = -trace / static_cast<std::int64_t>(k);
  }
  return coeff;
}

// Synchronization points of w with respect to the morphic image of a
// language given by its factors of one fixed length. A cut position j
// (0 ≤ j ≤ |w|) is a synchronization point when every occurrence of w inside
// the image of a context word puts an image boundary at j.
struct SyncPointResult {
  std::vector<std::size_t> points;
  std::size_t parses = 0;
};

inline SyncPointResult synchronization_points(const Morphism& m, const Word& w,
                                              const std::set<Word>& context) {
  std::optional<std::set<std::size_t>> common;
  std::size_t parses = 0;
  auto target = w.letters();
  for (const auto& v : context) {
    std::vector<Letter> img;
    std::vector<bool> boundary;
    boundary.push_back(true);
    for (std::size_t i = 0; i < v.size(); ++i) {
      const Word& im = m.image(v[i]);
      for (std::size_t k = 0; k < im.size(); ++k) {
        img.push_back(im[k]);
        boundary.push_back(k + 1 == im.size());
      }
    }
    if (img.size() < target.size()) continue;
    for (std::size_t off = 0; off + target.size() <= img.size(); ++off) {
      if (!std::equal(target.begin(), target.end(), img.begin() + static_cast<std::ptrdiff_t>(off))) continue;
      ++parses;
      std::set<std::size_t> cuts;
      for (std::size_t j = 0; j <= target.size(); ++j) {
        if (boundary[off + j]) cuts.insert(j);
      }
      if (!common) {
        common = std::move(cuts);
      } else {
        std::set<std::size_t> keep;
        std::set_intersection(common->begin(), common->end(), cuts.begin(), cuts.end(),
                              std::inserter(keep, keep.begin()));
        common = std::move(keep);
      }
    }
  }
  if (!common) throw std::invalid_argument(w.str() + " does not occur in any image of the context");
  return {std::vector<std::size_t>(common->begin(), common->end()), parses};
}

}  // namespace fewpal

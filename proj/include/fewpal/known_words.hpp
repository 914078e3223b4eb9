#pragma once

// Built-in copies of the morphisms and forbidden sets shipped under data/,
// and generators for prefixes of p, nu(p) and mu(p).

#include <map>
#include <string>
#include <vector>

#include "fewpal/morphism.hpp"
#include "fewpal/rational.hpp"

namespace fewpal::known {

inline Morphism make(const std::string& name, std::initializer_list<const char*> images) {
  std::vector<Word> w;
  for (const char* s : images) w.push_back(Word::parse(s));
  return Morphism(name, std::move(w));
}

inline Morphism phi() { return make("phi", {"01", "21", "0"}); }
inline Morphism mu() { return make("mu", {"011001", "1001", "0"}); }
inline Morphism nu() { return make("nu", {"011", "0", "01"}); }

// Uniform morphisms mapping free ternary or binary words to binary words
// with a bounded number of palindromes.
struct TransferData {
  std::string id;
  Morphism morphism;
  ExponentBound source;
  ExponentBound target;
  std::size_t palindromes;
};

inline std::vector<TransferData> transfer_instances() {
  const auto s73 = parse_bound("7/3+");
  return {
      {"thm3a",
       make("thm3a", {"001011001011100101110010110010111001011", "100101100101100101110010110010111001011"}),
       s73, parse_bound("10/3+"), 11},
      {"thm3b",
       make("thm3b", {"000101100010111000101110001011000101110001011",
                      "100010110001011000101110001011000101110001011"}),
       s73, parse_bound("23/7+"), 12},
      {"thm3c", make("thm3c", {"0001011", "1001011"}), s73, parse_bound("3+"), 13},
      {"thm3d", make("thm3d", {"001", "101"}), s73, parse_bound("8/3+"), 15},
      {"thm3e",
       make("thm3e", {"001011001100101100101001011001100101100110010100101100101001011001100101",
                      "100110010100101100110010110010100101100110010100101100101001011001100101"}),
       s73, parse_bound("13/5+"), 18},
      {"thm3f",
       make("thm3f", {"0010110010110101100101001011001010010110101100101",
                      "1010110010100101100101101011001010010110101100101"}),
       s73, parse_bound("28/11+"), 19},
      {"thm3g", make("thm3g", {"0011001101", "1001011001"}), s73, parse_bound("5/2+"), 21},
      {"thm3h",
       make("thm3h", {"001101100101100110110010011001011001", "101100100110100110110010011001011001",
                      "001101100110100110110010011001011001"}),
       parse_bound("2"), parse_bound("7/3+"), 25},
  };
}

inline std::vector<Word> words(std::initializer_list<const char*> list) {
  std::vector<Word> out;
  for (const char* s : list) out.push_back(Word::parse(s));
  return out;
}

// Ternary factors avoided by p, in the order the pre-image lemmas refute
// them under mu and under nu respectively.
inline std::vector<Word> forbidden_ternary() {
  return words({"00", "11", "22", "20", "212", "0101", "02102", "121012", "01021010", "21021012102"});
}
inline std::vector<Word> forbidden_order_mu() {
  return words({"22", "20", "00", "11", "212", "0101", "02102", "121012", "01021010", "21021012102"});
}
inline std::vector<Word> forbidden_order_nu() { return forbidden_ternary(); }

inline std::vector<Word> forbidden_mu_image() {
  return words({"1101", "00100", "10101", "010011", "1011001011", "110010110011", "1011001010010110010"});
}
inline std::vector<Word> forbidden_nu_image() { return words({"0101", "1011", "010010", "1100110100110011"}); }

inline std::vector<Letter> p_letters(std::size_t n) { return phi().fixed_point_letters(0, n); }

inline std::vector<Letter> image_prefix(const Morphism& m, std::size_t n) {
  // every image is non-empty, so n letters of p are enough
  auto src = p_letters(n);
  std::vector<Letter> out;
  out.reserve(n + m.max_image_length());
  for (Letter c : src) {
    const Word& im = m.image(c);
    for (std::size_t i = 0; i < im.size(); ++i) out.push_back(im[i]);
    if (out.size() >= n) break;
  }
  out.resize(n);
  return out;
}

inline Word p_prefix(std::size_t n) { return Word(p_letters(n), 3); }
inline Word nu_p_prefix(std::size_t n) { return Word(image_prefix(nu(), n), 2); }
inline Word mu_p_prefix(std::size_t n) { return Word(image_prefix(mu(), n), 2); }

// Prefix of the named stream: "p", "nu_p" or "mu_p".
inline std::vector<Letter> stream_letters(const std::string& name, std::size_t n) {
  if (name == "p") return p_letters(n);
  if (name == "nu_p") return image_prefix(nu(), n);
  if (name == "mu_p") return image_prefix(mu(), n);
  throw std::invalid_argument("unknown word '" + name + "' (expected p, nu_p or mu_p)");
}

inline unsigned stream_alphabet(const std::string& name) { return name == "p" ? 3 : 2; }

}  // namespace fewpal::known

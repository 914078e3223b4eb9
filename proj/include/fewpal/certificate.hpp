#pragma once

// Replayable certificates: a command, its parameters, the outcome and the
// evidence, as versioned JSON. Timing fields are excluded from replay
// comparison.

#include <chrono>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

namespace fewpal {

using Json = nlohmann::ordered_json;

inline constexpr const char* certificate_schema = "fewpal-certificate";
inline constexpr int certificate_version = 1;

enum class Outcome { pass, fail, inconclusive };

inline const char* outcome_name(Outcome o) {
  switch (o) {
    case Outcome::pass: return "pass";
    case Outcome::fail: return "fail";
    case Outcome::inconclusive: return "inconclusive";
  }
  return "?";
}

inline Outcome parse_outcome(const std::string& s) {
  if (s == "pass") return Outcome::pass;
  if (s == "fail") return Outcome::fail;
  if (s == "inconclusive") return Outcome::inconclusive;
  throw std::invalid_argument("unknown outcome '" + s + "'");
}

// fail dominates inconclusive, which dominates pass
inline Outcome combine(Outcome a, Outcome b) {
  if (a == Outcome::fail || b == Outcome::fail) return Outcome::fail;
  if (a == Outcome::inconclusive || b == Outcome::inconclusive) return Outcome::inconclusive;
  return Outcome::pass;
}

inline int exit_code(Outcome o) { return o == Outcome::pass ? 0 : o == Outcome::fail ? 1 : 2; }

struct Certificate {
  std::string command;
  Json params = Json::object();
  Outcome outcome = Outcome::inconclusive;
  std::string summary;
  Json evidence = Json::object();
  double seconds = 0;
  std::uint64_t nodes = 0;

  Json to_json() const {
    Json j;
    j["schema"] = certificate_schema;
    j["version"] = certificate_version;
    j["command"] = command;
    j["params"] = params;
    j["outcome"] = outcome_name(outcome);
    j["summary"] = summary;
    j["evidence"] = evidence;
    j["timing"] = {{"seconds", seconds}, {"nodes", nodes}};
    return j;
  }

  static Certificate from_json(const Json& j) {
    if (j.value("schema", "") != certificate_schema) throw std::invalid_argument("not a fewpal certificate");
    if (j.value("version", 0) != certificate_version) {
      throw std::invalid_argument("unsupported certificate version " + std::to_string(j.value("version", 0)));
    }
    Certificate c;
    c.command = j.at("command").get<std::string>();
    c.params = j.at("params");
    c.outcome = parse_outcome(j.at("outcome").get<std::string>());
    c.summary = j.value("summary", "");
    c.evidence = j.at("evidence");
    if (j.contains("timing")) {
      c.seconds = j["timing"].value("seconds", 0.0);
      c.nodes = j["timing"].value("nodes", std::uint64_t{0});
    }
    return c;
  }

  std::string dump() const { return to_json().dump(2) + "\n"; }

  void save(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << dump();
  }

  static Certificate load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read " + path);
    return from_json(Json::parse(in));
  }
};

// Same outcome and byte-identical evidence.
inline bool same_evidence(const Certificate& a, const Certificate& b) {
  return a.outcome == b.outcome && a.evidence.dump() == b.evidence.dump();
}

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

}  // namespace fewpal

// End-to-end runs of the command-line tool.

#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sys/wait.h>

#include "fewpal/certificate.hpp"

namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
};

Run run(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + (env.empty() ? "" : " ") + FEWPAL_CLI + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  std::string out;
  std::array<char, 4096> buf;
  while (std::size_t n = fread(buf.data(), 1, buf.size(), pipe)) out.append(buf.data(), n);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

fs::path temp_dir(const std::string& name) {
  const fs::path p = fs::path(::testing::TempDir()) / name;
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

}  // namespace

TEST(Cli, GreenCellPassesAndReplays) {
  const auto dir = temp_dir("cli_green");
  const auto cert = (dir / "cell.json").string();
  const auto r = run("--out " + cert + " table1 --pal 15 --beta 8/3");
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.out.find("thm3d"), std::string::npos);
  const auto rp = run("replay " + cert);
  EXPECT_EQ(rp.code, 0) << rp.out;
  EXPECT_NE(rp.out.find("match"), std::string::npos);
}

TEST(Cli, TamperedCertificateMismatches) {
  const auto dir = temp_dir("cli_tamper_cert");
  const auto cert = (dir / "g.json").string();
  ASSERT_EQ(run("--out " + cert + " growth --pal 11 --max-n 30 --tolerance 1").code, 0);
  auto j = fewpal::Json::parse(std::ifstream(cert));
  j["evidence"]["counts"][5] = 0;
  std::ofstream(cert) << j.dump(2);
  const auto rp = run("replay " + cert);
  EXPECT_EQ(rp.code, 1);
  EXPECT_NE(rp.out.find("mismatch"), std::string::npos);
}

TEST(Cli, TamperedMorphismFailsByName) {
  const auto dir = temp_dir("cli_tamper_data");
  fs::copy(FEWPAL_DATA_DIR, dir, fs::copy_options::recursive);
  std::ofstream(dir / "morphisms" / "thm3d.txt") << "0 -> 001\n1 -> 100\n";
  const auto r = run("--data " + dir.string() + " verify-all --only 1,2");
  EXPECT_EQ(r.code, 1) << r.out;
  EXPECT_NE(r.out.find("failing: thm3d"), std::string::npos) << r.out;
  const auto cell = run("--data " + dir.string() + " table1 --pal 15 --beta 8/3");
  EXPECT_EQ(cell.code, 1) << cell.out;
}

TEST(Cli, NodeCapGivesInconclusive) {
  const auto r = run("optimality --exp 3 --pal 14 --cap 400", "FEWPAL_NODE_CAP=1000");
  EXPECT_EQ(r.code, 2) << r.out;
  EXPECT_NE(r.out.find("inconclusive"), std::string::npos);
}

TEST(Cli, MemoryCapGivesInconclusive) {
  const auto r = run("verify-all --only 3", "FEWPAL_MEMORY_MB=1");
  EXPECT_EQ(r.code, 2) << r.out;
}

TEST(Cli, UnclassifiedCell) {
  const auto r = run("table1 --pal 12 --beta 11/4");
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.out.find("unclassified"), std::string::npos);
}

TEST(Cli, OptimalitySteps) {
  EXPECT_EQ(run("optimality --pal 8").code, 0);
  EXPECT_EQ(run("optimality --exp 3 --pal 14 --cap 400").code, 0);
  // 7/3+ with 25 palindromes has infinite words, so the cap is reached
  EXPECT_EQ(run("optimality --exp 7/3 --strict --pal 25 --cap 80").code, 1);
}

TEST(Cli, RauzyExport) {
  const auto dir = temp_dir("cli_rauzy");
  const auto arcs = (dir / "arcs.txt").string();
  const auto r = run("rauzy --pal 18 --exp 13/5 --ell 20 --margin 46 --mode weak --compare mu_p --components 4 --export " + arcs);
  EXPECT_EQ(r.code, 0) << r.out;
  std::ifstream in(arcs);
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    EXPECT_EQ(line.size(), 20u);
    ++n;
  }
  EXPECT_EQ(n, 164u);
}

TEST(Cli, StructureAndExponent) {
  EXPECT_EQ(run("structure --word p --max-bs 200 --report families").code, 0);
  EXPECT_EQ(run("exponent --word nu_p --method bispecial").code, 0);
  EXPECT_EQ(run("exponent --word mu_p --method closed-form").code, 0);
  EXPECT_EQ(run("preimage-prove --morphism mu --family F18").code, 0);
}

TEST(Cli, BadArguments) {
  EXPECT_NE(run("table1 --pal 15 --beta x/y").code, 0);
  EXPECT_NE(run("verify-morphism --instance nope").code, 0);
  EXPECT_NE(run("no-such-command").code, 0);
}

TEST(Cli, GridListing) {
  const auto r = run("table1 --list");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("red:7a"), std::string::npos);
  EXPECT_NE(r.out.find("green:thm3h"), std::string::npos);
}

TEST(Cli, ExportedCertificatesReplay) {
  const auto dir = temp_dir("cli_all");
  const auto r = run("verify-all --only 3,5,6,8,12 --out-dir " + dir.string());
  EXPECT_NE(r.out.find("[PASS] 3."), std::string::npos) << r.out;
  std::size_t n = 0;
  for (const auto& f : fs::directory_iterator(dir)) {
    const auto rp = run("replay " + f.path().string());
    EXPECT_EQ(rp.out.rfind("match", 0), 0u) << f.path() << ": " << rp.out;
    ++n;
  }
  EXPECT_GE(n, 8u);
}

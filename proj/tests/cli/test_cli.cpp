#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include <json.hpp>

namespace {

struct Invocation {
  int code = -1;
  std::string out;
};

Invocation cli(const std::string& args) {
  const std::string cmd = std::string(MODSTRAT_CLI) + " " + args + " 2>/dev/null";
  Invocation r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf{};
  while (std::size_t n = fread(buf.data(), 1, buf.size(), pipe)) r.out.append(buf.data(), n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::vector<nlohmann::json> lines(const std::string& s) {
  std::vector<nlohmann::json> out;
  std::istringstream in(s);
  for (std::string l; std::getline(in, l);) out.push_back(nlohmann::json::parse(l));
  return out;
}

}  // namespace

TEST(Cli, ExitCodes) {
  EXPECT_EQ(cli("verify elab --group C2 --cap 4").code, 0);
  EXPECT_EQ(cli("verify elab --group C2 --cap 4 --nil-bound 1").code, 1);
  EXPECT_EQ(cli("verify nosuch").code, 2);
  EXPECT_EQ(cli("verify elab --group Nope").code, 2);
  EXPECT_EQ(cli("verify elab --group S3").code, 2);
  EXPECT_EQ(cli("verify elab --group C2 --cap 0").code, 2);
  EXPECT_EQ(cli("verify maschke --group S3 --ring Z").code, 2);
  EXPECT_EQ(cli("cohomology --group C2 --ring R").code, 2);
  EXPECT_EQ(cli("support --group C2 --ring Z").code, 2);
  EXPECT_EQ(cli("support --group C2 --ring Z --module perm:9").code, 2);
  EXPECT_EQ(cli("").code, 2);
}

TEST(Cli, ReportsAreJsonLines) {
  Invocation r = cli("verify tate-unit --group C3 --tate-range 2");
  ASSERT_EQ(r.code, 0);
  auto js = lines(r.out);
  ASSERT_EQ(js.size(), 5u);
  for (const auto& j : js) {
    EXPECT_EQ(j["check"], "tate-unit");
    EXPECT_TRUE(j["passed"].get<bool>());
    EXPECT_TRUE(j.contains("certificate"));
  }
  auto failed = lines(cli("verify elab --group C2 --cap 4 --nil-bound 1").out);
  EXPECT_TRUE(failed.back().contains("counterexample"));
}

TEST(Cli, DeterministicForFixedSeed) {
  const std::string args = "verify chouinard --group S3,C6 --seed 7 --count 6";
  Invocation a = cli(args), b = cli(args);
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_FALSE(a.out.empty());
  EXPECT_NE(cli("verify chouinard --group S3,C6 --seed 8 --count 6").out, a.out);
}

TEST(Cli, OutFileAndTextFormat) {
  const auto path = std::filesystem::temp_directory_path() / "modstrat_cli_test.jsonl";
  Invocation r = cli("verify fracture --count 3 --seed 2 --out " + path.string());
  ASSERT_EQ(r.code, 0);
  EXPECT_TRUE(r.out.empty());
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  EXPECT_EQ(ss.str(), cli("verify fracture --count 3 --seed 2").out);
  std::filesystem::remove(path);
  Invocation t = cli("verify fracture --count 2 --format text");
  EXPECT_EQ(t.out.rfind("PASS fracture", 0), 0u);
}

TEST(Cli, CohomologyExamples) {
  auto v4 = lines(cli("cohomology --group V4 --ring F2 --cap 6").out).at(0);
  ASSERT_EQ(v4["generators"].size(), 2u);
  for (const auto& g : v4["generators"]) EXPECT_EQ(g["degree"], 1);
  EXPECT_TRUE(v4["relations"].empty());
  for (int n = 0; n <= 6; ++n) EXPECT_EQ(v4["hilbert_data"][n]["free_rank"], n + 1);

  auto c2 = lines(cli("cohomology --group C2 --ring Z --cap 6").out).at(0);
  ASSERT_EQ(c2["generators"].size(), 1u);
  EXPECT_EQ(c2["generators"][0]["degree"], 2);
  EXPECT_EQ(c2["relations"], nlohmann::json::array({"2*x1"}));

  auto q = lines(cli("cohomology --group C2 --ring Q --cap 4").out).at(0);
  EXPECT_TRUE(q["generators"].empty());
  for (int n = 1; n <= 4; ++n) EXPECT_EQ(q["hilbert"][n], "0");
}

TEST(Cli, SupportExamples) {
  auto lx = lines(cli("support --group V4 --ring F2 --module Lzeta:x1").out).at(0);
  EXPECT_EQ(lx["support"]["fibers"], nlohmann::json::parse(R"({"2": [["x1"]]})"));
  auto c6 = lines(cli("support --group C6 --ring Z --module trivial").out).at(0);
  EXPECT_EQ(c6["support"]["fibers"], nlohmann::json::parse(R"({"2": [[]], "3": [[]]})"));
  auto reg = lines(cli("support --group C2 --ring Z --module regular").out).at(0);
  EXPECT_TRUE(reg["support"]["fibers"].empty());
  auto perm = lines(cli("support --group C6 --ring Z --module perm:3").out).at(0);
  EXPECT_EQ(perm["support"]["fibers"], nlohmann::json::parse(R"({"2": [[]]})"));
}

TEST(Cli, GroupFromFile) {
  const auto path = std::filesystem::temp_directory_path() / "modstrat_cli_c3.json";
  {
    std::ofstream out(path);
    out << R"({"name": "C3file", "table": [[0,1,2],[1,2,0],[2,0,1]]})";
  }
  Invocation r = cli("verify tate-unit --tate-range 1 --group " + path.string());
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("C3file"), std::string::npos);
  std::filesystem::remove(path);
}

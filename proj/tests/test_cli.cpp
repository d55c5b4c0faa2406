// Runs the installed binary end to end on the documents in tests/data.

#include <gtest/gtest.h>
#include <json.hpp>
#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  int code = -1;
  std::string out;
};

// stderr is discarded unless `merge` is set.
Outcome run(const std::string& args, bool merge = false) {
  const std::string cmd = std::string(PECKIT_BINARY) + " " + args + (merge ? " 2>&1" : " 2>/dev/null");
  Outcome r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string data(const std::string& name) { return std::string(PECKIT_DATA_DIR) + "/" + name; }

std::string read_file(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("peckit_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  fs::path dir_;
};

}  // namespace

TEST_F(Cli, DecideConeMember) {
  const Outcome r = run("decide " + data("cmin_a.json"));
  EXPECT_EQ(r.code, 0);
  const json j = json::parse(r.out);
  EXPECT_EQ(j["verdict"], "positive_energy");
  EXPECT_EQ(j["certificate"]["lower_bound"]["exact"], "0");
  EXPECT_TRUE(j["certificate"]["cone"]["member"].get<bool>());
}

TEST_F(Cli, DecideCrossing) {
  const Outcome r = run("decide " + data("crossing_a.json"));
  EXPECT_EQ(r.code, 1);
  const json j = json::parse(r.out);
  EXPECT_EQ(j["verdict"], "not_positive_energy");
  EXPECT_EQ(j["certificate"]["family"]["name"], "strict accumulation crossing");
  EXPECT_EQ(j["certificate"]["family"]["levels"][0]["exact"], "0");
  EXPECT_EQ(j["certificate"]["family"]["r_values"][1]["exact"], "1");
}

TEST_F(Cli, BadRatio) {
  const Outcome r = run("decide " + data("bad_ratio.json"), true);
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.out.find("blocks[0].tails[0].ratio: ratio must lie in (0, 1)"), std::string::npos) << r.out;
}

TEST_F(Cli, UsageErrors) {
  EXPECT_EQ(run("").code, 2);
  EXPECT_EQ(run("decide").code, 2);
  EXPECT_EQ(run("decide /nonexistent.json").code, 2);
  EXPECT_EQ(run("profile " + data("crossing_a.json") + " --depths 3,2").code, 2);
  EXPECT_EQ(run("profile " + data("crossing_a.json") + " --threshold 1").code, 2);
  EXPECT_EQ(run("--help").code, 0);
}

TEST_F(Cli, DecomposeGeometricEquality) {
  const Outcome r = run("decompose " + data("geometric_equality_a.json"));
  EXPECT_EQ(r.code, 0);
  const json d = json::parse(r.out)["certificate"]["decomposition"];
  EXPECT_EQ(d["C"]["hi"]["exact"], "2");
  EXPECT_EQ(d["lower_bound"]["exact"], "-4");
  EXPECT_EQ(d["plan"]["thresholds"][1]["a"]["exact"], "0");
  EXPECT_TRUE(d.contains("chi_min"));
}

TEST_F(Cli, DecomposeConeMemberHasNoSum) {
  const Outcome r = run("decompose " + data("cmin_a.json"));
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(json::parse(r.out)["certificate"]["decomposition"]["chi_sum"].empty());
}

TEST_F(Cli, DecomposeRefusesNegative) {
  const Outcome r = run("decompose " + data("crossing_a.json"));
  EXPECT_EQ(r.code, 1);
  const json j = json::parse(r.out);
  EXPECT_FALSE(j["certificate"].contains("decomposition"));
  EXPECT_NE(j["refusal"].get<std::string>().find("crossing"), std::string::npos);
}

TEST_F(Cli, Bound) {
  const Outcome r = run("bound " + data("threshold_a.json"));
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(json::parse(r.out)["lower_bound"]["exact"], "-24");
  EXPECT_EQ(run("bound " + data("harmonic_b.json")).code, 1);
}

TEST_F(Cli, ProfileCrossing) {
  const fs::path out = dir_ / "crossing.json";
  const Outcome r = run("profile " + data("crossing_a.json") + " --depths 1..100 --out " + out.string());
  EXPECT_EQ(r.code, 0);
  const std::string csv = read_file(dir_ / "crossing.csv");
  std::istringstream lines(csv);
  std::string line;
  std::getline(lines, line);
  EXPECT_EQ(line, "depth,support,infimum,decimal");
  for (int k = 1; k <= 100; ++k) {
    ASSERT_TRUE(std::getline(lines, line));
    EXPECT_EQ(line, std::to_string(k) + "," + std::to_string(2 * k) + ",-" + std::to_string(k) + ",-" +
                        std::to_string(k));
  }
  EXPECT_EQ(json::parse(read_file(out))["profile"].size(), 100u);
}

TEST_F(Cli, ProfilePositiveStaysInBound) {
  const fs::path csv = dir_ / "geo.csv";
  const Outcome r = run("profile " + data("geometric_equality_a.json") + " --depths 1..200 --threshold -100 --csv " +
                    csv.string());
  EXPECT_EQ(r.code, 0);
  const json j = json::parse(r.out);
  EXPECT_TRUE(j["divergence_check"]["consistent"].get<bool>());
  EXPECT_TRUE(j["divergence_check"]["crossing_depth"].is_null());
  for (const json& row : j["profile"]) {
    const std::string v = row["infimum"]["exact"];
    EXPECT_NE(v.find('-'), std::string::npos);
    // -2 < value <= 0 for the truncations, inside [-4, 0].
    EXPECT_GT(std::stod(row["infimum"]["decimal"].get<std::string>()), -4);
  }
  EXPECT_TRUE(fs::exists(csv));
}

TEST_F(Cli, ProfileHarmonicThreshold) {
  const Outcome r = run("profile " + data("harmonic_b.json") + " --depths 1..100 --threshold -10");
  EXPECT_EQ(r.code, 0);
  const json c = json::parse(r.out)["divergence_check"];
  EXPECT_EQ(c["crossing_depth"], 83);
  EXPECT_EQ(c["predicted"]["depth"], 83);
  EXPECT_TRUE(c["consistent"].get<bool>());
}

TEST_F(Cli, ProfileNoCsvWithoutPaths) {
  const Outcome r = run("profile " + data("crossing_a.json") + " --depths 1..3");
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(fs::is_empty(dir_));
}

TEST_F(Cli, Spectrum) {
  Outcome a = run("spectrum " + data("spectrum_a.json") + " --depth 1");
  EXPECT_EQ(a.code, 0);
  json ja = json::parse(a.out);
  ASSERT_EQ(ja["histogram"].size(), 2u);
  EXPECT_EQ(ja["histogram"][0]["value"]["exact"], "0");
  EXPECT_EQ(ja["histogram"][1]["value"]["exact"], "5");
  Outcome b = run("spectrum " + data("spectrum_b.json") + " --depth 1");
  json jb = json::parse(b.out);
  EXPECT_EQ(jb["minimum"]["exact"], "-6");
  // Beyond the enumeration bound.
  EXPECT_EQ(run("spectrum " + data("harmonic_b.json") + " --depth 9").code, 2);
}

TEST_F(Cli, ByteIdenticalReports) {
  for (const char* args : {"decompose ", "decide "}) {
    const std::string a = run(std::string(args) + data("threshold_a.json")).out;
    EXPECT_EQ(a, run(std::string(args) + data("threshold_a.json")).out);
  }
  const std::string p = "profile " + data("harmonic_b.json") + " --depths 1..300 --threshold -5";
  EXPECT_EQ(run(p).out, run(p).out);
}

TEST_F(Cli, Selftest) {
  const Outcome a = run("selftest --cases 200 --seed 7", true);
  EXPECT_EQ(a.code, 0) << a.out;
  EXPECT_NE(a.out.find("PASS"), std::string::npos);
  EXPECT_EQ(a.out.find("FAIL"), std::string::npos);
  const Outcome b = run("selftest --cases 200 --seed 7");
  const Outcome c = run("selftest --cases 200 --seed 7");
  EXPECT_EQ(b.out, c.out);
  EXPECT_EQ(json::parse(b.out)["suites"][0]["cases"], 200);
  EXPECT_NE(json::parse(run("selftest --cases 200 --seed 8").out)["suites"][0]["digest"],
            json::parse(b.out)["suites"][0]["digest"]);
}

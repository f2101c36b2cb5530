#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli/app.hpp"
#include "cli/run_config.hpp"
#include "oracles.hpp"
#include "ssgauss/sampler.hpp"

namespace fs = std::filesystem;
using ssgauss::cli::json;

namespace {

struct Run {
  int code = -1;
  std::string out;
  std::string err;
};

Run ssg(std::vector<std::string> args) {
  args.insert(args.begin(), "ssgauss");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  Run r;
  r.code = ssgauss::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

class CliDir : public ::testing::Test {
 protected:
  void SetUp() override {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    dir_ = fs::temp_directory_path() / (std::string("ssgauss_cli_") + info->name());
    fs::remove_all(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string dir(const std::string& sub = "") const { return (dir_ / sub).string(); }

  static json load(const fs::path& p) {
    std::ifstream is(p);
    return json::parse(is);
  }
  static std::string slurp(const fs::path& p) {
    std::ifstream is(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(is), {}};
  }

  fs::path dir_;
};

}  // namespace

TEST_F(CliDir, ModelsTable) {
  const auto r = ssg({"models"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("swanson α=0.5 β=0.5 ν=2"), std::string::npos) << r.out;
  const auto j = ssg({"models", "--json"});
  EXPECT_EQ(j.code, 0);
  const auto doc = json::parse(j.out);
  EXPECT_EQ(doc["models"].size(), 6u);
  EXPECT_EQ(doc["models"][3]["id"], "swanson");
}

TEST_F(CliDir, UnknownFlagIsUsageError) {
  EXPECT_EQ(ssg({"models", "--frobnicate"}).code, 2);
  EXPECT_EQ(ssg({}).code, 2);
  EXPECT_EQ(ssg({"variance", "--f", "cosine:2", "--out", dir()}).code, 2);
  EXPECT_EQ(ssg({"variance", "--model", "bm", "--out", dir()}).code, 2);
}

TEST_F(CliDir, VarianceSwanson) {
  const auto r = ssg({"variance", "--model", "swanson", "--f", "hermite:2", "--out", dir()});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = load(dir_ / "variance.json");
  const double ref = static_cast<double>(oracle::sigma_q_sq(0.5, 2));
  EXPECT_NEAR(j["sigma_sq"].get<double>(), ref, 1e-10 * ref);
  EXPECT_EQ(j["alpha"], 0.5);
  EXPECT_TRUE(j["per_chaos"].contains("2"));
  EXPECT_TRUE(j["tails"].contains("2"));
  EXPECT_EQ(j["config"]["model"]["model"], "swanson");
  EXPECT_TRUE(j.contains("version"));
}

TEST_F(CliDir, VarianceBrownianIsTwo) {
  ASSERT_EQ(ssg({"variance", "--model", "fbm", "--H", "0.5", "--out", dir()}).code, 0);
  EXPECT_EQ(load(dir_ / "variance.json")["sigma_sq"].get<double>(), 2.0);
}

TEST_F(CliDir, VarianceGateRunsNothing) {
  const auto r = ssg({"variance", "--alpha", "1.6", "--f", "hermite:2", "--out", dir()});
  EXPECT_EQ(r.code, 3);
  EXPECT_NE(r.err.find("alpha < 2 - 1/d"), std::string::npos) << r.err;
  EXPECT_FALSE(fs::exists(dir_));
}

TEST_F(CliDir, CltErrors) {
  EXPECT_EQ(ssg({"clt", "--n", "512", "--N", "100", "--M", "200", "--out", dir()}).code, 2);
  const auto r = ssg({"clt", "--f", "hermite:1", "--M", "200", "--out", dir()});
  EXPECT_EQ(r.code, 3);
  EXPECT_NE(r.err.find("d >= 2"), std::string::npos);
  EXPECT_EQ(ssg({"clt", "--n", "64,128", "--M", "200", "--out", dir()}).code, 2);
  EXPECT_FALSE(fs::exists(dir_));
}

TEST_F(CliDir, CltWritesJsonAndCsv) {
  const auto r = ssg({"clt", "--model", "fbm", "--H", "0.5", "--n", "128", "--M", "600",
                      "--seed", "5", "--t", "0.5,1", "--out", dir()});
  ASSERT_TRUE(r.code == 0 || r.code == 1) << r.err;
  const auto j = load(dir_ / "experiment.json");
  EXPECT_EQ(j["result"]["times"].size(), 2u);
  EXPECT_EQ(r.code == 0, j["result"]["passed"].get<bool>());
  std::ifstream csv(dir_ / "summary.csv");
  std::string header;
  std::getline(csv, header);
  EXPECT_EQ(header, "t,exact_var,sample_var,se,kurtosis_ratio,ks_stat,ks_p");
}

TEST_F(CliDir, ConfigPrecedenceAndSeedFallback) {
  fs::create_directories(dir_);
  {
    std::ofstream os(dir_ / "cfg.json");
    os << R"({"model": {"model": "bifbm", "H": 0.6, "K": 0.8}, "M": 150, "seed": 9,
             "f": {"f": "even_power", "p": 2}})";
  }
  const std::string cfg = (dir_ / "cfg.json").string();
  auto doc = json::parse(ssg({"clt", "--config", cfg, "--print-config"}).out);
  EXPECT_EQ(doc["M"], 150);
  EXPECT_EQ(doc["model"]["K"], 0.8);
  EXPECT_EQ(doc["f"]["f"], "even_power");
  EXPECT_EQ(doc["seed"], 9);
  doc = json::parse(ssg({"clt", "--config", cfg, "--M", "300", "--K", "0.5", "--print-config"}).out);
  EXPECT_EQ(doc["M"], 300);
  EXPECT_EQ(doc["model"]["K"], 0.5);
  EXPECT_EQ(doc["model"]["H"], 0.6);

  ::setenv("SSGAUSS_SEED", "4242", 1);
  EXPECT_EQ(json::parse(ssg({"clt", "--print-config"}).out)["seed"], 4242);
  EXPECT_EQ(json::parse(ssg({"clt", "--config", cfg, "--print-config"}).out)["seed"], 9);
  EXPECT_EQ(json::parse(ssg({"clt", "--seed", "1", "--print-config"}).out)["seed"], 1);
  ::unsetenv("SSGAUSS_SEED");
  EXPECT_EQ(json::parse(ssg({"clt", "--print-config"}).out)["seed"], 12345);
}

TEST_F(CliDir, ConfigRoundTripAndReproducibility) {
  fs::create_directories(dir_);
  const std::string out1 = dir("a"), out2 = dir("b");
  const auto printed = ssg({"clt", "--model", "swanson", "--n", "128", "--M", "300", "--seed", "77",
                            "--t", "0.5,1", "--out", out1, "--print-config"});
  ASSERT_EQ(printed.code, 0);
  const json cfg = json::parse(printed.out);
  {
    std::ofstream os(dir_ / "cfg.json");
    os << cfg.dump(2);
  }
  const int c1 = ssg({"clt", "--config", dir("cfg.json")}).code;
  ASSERT_TRUE(c1 == 0 || c1 == 1);
  const json echo = load(fs::path(out1) / "experiment.json")["config"];
  EXPECT_EQ(echo, cfg);
  EXPECT_EQ(ssgauss::cli::to_json(ssgauss::cli::from_json(echo)), echo);

  // same config, other directory: identical bytes apart from the echoed out path
  ASSERT_EQ(ssg({"clt", "--config", dir("cfg.json"), "--out", out2}).code, c1);
  json a = load(fs::path(out1) / "experiment.json"), b = load(fs::path(out2) / "experiment.json");
  a["config"].erase("out");
  b["config"].erase("out");
  EXPECT_EQ(a.dump(), b.dump());
  EXPECT_EQ(slurp(fs::path(out1) / "summary.csv"), slurp(fs::path(out2) / "summary.csv"));
  const std::string before = slurp(fs::path(out1) / "experiment.json");
  EXPECT_EQ(ssg({"clt", "--config", dir("cfg.json")}).code, c1);
  EXPECT_EQ(slurp(fs::path(out1) / "experiment.json"), before);
}

TEST_F(CliDir, ContractionNorms) {
  const auto r = ssg({"contraction", "--model", "fbm", "--H", "0.5", "--q", "2", "--n",
                      "64,128,256", "--out", dir()});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = load(dir_ / "reports" / "contraction.json");
  EXPECT_NEAR(j["norms"][0].get<double>(), 1.0 / 64, 1e-15);
  EXPECT_NEAR(j["norms"][1].get<double>(), 1.0 / 128, 1e-15);
  EXPECT_NEAR(j["norms"][2].get<double>(), 1.0 / 256, 1e-15);
  EXPECT_EQ(ssg({"contraction", "--model", "fbm", "--H", "0.8", "--out", dir("g")}).code, 3);
  EXPECT_FALSE(fs::exists(dir_ / "g"));
}

TEST_F(CliDir, CheckWarnsButRuns) {
  const auto r = ssg({"check", "--model", "fbm", "--H", "0.9", "--f", "hermite:2", "--out", dir()});
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.err.find("1.8 >= 1.5"), std::string::npos) << r.err;
  EXPECT_TRUE(fs::exists(dir_ / "reports" / "check.json"));
}

TEST_F(CliDir, CheckSwansonPasses) {
  const auto r = ssg({"check", "--model", "swanson", "--out", dir()});
  EXPECT_EQ(r.code, 0) << r.out;
  const auto j = load(dir_ / "reports" / "check.json");
  EXPECT_TRUE(j["passed"].get<bool>());
  EXPECT_EQ(j["reports"].size(), 9u);
  EXPECT_FALSE(j["reports"][0]["points"].empty());
}

TEST_F(CliDir, SimulateAndReport) {
  ASSERT_EQ(ssg({"simulate", "--model", "fbm", "--H", "0.7", "--n", "32", "--M", "20", "--seed",
                 "3", "--out", dir()})
                .code,
            0);
  std::ifstream is(dir_ / "batch.bin", std::ios::binary);
  const auto batch = ssgauss::read_binary(is);
  const auto ref = ssgauss::sample_batch(ssgauss::ModelSpec::fbm(0.7), 32, 32, 20, 3);
  EXPECT_TRUE(batch.increments == ref.increments);
  EXPECT_EQ(ssg({"simulate", "--n", "32", "--N", "8", "--out", dir("x")}).code, 2);

  ASSERT_EQ(ssg({"variance", "--out", dir()}).code, 0);
  const auto r = ssg({"report", "--out", dir()});
  EXPECT_EQ(r.code, 0) << r.out << r.err;
  EXPECT_NE(r.out.find("variance.json"), std::string::npos);
  EXPECT_TRUE(fs::exists(dir_ / "reports" / "index.json"));
  EXPECT_EQ(ssg({"report", "--out", dir("empty")}).code, 2);
}

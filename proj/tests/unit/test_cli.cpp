#include <gtest/gtest.h>

#include <sys/wait.h>

#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "config.hpp"
#include "experiments.hpp"
#include "parallel.hpp"
#include "report.hpp"
#include "run.hpp"
#include "version.hpp"

namespace fs = std::filesystem;
using namespace stochkg::runner;

namespace {

struct CliResult {
  int exit_code;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    dir_ = fs::temp_directory_path() / (std::string("stochkg_cli_") + info->name());
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  CliResult cli(const std::string& args) const {
    const auto out = dir_ / "stdout.txt";
    const auto err = dir_ / "stderr.txt";
    const std::string cmd = std::string(STOCHKG_CLI_PATH) + " " + args + " >" + out.string() + " 2>" + err.string();
    const int status = std::system(cmd.c_str());
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, slurp(out), slurp(err)};
  }

  fs::path write_config(const std::string& name, const std::string& text) const {
    const auto p = dir_ / name;
    std::ofstream(p) << text;
    return p;
  }

  static std::string config_path(const std::string& name) { return std::string(STOCHKG_CONFIG_DIR) + "/" + name; }

  fs::path dir_;
};

std::string kg_config(const std::string& parameters) {
  return R"({"schema":"stochkg.config/1","experiment":"kg-conservation","seed":3,"parameters":)" + parameters + "}";
}

}  // namespace

TEST_F(Cli, ListShowsExperimentsInStableOrder) {
  const auto r = cli("list");
  EXPECT_EQ(r.exit_code, 0);
  std::size_t last = 0;
  for (const auto& e : experiments()) {
    const auto at = r.out.find(e.name);
    ASSERT_NE(at, std::string::npos) << e.name;
    EXPECT_GE(at, last);
    last = at;
  }
  EXPECT_EQ(experiments().size(), 9u);
  EXPECT_EQ(cli("list").out, r.out);
}

TEST_F(Cli, VersionFlag) {
  const auto r = cli("--version");
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_EQ(r.out, std::string(version_string) + "\n");
}

TEST_F(Cli, UsageErrorsExitWithTwo) {
  EXPECT_EQ(cli("").exit_code, 2);
  EXPECT_EQ(cli("run").exit_code, 2);
  EXPECT_EQ(cli("frobnicate").exit_code, 2);
  EXPECT_EQ(cli("run x.json --workers 0").exit_code, 2);
}

TEST_F(Cli, NegativeMassIsSchemaErrorNamingTheKey) {
  const auto p = write_config("neg.json", kg_config(R"({"mass_in_inverse_length": -1.0})"));
  const auto r = cli("run " + p.string() + " --out " + (dir_ / "out").string());
  EXPECT_EQ(r.exit_code, 2);
  EXPECT_NE(r.err.find("$.parameters.mass_in_inverse_length"), std::string::npos) << r.err;
  EXPECT_FALSE(fs::exists(dir_ / "out"));
}

TEST_F(Cli, UnknownKeysAreRejectedWithPath) {
  auto r = cli("run " + write_config("a.json", kg_config(R"({"mass": 1.0})")).string());
  EXPECT_EQ(r.exit_code, 2);
  EXPECT_NE(r.err.find("$.parameters.mass"), std::string::npos) << r.err;
  r = cli("run " + write_config("b.json", kg_config(R"({"mixed": {"positive_re": 1, "extra": 2}})")).string());
  EXPECT_EQ(r.exit_code, 2);
  EXPECT_NE(r.err.find("$.parameters.mixed.extra"), std::string::npos) << r.err;
  r = cli("run " + write_config("c.json", R"({"schema":"stochkg.config/1","experiment":"kg","seed":1,"parameters":{}})")
                       .string());
  EXPECT_EQ(r.exit_code, 2);
  EXPECT_NE(r.err.find("$.experiment"), std::string::npos);
  r = cli("run " + write_config("d.json", "{not json").string());
  EXPECT_EQ(r.exit_code, 2);
  r = cli("run " + (dir_ / "missing.json").string());
  EXPECT_EQ(r.exit_code, 2);
}

TEST_F(Cli, MadelungConfigPassesAndReportsBeta) {
  const auto out = dir_ / "madelung";
  const auto r = cli("run " + config_path("madelung_1d.json") + " --out " + out.string());
  EXPECT_EQ(r.exit_code, 0) << r.out << r.err;
  EXPECT_NE(r.out.find("PASS AC-6 fitted beta^2"), std::string::npos) << r.out;
  EXPECT_EQ(r.out.find("FAIL"), std::string::npos);
  EXPECT_TRUE(fs::exists(out / "residuals.csv"));
  EXPECT_TRUE(fs::exists(out / "manifest.json"));
}

TEST_F(Cli, FailingVerdictExitsWithOne) {
  const auto p = write_config("strict.json", kg_config(R"({"drift_tolerance": 1e-300})"));
  const auto r = cli("run " + p.string() + " --out " + (dir_ / "out").string());
  EXPECT_EQ(r.exit_code, 1);
  EXPECT_NE(r.out.find("FAIL AC-5"), std::string::npos) << r.out;
  const auto manifest = Json::parse(slurp(dir_ / "out" / "manifest.json"));
  EXPECT_FALSE(manifest["passed"].get<bool>());
}

TEST_F(Cli, NumericalFailureExitsWithOne) {
  // A single plane wave has a vanishing quantum potential, so the fit is ill-posed.
  const auto p = write_config("plane.json", R"({"schema":"stochkg.config/1","experiment":"beta-fit","seed":1,
    "parameters":{"points":32,"modes":[{"mode_numbers":[1,0,0]}]}})");
  const auto r = cli("run " + p.string() + " --out " + (dir_ / "out").string());
  EXPECT_EQ(r.exit_code, 1);
  EXPECT_NE(r.err.find("numerical failure"), std::string::npos) << r.err;
}

TEST_F(Cli, SameSeedGivesIdenticalBytesForAnyWorkerCount) {
  const auto a = dir_ / "a", b = dir_ / "b";
  ASSERT_EQ(cli("run " + config_path("kg_conservation.json") + " --out " + a.string() + " --workers 1").exit_code, 0);
  ASSERT_EQ(cli("run " + config_path("kg_conservation.json") + " --out " + b.string() + " --workers 3").exit_code, 0);
  std::size_t files = 0;
  for (const auto& entry : fs::directory_iterator(a)) {
    const auto name = entry.path().filename();
    EXPECT_EQ(slurp(entry.path()), slurp(b / name)) << name;
    ++files;
  }
  EXPECT_GE(files, 5u);
}

TEST_F(Cli, SeedOverrideAndManifestChecksums) {
  const auto out = dir_ / "run";
  ASSERT_EQ(cli("run " + config_path("kg_conservation.json") + " --seed 77 --out " + out.string()).exit_code, 0);
  const auto manifest = Json::parse(slurp(out / "manifest.json"));
  EXPECT_EQ(manifest["schema"], "stochkg.manifest/1");
  EXPECT_EQ(manifest["seed"], 77u);
  EXPECT_EQ(manifest["config"]["seed"], 77u);
  EXPECT_EQ(manifest["version"], version_string);
  EXPECT_TRUE(manifest["config"]["parameters"].contains("mass_in_inverse_length"));
  for (const auto& a : manifest["artifacts"]) {
    const auto content = slurp(out / a["path"].get<std::string>());
    EXPECT_EQ(a["bytes"].get<std::uint64_t>(), content.size());
    EXPECT_EQ(a["sha256"].get<std::string>(), sha256_hex(content));
  }
  EXPECT_EQ(slurp(out / "verdicts.csv").substr(0, 49), "criterion,name,measured,comparison,tolerance,pass");
}

TEST_F(Cli, WorkersFromEnvironment) {
  const auto out = dir_ / "env";
  const auto r = cli("run " + config_path("kg_conservation.json") + " --out " + out.string());
  EXPECT_EQ(r.exit_code, 0);
  ::setenv("STOCHKG_WORKERS", "many", 1);
  EXPECT_EQ(cli("run " + config_path("kg_conservation.json") + " --out " + out.string()).exit_code, 2);
  ::unsetenv("STOCHKG_WORKERS");
}

TEST(Config, ReaderPathsDefaultsAndEcho) {
  const Json doc = Json::parse(R"({"a": 2.5, "n": 4, "s": {"x": [1, 2, 3]}})");
  ConfigReader r(doc, "$.parameters");
  EXPECT_EQ(r.positive("a"), 2.5);
  EXPECT_EQ(r.count("n", 1), 4u);
  EXPECT_EQ(r.real("missing", 7.0), 7.0);
  r.section("s", [](ConfigReader& s) { EXPECT_EQ(s.triple("x")[2], 3.0); });
  r.finish();
  EXPECT_EQ(r.echo()["missing"], 7.0);
  EXPECT_EQ(r.echo()["s"]["x"].size(), 3u);
  try {
    r.positive("nothing");
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.path(), "$.parameters.nothing");
  }
}

TEST(Config, ReaderRejectsBadValues) {
  const Json doc = Json::parse(R"({"neg": -1, "str": "x", "arr": [1, "a"], "c": "maybe", "list": [{"k": 1}, {}]})");
  ConfigReader r(doc, "$");
  EXPECT_THROW(r.positive("neg"), ConfigError);
  EXPECT_THROW(r.count("neg", 0), ConfigError);
  EXPECT_THROW(r.real("str"), ConfigError);
  EXPECT_THROW(r.reals("arr", 1), ConfigError);
  EXPECT_THROW(r.choice("c", {"yes", "no"}), ConfigError);
  EXPECT_THROW(r.bounded("neg", 0.0, 1.0), ConfigError);
  try {
    r.each("list", 1, Json::array(), [](ConfigReader& e, std::size_t) { e.real("k"); });
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.path(), "$.list[1].k");
  }
  ConfigReader unread(doc, "$");
  EXPECT_THROW(unread.finish(), ConfigError);
}

TEST(Config, EnvelopeValidation) {
  EXPECT_THROW(parse_run_config("[]"), ConfigError);
  EXPECT_THROW(parse_run_config(R"({"schema":"other","experiment":"x","seed":1,"parameters":{}})"), ConfigError);
  EXPECT_THROW(parse_run_config(R"({"schema":"stochkg.config/1","experiment":"x","seed":-1})"), ConfigError);
  EXPECT_THROW(parse_run_config(R"({"schema":"stochkg.config/1","seed":1})"), ConfigError);
  EXPECT_THROW(parse_run_config(R"({"schema":"stochkg.config/1","experiment":"x","extra":1})"), ConfigError);
  const auto c = parse_run_config(R"({"schema":"stochkg.config/1","experiment":"x","seed":9})");
  EXPECT_EQ(c.experiment, "x");
  EXPECT_EQ(c.seed, 9u);
  EXPECT_TRUE(c.parameters.empty());
}

TEST(Report, Sha256KnownVector) {
  EXPECT_EQ(sha256_hex("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST(Report, VerdictComparisons) {
  EXPECT_TRUE(check_at_most("AC-1", "x", 1.0, 1.0).pass);
  EXPECT_FALSE(check_at_least("AC-1", "x", 0.5, 1.0).pass);
  EXPECT_FALSE(check_at_most("AC-1", "x", std::nan(""), 1.0).pass);
  const auto v = check_near("AC-6", "b", 0.5004, 0.5, 1e-3);
  EXPECT_TRUE(v.pass);
  EXPECT_EQ(v.comparison, "|x-0.5|<=");
  RunReport r;
  r.verdicts = {v, check_true("AC-2", "t", false)};
  EXPECT_FALSE(r.passed());
  EXPECT_EQ(r.failures().size(), 1u);
  EXPECT_EQ(manifest_json(r)["verdicts"][1]["pass"], false);
}

TEST(Parallel, ResultsIndependentOfWorkersAndErrorsPropagate) {
  for (unsigned w : {1u, 2u, 5u, 64u}) {
    std::vector<int> out(37, 0);
    parallel_for(out.size(), w, [&](std::size_t i) { out[i] = static_cast<int>(i * i); });
    for (std::size_t i = 0; i < out.size(); ++i) EXPECT_EQ(out[i], static_cast<int>(i * i));
  }
  EXPECT_THROW(parallel_for(10, 3, [](std::size_t i) {
                 if (i == 7) throw std::runtime_error("boom");
               }),
               std::runtime_error);
  std::atomic<int> calls{0};
  parallel_for(0, 4, [&](std::size_t) { ++calls; });
  EXPECT_EQ(calls.load(), 0);
}

TEST(Run, InProcessRunMatchesEffectiveConfig) {
  const auto dir = fs::temp_directory_path() / "stochkg_inprocess";
  fs::remove_all(dir);
  RunOptions o;
  o.out_dir = dir;
  o.seed = 5;
  const auto report = run(parse_run_config(R"({"schema":"stochkg.config/1","experiment":"packet-compare","seed":1,
    "parameters":{"feasibility_cases":[]}})"), o);
  EXPECT_TRUE(report.passed());
  EXPECT_EQ(report.seed, 5u);
  EXPECT_EQ(report.config["parameters"]["bandwidth_in_inverse_length"], 2.0);
  EXPECT_EQ(report.config["parameters"]["evolution"]["points"], 1024u);
  fs::remove_all(dir);
}

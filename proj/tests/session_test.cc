#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <limits>
#include <sstream>
#include <string>

#include <gtest/gtest.h>
#include <sys/wait.h>

#include <nlohmann/json.hpp>

#include "tips/nn/mlp.h"
#include "tips/random.h"
#include "tips/session/config.h"
#include "tips/session/episode_log.h"
#include "tips/session/model_io.h"
#include "tips/session/runner.h"
#include "tips/session/summary.h"

namespace tips {
namespace {

namespace fs = std::filesystem;

// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  TempDir() {
    static int counter = 0;
    path_ = fs::temp_directory_path() /
            ("tips_session_test_" + std::to_string(::getpid()) + "_" +
             std::to_string(counter++));
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  const fs::path& path() const { return path_; }

 private:
  fs::path path_;
};

std::string ReadFile(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

EpisodeLog Log(int episode, double norm, int feedback = 0, int steps = 10) {
  EpisodeLog l;
  l.episode = episode;
  l.steps = steps;
  l.ret = norm * 200;
  l.normalized_return = norm;
  l.feedback_count = feedback;
  l.feedback_rate = static_cast<double>(feedback) / steps;
  return l;
}

// Small configs keep the per-method runs fast.
SessionConfig QuickConfig(const std::string& env, Method method) {
  SessionConfig c = SessionConfig::Defaults(env);
  c.method = method;
  c.seed = 7;
  c.episodes = 3;
  c.tips.exploration_samples = env == "reacher" ? 500 : 200;
  c.tips.action_samples = env == "reacher" ? 50 : 10;
  c.bc_epochs = 5;
  return c;
}

TEST(EpisodeCsvTest, RoundTripIsExact) {
  std::vector<EpisodeLog> logs;
  Rng rng(1);
  for (int i = 1; i <= 20; ++i) {
    EpisodeLog l = Log(i, Uniform01(rng), i % 4, 10 + i);
    l.ret = UniformReal(rng, -20, 0);
    if (i % 3) l.fdm_holdout_mse = Uniform01(rng) * 1e-3;
    l.wall_ms = i % 2 ? 0.0 : Uniform01(rng) * 100;
    logs.push_back(l);
  }
  std::stringstream ss(EpisodeCsvString(logs));
  EXPECT_EQ(ReadEpisodeCsv(ss), logs);
}

TEST(EpisodeCsvTest, HeaderAndEmptyLoss) {
  const std::string csv = EpisodeCsvString({Log(1, 0.5, 2, 10)});
  std::istringstream in(csv);
  std::string header, row;
  std::getline(in, header);
  std::getline(in, row);
  EXPECT_EQ(header,
            "episode,steps,return,normalized_return,feedback_count,feedback_rate,"
            "fdm_holdout_mse,wall_ms");
  EXPECT_EQ(row, "1,10,100,0.5,2,0.20000000000000001,,0");
}

TEST(EpisodeCsvTest, MalformedInputThrows) {
  std::istringstream bad_header("episode,steps\n1,2\n");
  EXPECT_THROW(ReadEpisodeCsv(bad_header), std::runtime_error);
  std::istringstream bad_row(std::string(kEpisodeCsvHeader) + "\n1,abc,0,0,0,0,,0\n");
  EXPECT_THROW(ReadEpisodeCsv(bad_row), std::runtime_error);
  std::istringstream short_row(std::string(kEpisodeCsvHeader) + "\n1,2,3\n");
  EXPECT_THROW(ReadEpisodeCsv(short_row), std::runtime_error);
}

TEST(SummaryTest, SingleEntryWindowOne) {
  const EpisodeLog l = Log(1, 0.73, 4);
  const RunSummary s = Summarize({l}, 1);
  EXPECT_EQ(s.episodes, 1);
  EXPECT_EQ(s.final_mean, 0.73);
  EXPECT_EQ(s.final_median, 0.73);
  EXPECT_EQ(s.total_feedback, 4);
  EXPECT_FALSE(s.episodes_to_threshold.has_value());
}

TEST(SummaryTest, EpisodesToThresholdOnMonotoneCurve) {
  std::vector<EpisodeLog> logs;
  for (int i = 1; i <= 20; ++i) {
    logs.push_back(Log(i, i < 12 ? 0.07 * i : 0.9 + 0.01 * (i - 12)));
  }
  EXPECT_LT(logs[10].normalized_return, 0.9);
  EXPECT_EQ(EpisodesToThreshold(logs, 0.9), 12);
  EXPECT_EQ(Summarize(logs).episodes_to_threshold, 12);
  EXPECT_FALSE(EpisodesToThreshold(logs, 1.1).has_value());
}

TEST(SummaryTest, MedianOfSeeds) {
  EXPECT_EQ(Median({0.8, 0.9, 1.0}), 0.9);
  EXPECT_EQ(Median({1.0, 0.8, 0.9}), 0.9);
  EXPECT_EQ(Median({0.2, 0.4}), 0.30000000000000004);
  EXPECT_THROW(Median({}), std::invalid_argument);
}

TEST(SummaryTest, RollingWindowOfTen) {
  std::vector<double> v;
  for (int i = 0; i < 25; ++i) v.push_back(i);
  const std::vector<double> r = RollingMean(v, 10);
  ASSERT_EQ(r.size(), 16u);
  EXPECT_DOUBLE_EQ(r[0], 4.5);
  EXPECT_DOUBLE_EQ(r[15], 19.5);
  EXPECT_TRUE(RollingMean(v, 30).empty());
  EXPECT_THROW(RollingMean(v, 0), std::invalid_argument);
}

TEST(SummaryTest, FinalWindowStatistics) {
  std::vector<EpisodeLog> logs;
  for (int i = 1; i <= 15; ++i) logs.push_back(Log(i, i / 15.0, 1));
  const RunSummary s = Summarize(logs, 10);
  EXPECT_NEAR(s.final_mean, (6 + 15) / 2.0 / 15.0, 1e-15);
  EXPECT_NEAR(s.final_median, 10.5 / 15.0, 1e-15);
  EXPECT_EQ(s.total_feedback, 15);
  EXPECT_THROW(Summarize({}), std::invalid_argument);
  EXPECT_THROW(Summarize(logs, 0), std::invalid_argument);
}

TEST(ConfigTest, DefaultsPerEnvironment) {
  const SessionConfig c = SessionConfig::Defaults("cartpole");
  EXPECT_EQ(c.tips.exploration_samples, 500);
  EXPECT_EQ(c.tips.action_samples, 10);
  EXPECT_EQ(c.tips.error_constants[0], 0.1);
  EXPECT_EQ(c.ResolvedEpisodes(), 40);
  const SessionConfig r = SessionConfig::Defaults("reacher");
  EXPECT_EQ(r.ResolvedEpisodes(), 60);
  SessionConfig teleop = r;
  teleop.method = Method::kTeleopAction;
  EXPECT_EQ(teleop.ResolvedEpisodes(), 20);
  teleop.method = Method::kBc;
  EXPECT_EQ(teleop.ResolvedEpisodes(), 10);
  EXPECT_THROW(SessionConfig::Defaults("pendulum"), UsageError);
}

TEST(ConfigTest, JsonRoundTrip) {
  SessionConfig c = SessionConfig::Defaults("reacher");
  c.method = Method::kDCoach;
  c.seed = 99;
  c.episodes = 12;
  c.tips.t_update = 5;
  c.tips.fdm_hidden = {8, 8, 8};
  c.oracle.schedule.floor = 0.25;
  c.action_error = Eigen::Vector2d(0.2, 0.3);
  c.bc_epochs = 17;
  c.port = 9001;
  c.control_hz = 5.0;
  TempDir dir;
  const fs::path file = dir.path() / "config.json";
  std::ofstream(file) << c.ToJson().dump(2);
  const SessionConfig back = LoadSessionConfig(file, std::nullopt);
  EXPECT_EQ(back.ToJson(), c.ToJson());
  EXPECT_EQ(back.env, "reacher");
}

TEST(ConfigTest, EnvOverrideAndPartialFile) {
  TempDir dir;
  const fs::path file = dir.path() / "c.json";
  std::ofstream(file) << R"({"env": "reacher", "seed": 3, "tips": {"t_update": 4}})";
  const SessionConfig a = LoadSessionConfig(file, std::nullopt);
  EXPECT_EQ(a.env, "reacher");
  EXPECT_EQ(a.seed, 3u);
  EXPECT_EQ(a.tips.t_update, 4);
  EXPECT_EQ(a.tips.action_samples, 500);
  const SessionConfig b = LoadSessionConfig(file, std::string("cartpole"));
  EXPECT_EQ(b.env, "cartpole");
  EXPECT_EQ(b.tips.action_samples, 10);
  EXPECT_EQ(LoadSessionConfig(std::nullopt, std::nullopt).env, "cartpole");
}

TEST(ConfigTest, RejectsUnknownKeysAndBadValues) {
  SessionConfig c = SessionConfig::Defaults("cartpole");
  EXPECT_THROW(ApplyJson(nlohmann::json::parse(R"({"sede": 1})"), c), UsageError);
  EXPECT_THROW(ApplyJson(nlohmann::json::parse(R"({"tips": {"nope": 1}})"), c),
               UsageError);
  EXPECT_THROW(ApplyJson(nlohmann::json::parse(R"({"seed": "x"})"), c), UsageError);
  EXPECT_THROW(ApplyJson(nlohmann::json::parse(R"({"method": "gail"})"), c),
               UsageError);
  TempDir dir;
  const fs::path file = dir.path() / "broken.json";
  std::ofstream(file) << "{not json";
  EXPECT_THROW(LoadSessionConfig(file, std::nullopt), UsageError);
  EXPECT_THROW(LoadSessionConfig(dir.path() / "missing.json", std::nullopt), UsageError);
}

TEST(ConfigTest, Validation) {
  SessionConfig c = SessionConfig::Defaults("cartpole");
  c.method = Method::kBc;
  EXPECT_THROW(c.Validate(), UsageError);
  EXPECT_THROW(RunSession(c, std::nullopt), UsageError);
  c.dataset = "demos.csv";
  EXPECT_NO_THROW(c.Validate());
  c = SessionConfig::Defaults("cartpole");
  c.tips.error_constants = Eigen::Vector2d(0.1, 0.1);
  EXPECT_THROW(c.Validate(), UsageError);
  c = SessionConfig::Defaults("cartpole");
  c.episodes = -1;
  EXPECT_THROW(c.Validate(), UsageError);
  c = SessionConfig::Defaults("cartpole");
  c.teacher = TeacherKind::kHuman;
  EXPECT_THROW(RunSession(c, std::nullopt), UsageError);
}

TEST(ConfigTest, NamesRoundTrip) {
  for (Method m : {Method::kTips, Method::kDCoach, Method::kBc, Method::kTeleopAction,
                   Method::kTeleopState}) {
    EXPECT_EQ(ParseMethod(MethodName(m)), m);
  }
  EXPECT_EQ(ParseTeacher("human"), TeacherKind::kHuman);
  EXPECT_THROW(ParseTeacher("robot"), UsageError);
}

TEST(ModelIoTest, RoundTripIsExact) {
  Rng rng(4);
  for (auto act : {OutputActivation::kIdentity, OutputActivation::kTanh}) {
    Mlp net = Mlp::HeUniform({5, 7, 3, 2}, act, rng);
    net.biases()[1][2] = -0.125;
    std::stringstream ss;
    WriteMlp(ss, net);
    EXPECT_EQ(ss.str().size(), 8u + 4 * 3 + 4 * 4 + 8 * net.num_parameters());
    EXPECT_TRUE(ReadMlp(ss) == net);
  }
}

TEST(ModelIoTest, LayoutIsLittleEndianRowMajor) {
  Mlp net({2, 1}, OutputActivation::kTanh);
  net.weights()[0] << 1.5, -2.0;
  net.biases()[0] << 0.25;
  std::stringstream ss;
  WriteMlp(ss, net);
  const std::string bytes = ss.str();
  EXPECT_EQ(bytes.substr(0, 8), std::string("TIPSMLP\0", 8));
  auto u32 = [&](std::size_t off) {
    std::uint32_t v = 0;
    for (int i = 3; i >= 0; --i) v = (v << 8) | static_cast<unsigned char>(bytes[off + i]);
    return v;
  };
  auto f64 = [&](std::size_t off) {
    std::uint64_t v = 0;
    for (int i = 7; i >= 0; --i) v = (v << 8) | static_cast<unsigned char>(bytes[off + i]);
    double d;
    std::memcpy(&d, &v, 8);
    return d;
  };
  EXPECT_EQ(u32(8), 1u);
  EXPECT_EQ(u32(12), 1u);
  EXPECT_EQ(u32(16), 2u);
  EXPECT_EQ(u32(20), 2u);
  EXPECT_EQ(u32(24), 1u);
  EXPECT_EQ(f64(28), 1.5);
  EXPECT_EQ(f64(36), -2.0);
  EXPECT_EQ(f64(44), 0.25);
  EXPECT_EQ(bytes.size(), 52u);
}

TEST(ModelIoTest, RejectsCorruptInput) {
  Mlp net({2, 3, 1}, OutputActivation::kIdentity);
  std::stringstream good;
  WriteMlp(good, net);
  std::string bytes = good.str();
  std::string bad_magic = bytes;
  bad_magic[0] = 'X';
  std::istringstream a(bad_magic);
  EXPECT_THROW(ReadMlp(a), std::runtime_error);
  std::string bad_version = bytes;
  bad_version[8] = 7;
  std::istringstream b(bad_version);
  EXPECT_THROW(ReadMlp(b), std::runtime_error);
  std::istringstream c(bytes.substr(0, bytes.size() - 3));
  EXPECT_THROW(ReadMlp(c), std::runtime_error);
  EXPECT_THROW(LoadMlp("/nonexistent/policy.bin"), std::runtime_error);
}

// Every method, twice, with byte-identical episode logs.
class RunnerDeterminismTest
    : public ::testing::TestWithParam<std::tuple<std::string, Method>> {};

TEST_P(RunnerDeterminismTest, IdenticalSeedsGiveIdenticalCsv) {
  const auto& [env, method] = GetParam();
  TempDir dir;
  SessionConfig c = QuickConfig(env, method);
  if (method == Method::kBc) {
    SessionConfig demo = QuickConfig(env, Method::kTeleopAction);
    RunSession(demo, dir.path() / "demo");
    c.dataset = (dir.path() / "demo" / "demos.csv").string();
  }
  const RunResult a = RunSession(c, dir.path() / "a");
  const RunResult b = RunSession(c, dir.path() / "b");
  EXPECT_EQ(a.logs, b.logs);
  EXPECT_EQ(a.logs.size(), 3u);
  const std::string csv_a = ReadFile(dir.path() / "a" / "episodes.csv");
  EXPECT_FALSE(csv_a.empty());
  EXPECT_EQ(csv_a, ReadFile(dir.path() / "b" / "episodes.csv"));
  for (const char* f : {"policy.bin", "fdm.bin", "demos.csv"}) {
    if (fs::exists(dir.path() / "a" / f)) {
      EXPECT_EQ(ReadFile(dir.path() / "a" / f), ReadFile(dir.path() / "b" / f)) << f;
    }
  }
}

INSTANTIATE_TEST_SUITE_P(
    AllMethods, RunnerDeterminismTest,
    ::testing::Combine(::testing::Values("cartpole", "reacher"),
                       ::testing::Values(Method::kTips, Method::kDCoach, Method::kBc,
                                         Method::kTeleopAction, Method::kTeleopState)),
    [](const auto& info) {
      std::string name = std::get<0>(info.param) + "_" + MethodName(std::get<1>(info.param));
      for (char& ch : name) {
        if (ch == '-') ch = '_';
      }
      return name;
    });

TEST(RunnerTest, WritesArtifacts) {
  TempDir dir;
  const RunResult r = RunSession(QuickConfig("cartpole", Method::kTips), dir.path());
  for (const char* f : {"episodes.csv", "run.json", "policy.bin", "policy.json",
                        "fdm.bin", "fdm.json"}) {
    EXPECT_TRUE(fs::exists(dir.path() / f)) << f;
  }
  EXPECT_FALSE(fs::exists(dir.path() / "demos.csv"));
  const auto run = nlohmann::json::parse(ReadFile(dir.path() / "run.json"));
  EXPECT_EQ(run["config"]["method"], "tips");
  EXPECT_EQ(run["summary"]["episodes"], 3);
  const Mlp policy = LoadMlp(dir.path() / "policy.bin");
  EXPECT_EQ(policy.layer_sizes(), std::vector<int>({4, 16, 16, 2}));
  std::ifstream csv(dir.path() / "episodes.csv");
  EXPECT_EQ(ReadEpisodeCsv(csv), r.logs);
  const auto fdm = nlohmann::json::parse(ReadFile(dir.path() / "fdm.json"));
  EXPECT_EQ(fdm["output"], "state_delta");
  EXPECT_EQ(fdm["input_norm"]["mean"].size(), 6u);
}

TEST(RunnerTest, TeleopWritesReusableDemos) {
  TempDir dir;
  SessionConfig c = QuickConfig("reacher", Method::kTeleopState);
  const RunResult r = RunSession(c, dir.path());
  EXPECT_TRUE(fs::exists(dir.path() / "demos.csv"));
  EXPECT_TRUE(fs::exists(dir.path() / "fdm.bin"));
  for (const auto& l : r.logs) EXPECT_GT(l.feedback_count, 0);
  SessionConfig bc = QuickConfig("reacher", Method::kBc);
  bc.dataset = (dir.path() / "demos.csv").string();
  bc.bc_min_normalized_return = 0.0;
  EXPECT_EQ(RunSession(bc, std::nullopt).logs.size(), 3u);
  bc.dataset = (dir.path() / "missing.csv").string();
  EXPECT_THROW(RunSession(bc, std::nullopt), std::runtime_error);
}

TEST(RunnerTest, WallTimeOnlyWhenRequested) {
  SessionConfig c = QuickConfig("cartpole", Method::kDCoach);
  for (const auto& l : RunSession(c, std::nullopt).logs) EXPECT_EQ(l.wall_ms, 0.0);
  c.record_wall_time = true;
  double total = 0.0;
  for (const auto& l : RunSession(c, std::nullopt).logs) total += l.wall_ms;
  EXPECT_GE(total, 0.0);
}

TEST(SummarizeDirectoryTest, GroupsRunsByEnvAndMethod) {
  TempDir dir;
  for (std::uint64_t seed : {1, 2}) {
    SessionConfig c = QuickConfig("cartpole", Method::kTeleopAction);
    c.seed = seed;
    RunSession(c, dir.path() / ("teleop" + std::to_string(seed)));
  }
  RunSession(QuickConfig("cartpole", Method::kDCoach), dir.path() / "dcoach");
  const auto groups = SummarizeDirectory(dir.path());
  ASSERT_EQ(groups.size(), 2u);
  int total_runs = 0;
  for (const auto& g : groups) {
    EXPECT_EQ(g.env, "cartpole");
    total_runs += g.runs;
    if (g.method == "teleop-action") {
      EXPECT_EQ(g.runs, 2);
      EXPECT_EQ(g.runs_reaching_threshold, 2);
    }
  }
  EXPECT_EQ(total_runs, 3);
  std::ostringstream table;
  PrintSummaryTable(table, groups);
  EXPECT_NE(table.str().find("teleop-action"), std::string::npos);
  TempDir empty;
  EXPECT_THROW(SummarizeDirectory(empty.path()), std::runtime_error);
}

int RunCli(const std::string& args) {
  const std::string cmd = std::string(TIPS_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

TEST(CliTest, ExitCodes) {
  TempDir dir;
  const std::string out = (dir.path() / "run").string();
  EXPECT_EQ(RunCli("run --env cartpole --method teleop-action --episodes 2 --out " + out), 0);
  EXPECT_TRUE(fs::exists(dir.path() / "run" / "episodes.csv"));
  EXPECT_EQ(RunCli("summarize --in " + dir.path().string()), 0);
  EXPECT_EQ(RunCli("run --method bc"), 2);
  EXPECT_EQ(RunCli("run --teacher human"), 2);
  EXPECT_EQ(RunCli("run --env pendulum"), 2);
  EXPECT_EQ(RunCli("run --bogus-flag"), 2);
  EXPECT_EQ(RunCli("summarize --in " + out + " --window 0"), 2);
  EXPECT_EQ(RunCli(""), 2);
  // A well-formed request that fails at runtime.
  EXPECT_EQ(RunCli("run --method bc --dataset " + (dir.path() / "none.csv").string()), 3);
  EXPECT_EQ(RunCli("summarize --in " + (dir.path() / "nothing").string()), 3);
}

TEST(CliTest, SameSeedGivesIdenticalCsv) {
  TempDir dir;
  const std::string a = (dir.path() / "a").string();
  const std::string b = (dir.path() / "b").string();
  const std::string common = "run --env cartpole --method tips --seed 7 --episodes 3 ";
  ASSERT_EQ(RunCli(common + "--out " + a), 0);
  ASSERT_EQ(RunCli(common + "--out " + b), 0);
  EXPECT_EQ(ReadFile(dir.path() / "a" / "episodes.csv"),
            ReadFile(dir.path() / "b" / "episodes.csv"));
}

TEST(CliTest, ConfigFileAndFlagOverride) {
  TempDir dir;
  const fs::path cfg = dir.path() / "c.json";
  std::ofstream(cfg) << R"({"method": "teleop-action", "episodes": 4, "seed": 2})";
  ASSERT_EQ(RunCli("run --config " + cfg.string() + " --episodes 2 --out " +
                   (dir.path() / "o").string()),
            0);
  std::ifstream csv(dir.path() / "o" / "episodes.csv");
  EXPECT_EQ(ReadEpisodeCsv(csv).size(), 2u);
  const auto run = nlohmann::json::parse(ReadFile(dir.path() / "o" / "run.json"));
  EXPECT_EQ(run["config"]["seed"], 2);
}

}  // namespace
}  // namespace tips

#include "tips/session/runner.h"

#include <fstream>

#include <nlohmann/json.hpp>

#include "tips/baselines/behavior_cloning.h"
#include "tips/baselines/dcoach.h"
#include "tips/baselines/demo_dataset.h"
#include "tips/baselines/teleop.h"
#include "tips/oracle/oracle_teacher.h"
#include "tips/session/model_io.h"

namespace tips {
namespace {

using nlohmann::json;

struct Artifacts {
  std::vector<EpisodeLog> logs;
  std::optional<Policy> policy;
  const ForwardDynamicsModel* fdm = nullptr;
  std::optional<DemoDataset> demos;
};

json VectorJson(const Eigen::VectorXd& v) {
  return std::vector<double>(v.data(), v.data() + v.size());
}

json ActionSpaceJson(const ActionSpace& space) {
  if (space.is_discrete()) {
    return {{"kind", "discrete"}, {"n", space.num_actions}};
  }
  return {{"kind", "box"},
          {"lower", VectorJson(space.lower)},
          {"upper", VectorJson(space.upper)}};
}

json NetworkJson(const Mlp& net) {
  return {{"layer_sizes", net.layer_sizes()},
          {"output_activation",
           net.output_activation() == OutputActivation::kTanh ? "tanh"
                                                               : "identity"}};
}

void WriteJson(const std::filesystem::path& path, const json& j) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << j.dump(2) << '\n';
}

void WriteArtifacts(const std::filesystem::path& dir, const SessionConfig& config,
                    const Env& env, const Artifacts& a,
                    const std::optional<RunSummary>& summary) {
  std::filesystem::create_directories(dir);
  {
    std::ofstream out(dir / "episodes.csv", std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write episodes.csv");
    WriteEpisodeCsv(out, a.logs);
  }
  json run;
  run["config"] = config.ToJson();
  json files = json::array({"episodes.csv"});
  if (summary) {
    run["summary"] = {{"episodes", summary->episodes},
                      {"final_mean", summary->final_mean},
                      {"final_median", summary->final_median},
                      {"total_feedback", summary->total_feedback},
                      {"episodes_to_threshold",
                       summary->episodes_to_threshold
                           ? json(*summary->episodes_to_threshold)
                           : json(nullptr)}};
  }
  const json space = ActionSpaceJson(env.spec().action_space);
  if (a.policy) {
    SaveMlp(dir / "policy.bin", a.policy->network());
    json side = {{"kind", "policy"},
                 {"env", config.env},
                 {"state_dim", env.spec().state_dim},
                 {"action_space", space},
                 {"network", NetworkJson(a.policy->network())},
                 {"config", config.ToJson()}};
    WriteJson(dir / "policy.json", side);
    files.push_back("policy.bin");
    files.push_back("policy.json");
  }
  if (a.fdm) {
    SaveMlp(dir / "fdm.bin", a.fdm->network());
    json side = {{"kind", "forward_model"},
                 {"env", config.env},
                 {"state_dim", env.spec().state_dim},
                 {"action_space", space},
                 {"network", NetworkJson(a.fdm->network())},
                 {"output", "state_delta"},
                 {"input_norm",
                  {{"mean", VectorJson(a.fdm->input_norm().mean)},
                   {"std", VectorJson(a.fdm->input_norm().std)}}},
                 {"output_norm",
                  {{"mean", VectorJson(a.fdm->output_norm().mean)},
                   {"std", VectorJson(a.fdm->output_norm().std)}}},
                 {"config", config.ToJson()}};
    WriteJson(dir / "fdm.json", side);
    files.push_back("fdm.bin");
    files.push_back("fdm.json");
  }
  if (a.demos) {
    std::ofstream out(dir / "demos.csv", std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write demos.csv");
    WriteDemoCsv(out, *a.demos, env.spec());
    files.push_back("demos.csv");
  }
  files.push_back("run.json");
  run["files"] = files;
  WriteJson(dir / "run.json", run);
}

OracleStateTeacher StateOracle(const Env& env, const SessionConfig& config,
                               OracleConfig oracle) {
  return OracleStateTeacher(MakeExpert(env), std::move(oracle),
                            StreamSeed(config.seed, "oracle"));
}

}  // namespace

RunResult RunSession(const SessionConfig& config,
                     const std::optional<std::filesystem::path>& out_dir) {
  config.Validate();
  if (config.teacher == TeacherKind::kHuman) {
    throw UsageError("the human teacher needs the live teaching service (serve)");
  }
  const std::unique_ptr<Env> env = MakeEnv(config.env);
  const int episodes = config.ResolvedEpisodes();
  Artifacts a;
  // Owners of artifacts referenced through `a`.
  std::optional<TipsSession> tips_session;
  std::optional<TipsAgent> model_agent;

  switch (config.method) {
    case Method::kTips: {
      OracleStateTeacher teacher = StateOracle(*env, config, config.oracle);
      tips_session.emplace(*env, config.tips_config(), config.seed,
                           config.record_wall_time);
      tips_session->RunInitialPhase();
      while (!tips_session->finished()) tips_session->Step(teacher);
      a.logs = tips_session->logs();
      a.policy = tips_session->agent().policy();
      a.fdm = &tips_session->agent().fdm();
      break;
    }
    case Method::kDCoach: {
      OracleActionTeacher teacher(MakeExpert(*env), config.oracle,
                                  StreamSeed(config.seed, "oracle"));
      DCoachSession session(*env, config.dcoach_config(), config.seed,
                            config.record_wall_time);
      while (!session.finished()) session.Step(teacher);
      a.logs = session.logs();
      a.policy = session.policy();
      break;
    }
    case Method::kBc: {
      std::ifstream in(config.dataset);
      if (!in) throw std::runtime_error("cannot read dataset " + config.dataset);
      const DemoDataset data = ReadDemoCsv(in, env->spec());
      Policy policy =
          TrainBehaviorCloning(data, *env, config.bc_config(), config.seed);
      a.logs = EvaluatePolicy(*env, policy, episodes, config.seed);
      a.policy = std::move(policy);
      break;
    }
    case Method::kTeleopAction: {
      ExpertDemonstrator teacher(MakeExpert(*env));
      TeleopResult r = TeleopAction(*env, teacher, episodes, config.seed);
      a.logs = std::move(r.logs);
      a.demos = std::move(r.dataset);
      break;
    }
    case Method::kTeleopState: {
      // Demonstrations are continuous: feedback on every step.
      OracleConfig oracle = config.oracle;
      oracle.schedule.floor = 1.0;
      OracleStateTeacher teacher = StateOracle(*env, config, oracle);
      model_agent.emplace(env->spec(), config.tips_config(), config.seed);
      std::unique_ptr<Env> explore_env = env->Clone();
      model_agent->RunInitialPhase(*explore_env);
      TeleopResult r = TeleopState(
          *env, teacher, model_agent->fdm(), model_agent->sampler(),
          ErrorConstants(config.tips.error_constants), episodes, config.seed);
      a.logs = std::move(r.logs);
      a.demos = std::move(r.dataset);
      a.fdm = &model_agent->fdm();
      break;
    }
  }

  RunResult result;
  result.logs = a.logs;
  if (!a.logs.empty()) result.summary = Summarize(a.logs);
  if (out_dir) WriteArtifacts(*out_dir, config, *env, a, result.summary);
  return result;
}

}  // namespace tips

#include "tips/session/config.h"

#include <fstream>
#include <set>
#include <vector>

namespace tips {
namespace {

using nlohmann::json;

void CheckKeys(const json& j, const std::string& where,
               const std::set<std::string>& allowed) {
  if (!j.is_object()) throw UsageError("config: " + where + " must be an object");
  for (const auto& [key, value] : j.items()) {
    if (!allowed.count(key)) {
      throw UsageError("config: unknown key " + where + key);
    }
  }
}

template <typename T>
void Read(const json& j, const char* key, T& out, const std::string& where) {
  if (!j.contains(key)) return;
  try {
    out = j.at(key).get<T>();
  } catch (const json::exception&) {
    throw UsageError("config: bad value for " + where + key);
  }
}

void ReadVector(const json& j, const char* key, Eigen::VectorXd& out,
                const std::string& where) {
  if (!j.contains(key)) return;
  std::vector<double> v;
  Read(j, key, v, where);
  out = Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

json ToJsonArray(const Eigen::VectorXd& v) {
  return std::vector<double>(v.data(), v.data() + v.size());
}

}  // namespace

std::string MethodName(Method method) {
  switch (method) {
    case Method::kTips: return "tips";
    case Method::kDCoach: return "dcoach";
    case Method::kBc: return "bc";
    case Method::kTeleopAction: return "teleop-action";
    case Method::kTeleopState: return "teleop-state";
  }
  return "?";
}

Method ParseMethod(std::string_view name) {
  for (Method m : {Method::kTips, Method::kDCoach, Method::kBc,
                   Method::kTeleopAction, Method::kTeleopState}) {
    if (MethodName(m) == name) return m;
  }
  throw UsageError("unknown method: " + std::string(name));
}

std::string TeacherName(TeacherKind teacher) {
  return teacher == TeacherKind::kOracle ? "oracle" : "human";
}

TeacherKind ParseTeacher(std::string_view name) {
  if (name == "oracle") return TeacherKind::kOracle;
  if (name == "human") return TeacherKind::kHuman;
  throw UsageError("unknown teacher: " + std::string(name));
}

SessionConfig SessionConfig::Defaults(std::string_view env_name) {
  if (env_name != "cartpole" && env_name != "reacher") {
    throw UsageError("unknown environment: " + std::string(env_name));
  }
  SessionConfig c;
  c.env = std::string(env_name);
  c.tips = TipsConfig::Defaults(env_name);
  c.oracle = OracleConfig::Defaults(env_name);
  c.action_error = DCoachConfig::Defaults(env_name).action_error;
  return c;
}

int SessionConfig::ResolvedEpisodes() const {
  if (episodes) return *episodes;
  switch (method) {
    case Method::kTips:
    case Method::kDCoach:
      return tips.episodes;
    case Method::kBc:
      return kDefaultEvalEpisodes;
    case Method::kTeleopAction:
    case Method::kTeleopState:
      return kDefaultDemoEpisodes;
  }
  return 0;
}

TipsConfig SessionConfig::tips_config() const {
  TipsConfig c = tips;
  c.episodes = ResolvedEpisodes();
  return c;
}

DCoachConfig SessionConfig::dcoach_config() const {
  DCoachConfig c = DCoachConfig::FromTips(tips_config(), env);
  c.action_error = action_error;
  return c;
}

BcConfig SessionConfig::bc_config() const {
  BcConfig c;
  c.policy = tips.policy_config();
  c.epochs = bc_epochs;
  c.min_normalized_return = bc_min_normalized_return;
  return c;
}

void SessionConfig::Validate() const {
  if (episodes && *episodes < 0) throw UsageError("episodes must be >= 0");
  if (method == Method::kBc && dataset.empty()) {
    throw UsageError("method bc requires a dataset path (--dataset)");
  }
  if (method == Method::kBc && teacher == TeacherKind::kHuman) {
    throw UsageError("method bc takes no teacher; use --teacher oracle");
  }
  if (bc_epochs < 0) throw UsageError("bc.epochs must be >= 0");
  if (port < 0 || port > 65535) throw UsageError("serve.port out of range");
  if (!(control_hz > 0.0)) throw UsageError("serve.control_hz must be > 0");
  const auto env_instance = MakeEnv(env);
  try {
    tips_config().Validate(env_instance->spec());
    oracle.Validate(env_instance->spec());
    dcoach_config().Validate(env_instance->spec());
  } catch (const UsageError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

nlohmann::json SessionConfig::ToJson() const {
  json j;
  j["env"] = env;
  j["method"] = MethodName(method);
  j["teacher"] = TeacherName(teacher);
  j["seed"] = seed;
  j["episodes"] = ResolvedEpisodes();
  if (!dataset.empty()) j["dataset"] = dataset;
  j["record_wall_time"] = record_wall_time;
  j["tips"] = {
      {"exploration_samples", tips.exploration_samples},
      {"action_samples", tips.action_samples},
      {"error_constants", ToJsonArray(tips.error_constants)},
      {"t_update", tips.t_update},
      {"policy_hidden", tips.policy_hidden},
      {"fdm_hidden", tips.fdm_hidden},
      {"learning_rate", tips.learning_rate},
      {"batch_size", tips.batch_size},
      {"fdm_initial_epochs", tips.fdm_initial_epochs},
      {"fdm_episode_epochs", tips.fdm_episode_epochs},
      {"demo_capacity", tips.demo_capacity},
      {"experience_capacity", tips.experience_capacity},
  };
  j["oracle"] = {
      {"state_deadband", ToJsonArray(oracle.state_deadband)},
      {"action_deadband", ToJsonArray(oracle.action_deadband)},
      {"floor", oracle.schedule.floor},
      {"horizon", oracle.schedule.horizon},
  };
  j["dcoach"] = {{"action_error", ToJsonArray(action_error)}};
  j["bc"] = {{"epochs", bc_epochs},
             {"min_normalized_return", bc_min_normalized_return}};
  j["serve"] = {{"port", port}, {"control_hz", control_hz}};
  return j;
}

void ApplyJson(const nlohmann::json& j, SessionConfig& c) {
  CheckKeys(j, "", {"env", "method", "teacher", "seed", "episodes", "dataset",
                    "record_wall_time", "tips", "oracle", "dcoach", "bc",
                    "serve"});
  std::string name;
  if (j.contains("method")) {
    Read(j, "method", name, "");
    c.method = ParseMethod(name);
  }
  if (j.contains("teacher")) {
    Read(j, "teacher", name, "");
    c.teacher = ParseTeacher(name);
  }
  Read(j, "seed", c.seed, "");
  if (j.contains("episodes")) {
    int n = 0;
    Read(j, "episodes", n, "");
    c.episodes = n;
  }
  Read(j, "dataset", c.dataset, "");
  Read(j, "record_wall_time", c.record_wall_time, "");

  if (j.contains("tips")) {
    const json& t = j.at("tips");
    const std::string w = "tips.";
    CheckKeys(t, w, {"exploration_samples", "action_samples", "error_constants",
                     "t_update", "policy_hidden", "fdm_hidden", "learning_rate",
                     "batch_size", "fdm_initial_epochs", "fdm_episode_epochs",
                     "demo_capacity", "experience_capacity"});
    Read(t, "exploration_samples", c.tips.exploration_samples, w);
    Read(t, "action_samples", c.tips.action_samples, w);
    ReadVector(t, "error_constants", c.tips.error_constants, w);
    Read(t, "t_update", c.tips.t_update, w);
    Read(t, "policy_hidden", c.tips.policy_hidden, w);
    Read(t, "fdm_hidden", c.tips.fdm_hidden, w);
    Read(t, "learning_rate", c.tips.learning_rate, w);
    Read(t, "batch_size", c.tips.batch_size, w);
    Read(t, "fdm_initial_epochs", c.tips.fdm_initial_epochs, w);
    Read(t, "fdm_episode_epochs", c.tips.fdm_episode_epochs, w);
    Read(t, "demo_capacity", c.tips.demo_capacity, w);
    Read(t, "experience_capacity", c.tips.experience_capacity, w);
  }
  if (j.contains("oracle")) {
    const json& o = j.at("oracle");
    const std::string w = "oracle.";
    CheckKeys(o, w, {"state_deadband", "action_deadband", "floor", "horizon"});
    ReadVector(o, "state_deadband", c.oracle.state_deadband, w);
    ReadVector(o, "action_deadband", c.oracle.action_deadband, w);
    Read(o, "floor", c.oracle.schedule.floor, w);
    Read(o, "horizon", c.oracle.schedule.horizon, w);
  }
  if (j.contains("dcoach")) {
    const json& d = j.at("dcoach");
    CheckKeys(d, "dcoach.", {"action_error"});
    ReadVector(d, "action_error", c.action_error, "dcoach.");
  }
  if (j.contains("bc")) {
    const json& b = j.at("bc");
    CheckKeys(b, "bc.", {"epochs", "min_normalized_return"});
    Read(b, "epochs", c.bc_epochs, "bc.");
    Read(b, "min_normalized_return", c.bc_min_normalized_return, "bc.");
  }
  if (j.contains("serve")) {
    const json& s = j.at("serve");
    CheckKeys(s, "serve.", {"port", "control_hz"});
    Read(s, "port", c.port, "serve.");
    Read(s, "control_hz", c.control_hz, "serve.");
  }
}

SessionConfig LoadSessionConfig(const std::optional<std::filesystem::path>& path,
                                const std::optional<std::string>& env_override) {
  json file = json::object();
  if (path) {
    std::ifstream in(*path);
    if (!in) throw UsageError("cannot read config file " + path->string());
    try {
      file = json::parse(in);
    } catch (const json::parse_error& e) {
      throw UsageError("config file " + path->string() + ": " + e.what());
    }
    if (!file.is_object()) throw UsageError("config file must hold an object");
  }
  std::string env = "cartpole";
  if (file.contains("env")) Read(file, "env", env, "");
  if (env_override) env = *env_override;
  SessionConfig c = SessionConfig::Defaults(env);
  ApplyJson(file, c);
  return c;
}

}  // namespace tips

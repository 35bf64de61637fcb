#ifndef TIPS_SESSION_CONFIG_H_
#define TIPS_SESSION_CONFIG_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include "tips/agent/tips_agent.h"
#include "tips/baselines/behavior_cloning.h"
#include "tips/baselines/dcoach.h"
#include "tips/oracle/oracle_teacher.h"

namespace tips {

// Invalid flags, config values or method/teacher combinations. The CLI maps
// this to exit code 2.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class Method { kTips, kDCoach, kBc, kTeleopAction, kTeleopState };
enum class TeacherKind { kOracle, kHuman };

std::string MethodName(Method method);
Method ParseMethod(std::string_view name);
std::string TeacherName(TeacherKind teacher);
TeacherKind ParseTeacher(std::string_view name);

inline constexpr int kDefaultDemoEpisodes = 20;
inline constexpr int kDefaultEvalEpisodes = 10;
inline constexpr int kDefaultServePort = 8765;
inline constexpr double kDefaultControlHz = 10.0;

// Everything a run needs. JSON schema (every key optional, unknown keys
// rejected):
//
//   {
//     "env": "cartpole" | "reacher",
//     "method": "tips" | "dcoach" | "bc" | "teleop-action" | "teleop-state",
//     "teacher": "oracle" | "human",
//     "seed": uint,
//     "episodes": int,            teaching, demonstration or evaluation
//                                 episodes depending on the method
//     "dataset": "demos.csv",     bc only
//     "record_wall_time": bool,
//     "tips": {"exploration_samples", "action_samples", "error_constants": [],
//              "t_update", "policy_hidden": [], "fdm_hidden": [],
//              "learning_rate", "batch_size", "fdm_initial_epochs",
//              "fdm_episode_epochs", "demo_capacity", "experience_capacity"},
//     "oracle": {"state_deadband": [], "action_deadband": [], "floor",
//                "horizon"},
//     "dcoach": {"action_error": []},
//     "bc": {"epochs", "min_normalized_return"},
//     "serve": {"port", "control_hz"}
//   }
struct SessionConfig {
  std::string env = "cartpole";
  Method method = Method::kTips;
  TeacherKind teacher = TeacherKind::kOracle;
  std::uint64_t seed = 0;
  // Unset: the method's default (tips.episodes for tips and dcoach, 20
  // demonstration episodes for teleop, 10 evaluation episodes for bc).
  std::optional<int> episodes;
  std::string dataset;
  bool record_wall_time = false;

  TipsConfig tips;
  OracleConfig oracle;
  Eigen::VectorXd action_error;
  int bc_epochs = 200;
  double bc_min_normalized_return = kSuccessfulDemoThreshold;
  int port = kDefaultServePort;
  double control_hz = kDefaultControlHz;

  static SessionConfig Defaults(std::string_view env_name);

  int ResolvedEpisodes() const;
  // Throws UsageError.
  void Validate() const;

  TipsConfig tips_config() const;
  DCoachConfig dcoach_config() const;
  BcConfig bc_config() const;

  nlohmann::json ToJson() const;
};

// Overlays the keys present in `j` onto `config`. The "env" key is ignored
// here because it selects the defaults; see LoadSessionConfig.
void ApplyJson(const nlohmann::json& j, SessionConfig& config);

// Env resolution: `env_override`, else the file's "env", else cartpole.
// Per-env defaults are then overlaid with the file. Throws UsageError on
// unreadable or malformed files.
SessionConfig LoadSessionConfig(const std::optional<std::filesystem::path>& path,
                                const std::optional<std::string>& env_override);

}  // namespace tips

#endif  // TIPS_SESSION_CONFIG_H_

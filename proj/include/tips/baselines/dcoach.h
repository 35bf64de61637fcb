#ifndef TIPS_BASELINES_DCOACH_H_
#define TIPS_BASELINES_DCOACH_H_

#include <cstdint>
#include <memory>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "tips/agent/policy_trainer.h"
#include "tips/agent/tips_agent.h"
#include "tips/baselines/action_feedback.h"
#include "tips/envs/env.h"
#include "tips/session/episode_log.h"
#include "tips/teacher.h"

namespace tips {

struct DCoachConfig {
  PolicyConfig policy;
  int t_update = 10;
  // e_a per action dimension; unused for discrete spaces.
  Eigen::VectorXd action_error = Eigen::VectorXd::Constant(1, 1.0);
  int episodes = 40;
  std::size_t demo_capacity = kDemonstrationCapacity;

  static DCoachConfig Defaults(std::string_view env_name);
  // Policy network, schedule and episode cap shared with a TIPS config.
  static DCoachConfig FromTips(const TipsConfig& tips, std::string_view env_name);
  void Validate(const EnvSpec& spec) const;
};

// Action-space interactive learning: the teacher corrects the policy's
// proposed action, the corrected action is executed, and the policy is
// trained through the same PolicyTrainer schedule as TIPS.
class DCoachSession {
 public:
  DCoachSession(const Env& env, DCoachConfig config, std::uint64_t seed,
                bool record_wall_time = false);

  bool finished() const;
  SessionStep Step(ActionTeacher& teacher);

  const std::vector<EpisodeLog>& logs() const { return logs_; }
  const PolicyTrainer& trainer() const { return trainer_; }
  const Policy& policy() const { return trainer_.policy(); }
  const Env& env() const { return *env_; }

 private:
  std::unique_ptr<Env> env_;
  DCoachConfig config_;
  Rng init_rng_;
  Rng replay_rng_;
  Rng env_rng_;
  PolicyTrainer trainer_;
  EpisodeRecorder recorder_;
  std::vector<EpisodeLog> logs_;
  bool in_episode_ = false;
  int step_ = 0;
};

std::vector<EpisodeLog> RunDCoachSession(const Env& env, ActionTeacher& teacher,
                                         const DCoachConfig& config,
                                         std::uint64_t seed);

}  // namespace tips

#endif  // TIPS_BASELINES_DCOACH_H_

#ifndef TIPS_AGENT_TIPS_AGENT_H_
#define TIPS_AGENT_TIPS_AGENT_H_

#include <cstdint>
#include <memory>
#include <optional>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "tips/agent/policy.h"
#include "tips/agent/policy_trainer.h"
#include "tips/dynamics/forward_model.h"
#include "tips/dynamics/inverse_dynamics.h"
#include "tips/envs/env.h"
#include "tips/feedback/feedback.h"
#include "tips/random.h"
#include "tips/session/episode_log.h"
#include "tips/teacher.h"

namespace tips {

struct TipsConfig {
  int exploration_samples = 500;  // N_e
  int action_samples = 10;        // N_a (continuous spaces only)
  Eigen::VectorXd error_constants = Eigen::VectorXd::Constant(1, 0.1);
  int t_update = 10;
  std::vector<int> policy_hidden = {16, 16};
  std::vector<int> fdm_hidden = {16, 16};
  double learning_rate = 0.005;
  int batch_size = 16;
  int episodes = 40;
  int fdm_initial_epochs = 10;
  int fdm_episode_epochs = 2;
  std::size_t demo_capacity = kDemonstrationCapacity;
  std::size_t experience_capacity = kExperienceCapacity;

  // Per-environment defaults ("cartpole", "reacher").
  static TipsConfig Defaults(std::string_view env_name);
  // Throws std::invalid_argument naming the first offending field.
  void Validate(const EnvSpec& spec) const;

  PolicyConfig policy_config() const;
  FdmConfig fdm_config() const;
};

struct TeachingStepResult {
  Transition transition;
  bool corrected = false;
  // Present when feedback was given: the inverse-dynamics choice.
  std::optional<ActionChoice> choice;
};

// State-space interactive learner: a learnt forward model turns binary
// state feedback into actions, which are executed and used to train the
// policy online.
class TipsAgent {
 public:
  // All randomness is drawn from named streams of `seed`.
  TipsAgent(const EnvSpec& spec, TipsConfig config, std::uint64_t seed);

  // Collects N_e random transitions into E and fits the forward model.
  // Returns its held-out MSE.
  double RunInitialPhase(Env& env);

  // Replaces the learnt model used for action selection (e.g. with
  // ExactDynamics). Counts as initialized; EndEpisode stops retraining.
  void UseDynamicsModel(std::unique_ptr<DynamicsModel> model);

  bool initialized() const { return model_ != nullptr; }

  Action PolicyAction(const Eigen::VectorXd& state) const;

  // One control step from env.state(). With non-null feedback: desired
  // state, inverse-dynamics action, correction + immediate updates, and the
  // corrected action is executed. Otherwise the policy action is executed.
  // Every transition goes to E; the periodic update is checked against the
  // 1-based per-episode `episode_step`.
  TeachingStepResult TeachingStep(Env& env, const FeedbackSignal& feedback,
                                  int episode_step);

  // Retrains the learnt forward model on E. Returns the held-out MSE, or
  // nullopt when an injected model is in use.
  std::optional<double> EndEpisode();

  const TipsConfig& config() const { return config_; }
  const ExperienceBuffer& experience() const { return experience_; }
  const PolicyTrainer& trainer() const { return trainer_; }
  const Policy& policy() const { return trainer_.policy(); }
  const ForwardDynamicsModel& fdm() const { return fdm_; }
  const ActionSampler& sampler() const { return sampler_; }

 private:
  EnvSpec spec_;
  TipsConfig config_;
  std::uint64_t seed_;
  Rng init_rng_;
  Rng sampler_rng_;
  Rng replay_rng_;
  Rng train_rng_;
  ErrorConstants error_;
  ActionSampler sampler_;
  PolicyTrainer trainer_;
  ForwardDynamicsModel fdm_;
  ExperienceBuffer experience_;
  std::unique_ptr<DynamicsModel> injected_model_;
  const DynamicsModel* model_ = nullptr;
};

// What happened during one Step of a session.
struct SessionStep {
  int episode = 0;
  int step = 0;
  Transition transition;
  bool had_feedback = false;
  std::optional<EpisodeLog> finished_episode;
};

// Steppable TIPS session: initial phase, then teaching episodes until the
// configured episode count. Also used by the live teaching service.
class TipsSession {
 public:
  TipsSession(const Env& env, TipsConfig config, std::uint64_t seed,
              bool record_wall_time = false);

  double RunInitialPhase();
  bool finished() const;
  // Starts an episode if none is running, then advances one control step.
  SessionStep Step(StateTeacher& teacher);

  const std::vector<EpisodeLog>& logs() const { return logs_; }
  const Env& env() const { return *env_; }
  TipsAgent& agent() { return agent_; }
  const TipsAgent& agent() const { return agent_; }
  int episode() const { return recorder_.episode(); }
  bool in_episode() const { return in_episode_; }

 private:
  std::unique_ptr<Env> env_;
  TipsAgent agent_;
  Rng env_rng_;
  EpisodeRecorder recorder_;
  std::vector<EpisodeLog> logs_;
  bool in_episode_ = false;
  int step_ = 0;
};

std::vector<EpisodeLog> RunTipsSession(const Env& env, StateTeacher& teacher,
                                       const TipsConfig& config,
                                       std::uint64_t seed);

}  // namespace tips

#endif  // TIPS_AGENT_TIPS_AGENT_H_

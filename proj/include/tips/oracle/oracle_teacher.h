#ifndef TIPS_ORACLE_ORACLE_TEACHER_H_
#define TIPS_ORACLE_ORACLE_TEACHER_H_

#include <cstdint>
#include <memory>
#include <optional>
#include <string_view>

#include <Eigen/Dense>

#include "tips/baselines/action_feedback.h"
#include "tips/envs/env.h"
#include "tips/feedback/feedback.h"
#include "tips/oracle/expert.h"
#include "tips/random.h"
#include "tips/teacher.h"

namespace tips {

// p(episode) = max(floor, 1 - (episode - 1) / horizon), episode 1-based.
struct FeedbackSchedule {
  double floor = 0.1;
  double horizon = 30.0;

  double Probability(int episode) const;
};

struct OracleConfig {
  // Per feedback-observable deadband for state feedback.
  Eigen::VectorXd state_deadband;
  // Per action-dimension deadband for action feedback.
  Eigen::VectorXd action_deadband;
  FeedbackSchedule schedule;

  static OracleConfig Defaults(std::string_view env_name);
  void Validate(const EnvSpec& spec) const;
};

// One-step expert comparison in feedback-observable space. The expert's
// next observables are compared with the reference: the observables after
// `proposed` when given, else the current observables. h[d] is the sign of
// the difference where it exceeds the deadband. The draw against p is taken
// from `rng` on every call.
FeedbackSignal OracleStateFeedback(const Env& env, const Eigen::VectorXd& state,
                                   const std::optional<Action>& proposed,
                                   const ExpertController& expert,
                                   const OracleConfig& config,
                                   double probability, Rng& rng, int step = 0);

// h_a[d] = sign(expert[d] - proposed[d]) outside the deadband, gated by p.
// Discrete spaces compare action indices on a single dimension.
ActionFeedback OracleActionFeedback(const ActionSpace& space,
                                    const Eigen::VectorXd& state,
                                    const Action& proposed,
                                    const ExpertController& expert,
                                    const OracleConfig& config,
                                    double probability, Rng& rng);

class OracleStateTeacher : public StateTeacher {
 public:
  OracleStateTeacher(std::unique_ptr<ExpertController> expert,
                     OracleConfig config, std::uint64_t seed);

  void BeginEpisode(int episode) override;
  FeedbackSignal Feedback(const TeachingContext& context) override;

  double probability() const { return probability_; }

 private:
  std::unique_ptr<ExpertController> expert_;
  OracleConfig config_;
  Rng rng_;
  double probability_ = 1.0;
};

class OracleActionTeacher : public ActionTeacher {
 public:
  OracleActionTeacher(std::unique_ptr<ExpertController> expert,
                      OracleConfig config, std::uint64_t seed);

  void BeginEpisode(int episode) override;
  ActionFeedback Feedback(const TeachingContext& context) override;

 private:
  std::unique_ptr<ExpertController> expert_;
  OracleConfig config_;
  Rng rng_;
  double probability_ = 1.0;
};

// Tele-operation in action space by the expert itself.
class ExpertDemonstrator : public DemonstrationTeacher {
 public:
  explicit ExpertDemonstrator(std::unique_ptr<ExpertController> expert)
      : expert_(std::move(expert)) {}

  Action Act(const Env&, const Eigen::VectorXd& state) override {
    return expert_->Act(state);
  }

 private:
  std::unique_ptr<ExpertController> expert_;
};

}  // namespace tips

#endif  // TIPS_ORACLE_ORACLE_TEACHER_H_

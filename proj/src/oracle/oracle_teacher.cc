#include "tips/oracle/oracle_teacher.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace tips {
namespace {

int SignOutside(double diff, double deadband) {
  if (std::abs(diff) <= deadband) return 0;
  return diff > 0.0 ? 1 : -1;
}

}  // namespace

double FeedbackSchedule::Probability(int episode) const {
  const double linear = 1.0 - static_cast<double>(episode - 1) / horizon;
  return std::clamp(std::max(floor, linear), 0.0, 1.0);
}

OracleConfig OracleConfig::Defaults(std::string_view env_name) {
  OracleConfig c;
  if (env_name == "cartpole") {
    c.state_deadband = Eigen::VectorXd::Constant(1, 1e-4);
    c.action_deadband = Eigen::VectorXd::Constant(1, 0.5);
  } else if (env_name == "reacher") {
    c.state_deadband = Eigen::VectorXd::Constant(2, 1e-4);
    c.action_deadband = Eigen::VectorXd::Constant(2, 0.05);
  } else {
    throw std::invalid_argument("no oracle defaults for environment: " +
                                std::string(env_name));
  }
  return c;
}

void OracleConfig::Validate(const EnvSpec& spec) const {
  if (state_deadband.size() !=
          static_cast<Eigen::Index>(spec.feedback_dims.size()) ||
      (state_deadband.array() <= 0.0).any()) {
    throw std::invalid_argument(
        "invalid config: oracle state deadband (one positive value per "
        "feedback dimension)");
  }
  if (action_deadband.size() != ActionFeedbackDims(spec.action_space) ||
      (action_deadband.array() <= 0.0).any()) {
    throw std::invalid_argument(
        "invalid config: oracle action deadband (one positive value per "
        "action dimension)");
  }
  if (!(schedule.horizon > 0.0) || schedule.floor < 0.0 || schedule.floor > 1.0) {
    throw std::invalid_argument("invalid config: oracle feedback schedule");
  }
}

FeedbackSignal OracleStateFeedback(const Env& env, const Eigen::VectorXd& state,
                                   const std::optional<Action>& proposed,
                                   const ExpertController& expert,
                                   const OracleConfig& config,
                                   double probability, Rng& rng, int step) {
  const int dims = static_cast<int>(env.spec().feedback_dims.size());
  if (Uniform01(rng) >= probability) return FeedbackSignal::Null(dims, step);

  const Eigen::VectorXd expert_next = env.FeedbackObservables(
      env.Simulate(state, expert.Act(state)).next_state);
  const Eigen::VectorXd reference =
      proposed ? env.FeedbackObservables(env.Simulate(state, *proposed).next_state)
               : env.FeedbackObservables(state);
  std::vector<int> h(static_cast<std::size_t>(dims));
  for (int d = 0; d < dims; ++d) {
    h[static_cast<std::size_t>(d)] =
        SignOutside(expert_next[d] - reference[d], config.state_deadband[d]);
  }
  return FeedbackSignal(std::move(h), step);
}

ActionFeedback OracleActionFeedback(const ActionSpace& space,
                                    const Eigen::VectorXd& state,
                                    const Action& proposed,
                                    const ExpertController& expert,
                                    const OracleConfig& config,
                                    double probability, Rng& rng) {
  const int dims = ActionFeedbackDims(space);
  if (Uniform01(rng) >= probability) return ActionFeedback::Null(dims);

  const Action target = ValidateAndClamp(space, expert.Act(state));
  if (space.is_discrete()) {
    const double diff = target.index() - proposed.index();
    return ActionFeedback({SignOutside(diff, config.action_deadband[0])});
  }
  const Eigen::VectorXd diff = target.values() - proposed.values();
  std::vector<int> h(static_cast<std::size_t>(dims));
  for (int d = 0; d < dims; ++d) {
    h[static_cast<std::size_t>(d)] = SignOutside(diff[d], config.action_deadband[d]);
  }
  return ActionFeedback(std::move(h));
}

OracleStateTeacher::OracleStateTeacher(std::unique_ptr<ExpertController> expert,
                                       OracleConfig config, std::uint64_t seed)
    : expert_(std::move(expert)), config_(std::move(config)), rng_(seed) {}

void OracleStateTeacher::BeginEpisode(int episode) {
  probability_ = config_.schedule.Probability(episode);
}

FeedbackSignal OracleStateTeacher::Feedback(const TeachingContext& context) {
  return OracleStateFeedback(context.env, context.state, context.proposed,
                             *expert_, config_, probability_, rng_, context.step);
}

OracleActionTeacher::OracleActionTeacher(
    std::unique_ptr<ExpertController> expert, OracleConfig config,
    std::uint64_t seed)
    : expert_(std::move(expert)), config_(std::move(config)), rng_(seed) {}

void OracleActionTeacher::BeginEpisode(int episode) {
  probability_ = config_.schedule.Probability(episode);
}

ActionFeedback OracleActionTeacher::Feedback(const TeachingContext& context) {
  return OracleActionFeedback(context.env.spec().action_space, context.state,
                              context.proposed, *expert_, config_, probability_,
                              rng_);
}

}  // namespace tips

#include "tips/baselines/dcoach.h"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace tips {

Action ApplyActionFeedback(const ActionSpace& space, const Action& proposed,
                           const ActionFeedback& feedback,
                           const Eigen::VectorXd& action_error) {
  if (feedback.size() != ActionFeedbackDims(space)) {
    throw std::invalid_argument("action feedback dimension mismatch");
  }
  if (space.is_discrete()) {
    const int index =
        std::clamp(proposed.index() + feedback[0], 0, space.num_actions - 1);
    return Action::Discrete(index);
  }
  if (action_error.size() != feedback.size()) {
    throw std::invalid_argument("action error constant dimension mismatch");
  }
  Eigen::VectorXd a = proposed.values();
  for (int d = 0; d < feedback.size(); ++d) a[d] += feedback[d] * action_error[d];
  return Action::Continuous(a.cwiseMax(space.lower).cwiseMin(space.upper));
}

DCoachConfig DCoachConfig::FromTips(const TipsConfig& tips,
                                    std::string_view env_name) {
  DCoachConfig c;
  c.policy = tips.policy_config();
  c.t_update = tips.t_update;
  c.episodes = tips.episodes;
  c.demo_capacity = tips.demo_capacity;
  if (env_name == "reacher") c.action_error = Eigen::VectorXd::Constant(2, 0.1);
  return c;
}

DCoachConfig DCoachConfig::Defaults(std::string_view env_name) {
  return FromTips(TipsConfig::Defaults(env_name), env_name);
}

void DCoachConfig::Validate(const EnvSpec& spec) const {
  if (t_update <= 0) throw std::invalid_argument("invalid config: t_update");
  if (episodes < 0) throw std::invalid_argument("invalid config: episodes");
  if (!spec.action_space.is_discrete() &&
      (action_error.size() != spec.action_space.lower.size() ||
       (action_error.array() <= 0.0).any())) {
    throw std::invalid_argument(
        "invalid config: action_error (one positive value per action dim)");
  }
}

DCoachSession::DCoachSession(const Env& env, DCoachConfig config,
                             std::uint64_t seed, bool record_wall_time)
    : env_(env.Clone()),
      config_((config.Validate(env.spec()), std::move(config))),
      init_rng_(MakeStream(seed, "init")),
      replay_rng_(MakeStream(seed, "replay")),
      env_rng_(MakeStream(seed, "env")),
      trainer_(Policy(env.spec(), config_.policy, init_rng_), config_.t_update,
               config_.demo_capacity),
      recorder_(record_wall_time) {}

bool DCoachSession::finished() const {
  return !in_episode_ && static_cast<int>(logs_.size()) >= config_.episodes;
}

SessionStep DCoachSession::Step(ActionTeacher& teacher) {
  if (finished()) throw std::logic_error("session already finished");
  if (!in_episode_) {
    env_->Reset(env_rng_());
    recorder_.Begin(static_cast<int>(logs_.size()) + 1);
    teacher.BeginEpisode(recorder_.episode());
    in_episode_ = true;
    step_ = 0;
  }
  ++step_;
  const Eigen::VectorXd state = env_->state();
  const Action proposed = trainer_.policy().Act(state);
  const ActionFeedback h = teacher.Feedback(
      TeachingContext{*env_, state, proposed, recorder_.episode(), step_});

  Action action = proposed;
  if (!h.is_null()) {
    action = ApplyActionFeedback(env_->spec().action_space, proposed, h,
                                 config_.action_error);
    trainer_.AddCorrection(state, action, replay_rng_);
  }
  SessionStep out;
  out.episode = recorder_.episode();
  out.step = step_;
  out.transition = env_->Step(action);
  out.had_feedback = !h.is_null();
  trainer_.MaybePeriodicUpdate(step_, replay_rng_);
  recorder_.Record(out.transition.reward, out.had_feedback);
  if (out.transition.done) {
    logs_.push_back(recorder_.Finish(*env_, std::nullopt));
    out.finished_episode = logs_.back();
    in_episode_ = false;
  }
  return out;
}

std::vector<EpisodeLog> RunDCoachSession(const Env& env, ActionTeacher& teacher,
                                         const DCoachConfig& config,
                                         std::uint64_t seed) {
  DCoachSession session(env, config, seed);
  while (!session.finished()) session.Step(teacher);
  return session.logs();
}

}  // namespace tips

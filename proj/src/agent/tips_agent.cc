#include "tips/agent/tips_agent.h"

#include <stdexcept>
#include <string>

namespace tips {
namespace {

void Require(bool ok, const char* field) {
  if (!ok) throw std::invalid_argument(std::string("invalid config: ") + field);
}

bool AllPositive(const std::vector<int>& v) {
  if (v.empty()) return false;
  for (int x : v) {
    if (x <= 0) return false;
  }
  return true;
}

}  // namespace

TipsConfig TipsConfig::Defaults(std::string_view env_name) {
  TipsConfig c;
  if (env_name == "cartpole") {
    c.exploration_samples = 500;
    c.action_samples = 10;
    c.error_constants = Eigen::VectorXd::Constant(1, 0.1);
    c.t_update = 10;
    c.policy_hidden = {16, 16};
    c.fdm_hidden = {16, 16};
    c.learning_rate = 0.005;
    c.batch_size = 16;
    c.episodes = 40;
  } else if (env_name == "reacher") {
    c.exploration_samples = 10000;
    c.action_samples = 500;
    c.error_constants = Eigen::VectorXd::Constant(2, 0.008);
    c.t_update = 10;
    c.policy_hidden = {32, 32};
    c.fdm_hidden = {64, 64};
    c.learning_rate = 0.005;
    c.batch_size = 32;
    c.episodes = 60;
  } else {
    throw std::invalid_argument("no defaults for environment: " +
                                std::string(env_name));
  }
  return c;
}

void TipsConfig::Validate(const EnvSpec& spec) const {
  Require(exploration_samples > 0, "exploration_samples");
  Require(action_samples > 0, "action_samples");
  Require(error_constants.size() ==
              static_cast<Eigen::Index>(spec.feedback_dims.size()),
          "error_constants (one per feedback dimension)");
  Require(error_constants.allFinite() && (error_constants.array() > 0.0).all(),
          "error_constants (must be positive)");
  Require(t_update > 0, "t_update");
  Require(AllPositive(policy_hidden), "policy_hidden");
  Require(AllPositive(fdm_hidden), "fdm_hidden");
  Require(learning_rate > 0.0, "learning_rate");
  Require(batch_size > 0, "batch_size");
  Require(episodes >= 0, "episodes");
  Require(fdm_initial_epochs >= 0 && fdm_episode_epochs >= 0, "fdm epochs");
  Require(demo_capacity > 0 && experience_capacity > 0, "buffer capacity");
}

PolicyConfig TipsConfig::policy_config() const {
  PolicyConfig p;
  p.hidden_sizes = policy_hidden;
  p.adam.learning_rate = learning_rate;
  p.batch_size = batch_size;
  return p;
}

FdmConfig TipsConfig::fdm_config() const {
  FdmConfig f;
  f.hidden_sizes = fdm_hidden;
  f.adam.learning_rate = learning_rate;
  f.batch_size = batch_size;
  return f;
}

TipsAgent::TipsAgent(const EnvSpec& spec, TipsConfig config, std::uint64_t seed)
    : spec_(spec),
      config_((config.Validate(spec), std::move(config))),
      seed_(seed),
      init_rng_(MakeStream(seed, "init")),
      sampler_rng_(MakeStream(seed, "sampler")),
      replay_rng_(MakeStream(seed, "replay")),
      train_rng_(MakeStream(seed, "train")),
      error_(config_.error_constants),
      sampler_(spec.action_space, config_.action_samples),
      trainer_(Policy(spec, config_.policy_config(), init_rng_),
               config_.t_update, config_.demo_capacity),
      fdm_(spec, config_.fdm_config(), init_rng_),
      experience_(config_.experience_capacity) {}

double TipsAgent::RunInitialPhase(Env& env) {
  experience_ = CollectExploration(env, config_.exploration_samples,
                                   StreamSeed(seed_, "explore"),
                                   config_.experience_capacity);
  const double mse = fdm_.Train(experience_, config_.fdm_initial_epochs, train_rng_);
  if (injected_model_ == nullptr) model_ = &fdm_;
  return mse;
}

void TipsAgent::UseDynamicsModel(std::unique_ptr<DynamicsModel> model) {
  injected_model_ = std::move(model);
  model_ = injected_model_.get();
}

Action TipsAgent::PolicyAction(const Eigen::VectorXd& state) const {
  return trainer_.policy().Act(state);
}

TeachingStepResult TipsAgent::TeachingStep(Env& env,
                                           const FeedbackSignal& feedback,
                                           int episode_step) {
  if (feedback.size() != static_cast<int>(spec_.feedback_dims.size())) {
    throw std::invalid_argument("feedback dimension count mismatch");
  }
  const Eigen::VectorXd state = env.state();
  TeachingStepResult result;
  Action action = Action::Discrete(0);
  if (!feedback.is_null()) {
    if (!initialized()) {
      throw std::logic_error("feedback received before the forward model exists");
    }
    const DesiredState desired =
        ComputeDesiredState(env.FeedbackObservables(state), feedback, error_);
    const ObservableFn observables = [&env](const Eigen::VectorXd& s) {
      return env.FeedbackObservables(s);
    };
    result.choice = SelectAction(*model_, observables, state, desired,
                                 sampler_.Sample(sampler_rng_));
    action = result.choice->action;
    trainer_.AddCorrection(state, action, replay_rng_);
    result.corrected = true;
  } else {
    action = PolicyAction(state);
  }
  result.transition = env.Step(action);
  experience_.Push(result.transition);
  trainer_.MaybePeriodicUpdate(episode_step, replay_rng_);
  return result;
}

std::optional<double> TipsAgent::EndEpisode() {
  if (injected_model_ != nullptr || experience_.empty()) return std::nullopt;
  return fdm_.Train(experience_, config_.fdm_episode_epochs, train_rng_);
}

TipsSession::TipsSession(const Env& env, TipsConfig config, std::uint64_t seed,
                         bool record_wall_time)
    : env_(env.Clone()),
      agent_(env.spec(), std::move(config), seed),
      env_rng_(MakeStream(seed, "env")),
      recorder_(record_wall_time) {}

double TipsSession::RunInitialPhase() { return agent_.RunInitialPhase(*env_); }

bool TipsSession::finished() const {
  return !in_episode_ &&
         static_cast<int>(logs_.size()) >= agent_.config().episodes;
}

SessionStep TipsSession::Step(StateTeacher& teacher) {
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
  const Action proposed = agent_.PolicyAction(state);
  const TeachingContext context{*env_, state, proposed, recorder_.episode(),
                                step_};
  const FeedbackSignal feedback = teacher.Feedback(context);

  SessionStep out;
  out.episode = recorder_.episode();
  out.step = step_;
  const TeachingStepResult r = agent_.TeachingStep(*env_, feedback, step_);
  out.transition = r.transition;
  out.had_feedback = r.corrected;
  recorder_.Record(r.transition.reward, r.corrected);
  if (r.transition.done) {
    const std::optional<double> mse = agent_.EndEpisode();
    logs_.push_back(recorder_.Finish(*env_, mse));
    out.finished_episode = logs_.back();
    in_episode_ = false;
  }
  return out;
}

std::vector<EpisodeLog> RunTipsSession(const Env& env, StateTeacher& teacher,
                                       const TipsConfig& config,
                                       std::uint64_t seed) {
  TipsSession session(env, config, seed);
  session.RunInitialPhase();
  while (!session.finished()) session.Step(teacher);
  return session.logs();
}

}  // namespace tips

#include "tips/baselines/teleop.h"

#include <stdexcept>

#include "tips/random.h"

namespace tips {
namespace {

Action NeutralAction(const ActionSpace& space, const Action& previous) {
  if (space.is_discrete()) return previous;
  return Action::Continuous(Eigen::VectorXd::Zero(space.lower.size()));
}

}  // namespace

TeleopResult TeleopAction(const Env& env_template,
                          DemonstrationTeacher& teacher, int episodes,
                          std::uint64_t seed) {
  if (episodes < 0) throw std::invalid_argument("negative episode count");
  std::unique_ptr<Env> env = env_template.Clone();
  Rng env_rng = MakeStream(seed, "env");
  TeleopResult out;
  EpisodeRecorder recorder;
  for (int ep = 1; ep <= episodes; ++ep) {
    env->Reset(env_rng());
    teacher.BeginEpisode(ep);
    recorder.Begin(ep);
    DemoEpisode demo;
    while (!env->done()) {
      const Eigen::VectorXd state = env->state();
      const Transition t = env->Step(teacher.Act(*env, state));
      demo.steps.push_back({state, t.action, t.reward});
      recorder.Record(t.reward, true);
    }
    out.dataset.episodes.push_back(std::move(demo));
    out.logs.push_back(recorder.Finish(*env, std::nullopt));
  }
  return out;
}

TeleopResult TeleopState(const Env& env_template, StateTeacher& teacher,
                         const DynamicsModel& model,
                         const ActionSampler& sampler,
                         const ErrorConstants& error, int episodes,
                         std::uint64_t seed) {
  if (episodes < 0) throw std::invalid_argument("negative episode count");
  std::unique_ptr<Env> env = env_template.Clone();
  const ActionSpace& space = env->spec().action_space;
  Rng env_rng = MakeStream(seed, "env");
  Rng sampler_rng = MakeStream(seed, "sampler");
  const ObservableFn observables = [&env](const Eigen::VectorXd& s) {
    return env->FeedbackObservables(s);
  };

  TeleopResult out;
  EpisodeRecorder recorder;
  for (int ep = 1; ep <= episodes; ++ep) {
    env->Reset(env_rng());
    teacher.BeginEpisode(ep);
    recorder.Begin(ep);
    Action previous = Action::Discrete(0);
    DemoEpisode demo;
    int step = 0;
    while (!env->done()) {
      ++step;
      const Eigen::VectorXd state = env->state();
      const Action neutral = NeutralAction(space, previous);
      const FeedbackSignal h =
          teacher.Feedback(TeachingContext{*env, state, neutral, ep, step});
      Action action = neutral;
      if (!h.is_null()) {
        const DesiredState desired =
            ComputeDesiredState(env->FeedbackObservables(state), h, error);
        action = SelectAction(model, observables, state, desired,
                              sampler.Sample(sampler_rng))
                     .action;
      }
      const Transition t = env->Step(action);
      demo.steps.push_back({state, t.action, t.reward});
      recorder.Record(t.reward, !h.is_null());
      previous = t.action;
    }
    out.dataset.episodes.push_back(std::move(demo));
    out.logs.push_back(recorder.Finish(*env, std::nullopt));
  }
  return out;
}

}  // namespace tips

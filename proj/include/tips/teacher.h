#ifndef TIPS_TEACHER_H_
#define TIPS_TEACHER_H_

#include <Eigen/Dense>

#include "tips/baselines/action_feedback.h"
#include "tips/envs/env.h"
#include "tips/feedback/feedback.h"

namespace tips {

// What a teacher sees before the agent acts.
struct TeachingContext {
  const Env& env;
  const Eigen::VectorXd& state;
  // The action the agent will execute if no feedback is given.
  const Action& proposed;
  int episode;  // 1-based
  int step;     // 1-based within the episode
};

// Gives per-dimension corrective feedback on the feedback observables.
class StateTeacher {
 public:
  virtual ~StateTeacher() = default;
  virtual void BeginEpisode(int /*episode*/) {}
  virtual FeedbackSignal Feedback(const TeachingContext& context) = 0;
};

// Gives per-dimension corrections on the proposed action.
class ActionTeacher {
 public:
  virtual ~ActionTeacher() = default;
  virtual void BeginEpisode(int /*episode*/) {}
  virtual ActionFeedback Feedback(const TeachingContext& context) = 0;
};

// Drives the environment directly (tele-operation in action space).
class DemonstrationTeacher {
 public:
  virtual ~DemonstrationTeacher() = default;
  virtual void BeginEpisode(int /*episode*/) {}
  virtual Action Act(const Env& env, const Eigen::VectorXd& state) = 0;
};

class SilentStateTeacher : public StateTeacher {
 public:
  FeedbackSignal Feedback(const TeachingContext& context) override {
    return FeedbackSignal::Null(
        static_cast<int>(context.env.spec().feedback_dims.size()), context.step);
  }
};

class SilentActionTeacher : public ActionTeacher {
 public:
  ActionFeedback Feedback(const TeachingContext& context) override {
    return ActionFeedback::Null(
        ActionFeedbackDims(context.env.spec().action_space));
  }
};

}  // namespace tips

#endif  // TIPS_TEACHER_H_

#ifndef TIPS_BASELINES_ACTION_FEEDBACK_H_
#define TIPS_BASELINES_ACTION_FEEDBACK_H_

#include <vector>

#include <Eigen/Dense>

#include "tips/envs/env.h"
#include "tips/feedback/feedback.h"

namespace tips {

// Binary correction in action space: one {-1, 0, +1} value per action
// dimension (a single dimension for discrete spaces).
class ActionFeedback {
 public:
  ActionFeedback() = default;
  explicit ActionFeedback(std::vector<int> values) : signal_(std::move(values)) {}

  static ActionFeedback Null(int dims) {
    return ActionFeedback(std::vector<int>(dims, 0));
  }

  const std::vector<int>& values() const { return signal_.values(); }
  int size() const { return signal_.size(); }
  int operator[](int d) const { return signal_[d]; }
  bool is_null() const { return signal_.is_null(); }

  bool operator==(const ActionFeedback&) const = default;

 private:
  FeedbackSignal signal_;
};

// Number of feedback dimensions for an action space.
inline int ActionFeedbackDims(const ActionSpace& space) {
  return space.is_discrete() ? 1 : static_cast<int>(space.lower.size());
}

// Discrete: index moves by h and is clamped to the valid range, so on a
// binary space +1 selects action 1 and -1 selects action 0. Continuous:
// clamp(a + h * e_a) to the box.
Action ApplyActionFeedback(const ActionSpace& space, const Action& proposed,
                           const ActionFeedback& feedback,
                           const Eigen::VectorXd& action_error);

}  // namespace tips

#endif  // TIPS_BASELINES_ACTION_FEEDBACK_H_

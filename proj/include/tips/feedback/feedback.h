#ifndef TIPS_FEEDBACK_FEEDBACK_H_
#define TIPS_FEEDBACK_FEEDBACK_H_

#include <vector>

#include <Eigen/Dense>

namespace tips {

// Binary corrective feedback: one value in {-1, 0, +1} per feedback
// dimension of the environment. Zero means "no opinion" on that dimension.
class FeedbackSignal {
 public:
  FeedbackSignal() = default;
  // Throws std::invalid_argument if any value is outside {-1, 0, +1}.
  explicit FeedbackSignal(std::vector<int> values, int step = 0);

  static FeedbackSignal Null(int dims, int step = 0);

  const std::vector<int>& values() const { return values_; }
  int size() const { return static_cast<int>(values_.size()); }
  int operator[](int d) const { return values_[d]; }
  int step() const { return step_; }

  // True iff every dimension is zero.
  bool is_null() const;
  int active_count() const;

  bool operator==(const FeedbackSignal& other) const = default;

 private:
  std::vector<int> values_;
  int step_ = 0;
};

// Per-dimension magnitude that turns a binary signal into a state offset.
class ErrorConstants {
 public:
  // Throws std::invalid_argument unless every entry is finite and > 0.
  explicit ErrorConstants(Eigen::VectorXd values);

  const Eigen::VectorXd& values() const { return values_; }
  int size() const { return static_cast<int>(values_.size()); }

 private:
  Eigen::VectorXd values_;
};

struct DesiredState {
  Eigen::VectorXd target;  // in feedback-observable units
  std::vector<bool> mask;  // true where feedback was given
};

// target[d] = observables[d] + h[d] * e[d]. Throws std::invalid_argument on a
// null signal or mismatched sizes.
DesiredState ComputeDesiredState(const Eigen::VectorXd& observables,
                                 const FeedbackSignal& feedback,
                                 const ErrorConstants& error);

inline bool IsNull(const FeedbackSignal& feedback) { return feedback.is_null(); }

}  // namespace tips

#endif  // TIPS_FEEDBACK_FEEDBACK_H_

#include "tips/feedback/feedback.h"

#include <algorithm>
#include <stdexcept>
#include <utility>

namespace tips {

FeedbackSignal::FeedbackSignal(std::vector<int> values, int step)
    : values_(std::move(values)), step_(step) {
  for (int v : values_) {
    if (v < -1 || v > 1) {
      throw std::invalid_argument("feedback values must be -1, 0 or +1");
    }
  }
}

FeedbackSignal FeedbackSignal::Null(int dims, int step) {
  return FeedbackSignal(std::vector<int>(dims, 0), step);
}

bool FeedbackSignal::is_null() const {
  return std::all_of(values_.begin(), values_.end(),
                     [](int v) { return v == 0; });
}

int FeedbackSignal::active_count() const {
  return static_cast<int>(
      std::count_if(values_.begin(), values_.end(), [](int v) { return v != 0; }));
}

ErrorConstants::ErrorConstants(Eigen::VectorXd values)
    : values_(std::move(values)) {
  if (values_.size() == 0 || !values_.allFinite() ||
      (values_.array() <= 0.0).any()) {
    throw std::invalid_argument("error constants must be finite and positive");
  }
}

DesiredState ComputeDesiredState(const Eigen::VectorXd& observables,
                                 const FeedbackSignal& feedback,
                                 const ErrorConstants& error) {
  if (feedback.is_null()) {
    throw std::invalid_argument("desired state requested for null feedback");
  }
  if (observables.size() != feedback.size() ||
      error.size() != feedback.size()) {
    throw std::invalid_argument("feedback dimension mismatch");
  }
  DesiredState out;
  out.target = observables;
  out.mask.assign(feedback.size(), false);
  for (int d = 0; d < feedback.size(); ++d) {
    if (feedback[d] != 0) {
      out.target[d] += feedback[d] * error.values()[d];
      out.mask[d] = true;
    }
  }
  return out;
}

}  // namespace tips

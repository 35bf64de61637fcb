#include "tips/serve/feedback_reducer.h"

#include <stdexcept>

namespace tips {

void FeedbackReducer::Add(const FeedbackEvent& event) {
  auto it = latest_.find(event.dim);
  if (it == latest_.end() || event.ts >= it->second.ts) {
    latest_[event.dim] = event;
  }
}

std::vector<int> FeedbackReducer::Take(int num_dims) {
  std::vector<int> h(static_cast<std::size_t>(num_dims), 0);
  for (const auto& [dim, event] : latest_) {
    if (dim < 0 || dim >= num_dims) {
      throw std::out_of_range("feedback dim out of range");
    }
    h[static_cast<std::size_t>(dim)] = event.value;
  }
  latest_.clear();
  return h;
}

}  // namespace tips

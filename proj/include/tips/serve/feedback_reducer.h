#ifndef TIPS_SERVE_FEEDBACK_REDUCER_H_
#define TIPS_SERVE_FEEDBACK_REDUCER_H_

#include <map>
#include <vector>

#include "tips/serve/protocol.h"

namespace tips {

// Collapses the key events of one control interval into a single signal:
// per dim, the event with the latest client timestamp wins (equal
// timestamps: the later arrival). Dims without events are 0.
class FeedbackReducer {
 public:
  void Add(const FeedbackEvent& event);
  // Returns the reduced signal and forgets all events.
  std::vector<int> Take(int num_dims);
  bool empty() const { return latest_.empty(); }
  void Clear() { latest_.clear(); }

 private:
  std::map<int, FeedbackEvent> latest_;
};

}  // namespace tips

#endif  // TIPS_SERVE_FEEDBACK_REDUCER_H_

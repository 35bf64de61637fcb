#ifndef TIPS_NN_ADAM_H_
#define TIPS_NN_ADAM_H_

#include <cstdint>

#include "tips/nn/mlp.h"

namespace tips {

struct AdamOptions {
  double learning_rate = 0.005;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
};

// First and second moment accumulators for one network.
class AdamState {
 public:
  AdamState(const Mlp& net, AdamOptions options);

  const AdamOptions& options() const { return options_; }
  std::int64_t step() const { return step_; }

 private:
  friend void AdamStep(Mlp& net, AdamState& state, const MlpGradients& grads);

  AdamOptions options_;
  MlpGradients first_moment_;
  MlpGradients second_moment_;
  std::int64_t step_ = 0;
};

// Bias-corrected Adam update. Throws std::invalid_argument on shape mismatch
// or non-finite gradients; the network and state are untouched in that case.
void AdamStep(Mlp& net, AdamState& state, const MlpGradients& grads);

// One gradient evaluation followed by one AdamStep. Returns the loss before
// the update.
double TrainMinibatch(Mlp& net, AdamState& state, const TrainBatch& batch);

}  // namespace tips

#endif  // TIPS_NN_ADAM_H_

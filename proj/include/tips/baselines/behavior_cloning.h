#ifndef TIPS_BASELINES_BEHAVIOR_CLONING_H_
#define TIPS_BASELINES_BEHAVIOR_CLONING_H_

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "tips/agent/policy.h"
#include "tips/baselines/demo_dataset.h"
#include "tips/envs/env.h"
#include "tips/session/episode_log.h"

namespace tips {

inline constexpr double kSuccessfulDemoThreshold = 0.4;

struct BcConfig {
  PolicyConfig policy;
  int epochs = 200;
  double min_normalized_return = kSuccessfulDemoThreshold;
};

class NoSuccessfulDemonstrations : public std::runtime_error {
 public:
  NoSuccessfulDemonstrations()
      : std::runtime_error("no successful demonstrations") {}
};

// Episodes whose normalized return is >= `min_normalized_return`, in
// their original order.
DemoDataset FilterSuccessful(const DemoDataset& data, const Env& env,
                             double min_normalized_return);

// Supervised MSE training on the successful episodes for a fixed epoch
// budget, reshuffling pairs each epoch. Throws std::invalid_argument on an
// empty dataset and NoSuccessfulDemonstrations if the filter keeps nothing.
Policy TrainBehaviorCloning(const DemoDataset& data, const Env& env,
                            const BcConfig& config, std::uint64_t seed);

// Feedback-free rollouts of `policy`.
std::vector<EpisodeLog> EvaluatePolicy(const Env& env, const Policy& policy,
                                       int episodes, std::uint64_t seed);

}  // namespace tips

#endif  // TIPS_BASELINES_BEHAVIOR_CLONING_H_

#ifndef TIPS_AGENT_POLICY_H_
#define TIPS_AGENT_POLICY_H_

#include <vector>

#include <Eigen/Dense>

#include "tips/envs/env.h"
#include "tips/nn/adam.h"
#include "tips/nn/mlp.h"
#include "tips/random.h"

namespace tips {

struct PolicyConfig {
  std::vector<int> hidden_sizes = {16, 16};
  AdamOptions adam;
  int batch_size = 16;
};

// State -> action network. Discrete spaces: one score per action, executed
// as the argmax (lowest index on ties) and trained against one-hot targets.
// Continuous spaces: tanh outputs scaled affinely onto the action box,
// trained against targets mapped back into [-1, 1].
class Policy {
 public:
  Policy(const EnvSpec& spec, PolicyConfig config, Rng& init_rng);

  Action Act(const Eigen::VectorXd& state) const;
  Eigen::VectorXd Target(const Action& action) const;

  // One Adam step on `batch`; returns the pre-update loss.
  double Train(const TrainBatch& batch);

  const Mlp& network() const { return net_; }
  Mlp& mutable_network() { return net_; }
  const ActionSpace& action_space() const { return space_; }
  const PolicyConfig& config() const { return config_; }
  std::int64_t train_steps() const { return adam_.step(); }

 private:
  ActionSpace space_;
  PolicyConfig config_;
  Mlp net_;
  AdamState adam_;
};

}  // namespace tips

#endif  // TIPS_AGENT_POLICY_H_

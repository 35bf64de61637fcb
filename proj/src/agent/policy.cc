#include "tips/agent/policy.h"

#include <stdexcept>

namespace tips {
namespace {

std::vector<int> PolicySizes(const EnvSpec& spec, const PolicyConfig& config) {
  std::vector<int> sizes{spec.state_dim};
  sizes.insert(sizes.end(), config.hidden_sizes.begin(),
               config.hidden_sizes.end());
  sizes.push_back(spec.action_space.encoding_size());
  return sizes;
}

}  // namespace

Policy::Policy(const EnvSpec& spec, PolicyConfig config, Rng& init_rng)
    : space_(spec.action_space),
      config_(std::move(config)),
      net_(Mlp::HeUniform(PolicySizes(spec, config_),
                          space_.is_discrete() ? OutputActivation::kIdentity
                                               : OutputActivation::kTanh,
                          init_rng)),
      adam_(net_, config_.adam) {
  if (config_.batch_size <= 0) {
    throw std::invalid_argument("policy batch size must be positive");
  }
}

Action Policy::Act(const Eigen::VectorXd& state) const {
  const Eigen::VectorXd out = net_.Forward(state);
  if (space_.is_discrete()) {
    Eigen::Index best = 0;
    for (Eigen::Index i = 1; i < out.size(); ++i) {
      if (out[i] > out[best]) best = i;
    }
    return Action::Discrete(static_cast<int>(best));
  }
  const Eigen::VectorXd mid = 0.5 * (space_.upper + space_.lower);
  const Eigen::VectorXd half = 0.5 * (space_.upper - space_.lower);
  return Action::Continuous(
      (mid + half.cwiseProduct(out)).cwiseMax(space_.lower).cwiseMin(space_.upper));
}

Eigen::VectorXd Policy::Target(const Action& action) const {
  const Action a = ValidateAndClamp(space_, action);
  if (space_.is_discrete()) return EncodeAction(space_, a);
  const Eigen::VectorXd mid = 0.5 * (space_.upper + space_.lower);
  const Eigen::VectorXd half = 0.5 * (space_.upper - space_.lower);
  return (a.values() - mid).cwiseQuotient(half);
}

double Policy::Train(const TrainBatch& batch) {
  return TrainMinibatch(net_, adam_, batch);
}

}  // namespace tips

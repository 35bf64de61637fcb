#include "tips/dynamics/inverse_dynamics.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace tips {

ActionSampler::ActionSampler(ActionSpace space, int num_samples)
    : space_(std::move(space)), num_samples_(num_samples) {
  if (!space_.is_discrete() && num_samples_ <= 0) {
    throw std::invalid_argument("continuous sampler needs num_samples > 0");
  }
}

std::vector<Action> ActionSampler::Sample(Rng& rng) const {
  std::vector<Action> out;
  if (space_.is_discrete()) {
    out.reserve(static_cast<std::size_t>(space_.num_actions));
    for (int i = 0; i < space_.num_actions; ++i) {
      out.push_back(Action::Discrete(i));
    }
    return out;
  }
  out.reserve(static_cast<std::size_t>(num_samples_));
  for (int i = 0; i < num_samples_; ++i) out.push_back(RandomAction(space_, rng));
  return out;
}

double MaskedDistance(const Eigen::VectorXd& a, const Eigen::VectorXd& b,
                      const std::vector<bool>& mask) {
  double sum = 0.0;
  for (std::size_t d = 0; d < mask.size(); ++d) {
    if (!mask[d]) continue;
    const double diff = a[static_cast<Eigen::Index>(d)] - b[static_cast<Eigen::Index>(d)];
    sum += diff * diff;
  }
  return std::sqrt(sum);
}

ActionChoice SelectAction(const DynamicsModel& model,
                          const ObservableFn& observables,
                          const Eigen::VectorXd& state,
                          const DesiredState& desired,
                          const std::vector<Action>& candidates) {
  if (candidates.empty()) {
    throw std::invalid_argument("no candidate actions to select from");
  }
  if (std::none_of(desired.mask.begin(), desired.mask.end(),
                   [](bool b) { return b; })) {
    throw std::invalid_argument("desired state has no active dimension");
  }
  const Eigen::MatrixXd predicted = model.PredictBatch(state, candidates);
  ActionChoice best;
  best.distance = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    const Eigen::VectorXd obs =
        observables(predicted.row(static_cast<Eigen::Index>(i)).transpose());
    const double dist = MaskedDistance(obs, desired.target, desired.mask);
    if (dist < best.distance) {
      best.distance = dist;
      best.candidate_index = static_cast<int>(i);
    }
  }
  if (best.candidate_index < 0) {
    throw std::runtime_error("no finite distance among candidate actions");
  }
  best.action = candidates[static_cast<std::size_t>(best.candidate_index)];
  return best;
}

}  // namespace tips

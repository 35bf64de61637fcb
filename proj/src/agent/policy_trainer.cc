#include "tips/agent/policy_trainer.h"

#include <algorithm>
#include <stdexcept>

namespace tips {

PolicyTrainer::PolicyTrainer(Policy policy, int t_update, std::size_t capacity)
    : policy_(std::move(policy)), buffer_(capacity), t_update_(t_update) {
  if (t_update_ <= 0) throw std::invalid_argument("T_update must be positive");
}

ImmediateLosses PolicyTrainer::AddCorrection(const Eigen::VectorXd& state,
                                             const Action& target,
                                             Rng& replay_rng) {
  buffer_.Push(DemoPair{state, target});
  return ImmediateUpdate(buffer_[buffer_.size() - 1], replay_rng);
}

ImmediateLosses PolicyTrainer::ImmediateUpdate(const DemoPair& pair,
                                               Rng& replay_rng) {
  if (buffer_.empty()) {
    throw std::logic_error("immediate update before any demonstration");
  }
  TrainBatch single;
  single.inputs = pair.state.transpose();
  single.targets = policy_.Target(pair.action).transpose();
  ImmediateLosses losses;
  losses.pair_loss = policy_.Train(single);
  ++counts_.immediate;

  losses.batch_loss = policy_.Train(SampleBatch(replay_rng));
  ++counts_.paired_batch;
  return losses;
}

std::optional<double> PolicyTrainer::MaybePeriodicUpdate(int episode_step,
                                                         Rng& replay_rng) {
  if (episode_step <= 0 || episode_step % t_update_ != 0 || buffer_.empty()) {
    return std::nullopt;
  }
  const double loss = policy_.Train(SampleBatch(replay_rng));
  ++counts_.periodic;
  return loss;
}

TrainBatch PolicyTrainer::SampleBatch(Rng& replay_rng) const {
  if (buffer_.empty()) throw std::logic_error("empty demonstration buffer");
  const std::size_t n =
      std::min<std::size_t>(static_cast<std::size_t>(policy_.config().batch_size),
                            buffer_.size());
  const DemoPair& first = buffer_[0];
  TrainBatch batch;
  batch.inputs.resize(static_cast<Eigen::Index>(n), first.state.size());
  batch.targets.resize(static_cast<Eigen::Index>(n),
                       policy_.network().output_size());
  for (std::size_t r = 0; r < n; ++r) {
    const DemoPair& p = buffer_[UniformIndex(replay_rng, buffer_.size())];
    batch.inputs.row(static_cast<Eigen::Index>(r)) = p.state.transpose();
    batch.targets.row(static_cast<Eigen::Index>(r)) =
        policy_.Target(p.action).transpose();
  }
  return batch;
}

}  // namespace tips

#ifndef TIPS_AGENT_POLICY_TRAINER_H_
#define TIPS_AGENT_POLICY_TRAINER_H_

#include <cstdint>
#include <optional>

#include <Eigen/Dense>

#include "tips/agent/policy.h"
#include "tips/random.h"
#include "tips/ring_buffer.h"

namespace tips {

inline constexpr std::size_t kDemonstrationCapacity = 10000;

struct DemoPair {
  Eigen::VectorXd state;
  Action action = Action::Discrete(0);
};

using DemonstrationBuffer = RingBuffer<DemoPair>;

struct UpdateCounts {
  std::int64_t immediate = 0;     // single-pair steps
  std::int64_t paired_batch = 0;  // replay batch right after a pair step
  std::int64_t periodic = 0;      // every T_update steps

  bool operator==(const UpdateCounts&) const = default;
};

struct ImmediateLosses {
  double pair_loss = 0.0;
  double batch_loss = 0.0;
};

// The interactive update schedule shared by TIPS and D-COACH: every
// correction triggers one step on the corrected pair and one on a replay
// batch from the demonstration buffer; independently, a replay batch step
// runs whenever the per-episode step index is a multiple of T_update.
class PolicyTrainer {
 public:
  PolicyTrainer(Policy policy, int t_update,
                std::size_t capacity = kDemonstrationCapacity);

  // Appends (state, target) to the buffer, then runs ImmediateUpdate.
  ImmediateLosses AddCorrection(const Eigen::VectorXd& state,
                                const Action& target, Rng& replay_rng);

  // One step on `pair` followed by one step on a batch of
  // min(batch_size, |D|) pairs drawn uniformly with replacement. The buffer
  // must already be non-empty.
  ImmediateLosses ImmediateUpdate(const DemoPair& pair, Rng& replay_rng);

  // Runs a replay batch step when `episode_step` (1-based) is a multiple of
  // T_update and the buffer is non-empty. Returns the loss if it ran.
  std::optional<double> MaybePeriodicUpdate(int episode_step, Rng& replay_rng);

  // Uniform-with-replacement replay batch of min(batch_size, |D|) pairs.
  TrainBatch SampleBatch(Rng& replay_rng) const;

  const Policy& policy() const { return policy_; }
  Policy& mutable_policy() { return policy_; }
  const DemonstrationBuffer& buffer() const { return buffer_; }
  const UpdateCounts& counts() const { return counts_; }
  int t_update() const { return t_update_; }

 private:
  Policy policy_;
  DemonstrationBuffer buffer_;
  int t_update_;
  UpdateCounts counts_;
};

}  // namespace tips

#endif  // TIPS_AGENT_POLICY_TRAINER_H_

#ifndef TIPS_DYNAMICS_FORWARD_MODEL_H_
#define TIPS_DYNAMICS_FORWARD_MODEL_H_

#include <cstdint>
#include <memory>
#include <vector>

#include <Eigen/Dense>

#include "tips/envs/env.h"
#include "tips/nn/adam.h"
#include "tips/nn/mlp.h"
#include "tips/random.h"
#include "tips/ring_buffer.h"

namespace tips {

inline constexpr std::size_t kExperienceCapacity = 100000;

using ExperienceBuffer = RingBuffer<Transition>;

// Runs a uniformly random policy for `num_samples` steps, resetting whenever
// an episode ends. Reset seeds and actions are drawn from a stream seeded by
// `seed`.
ExperienceBuffer CollectExploration(Env& env, int num_samples,
                                    std::uint64_t seed,
                                    std::size_t capacity = kExperienceCapacity);

Action RandomAction(const ActionSpace& space, Rng& rng);

// Anything that can predict next states for a batch of candidate actions.
class DynamicsModel {
 public:
  virtual ~DynamicsModel() = default;
  // Row i is the predicted next state under actions[i].
  virtual Eigen::MatrixXd PredictBatch(
      const Eigen::VectorXd& state, const std::vector<Action>& actions) const = 0;

  Eigen::VectorXd Predict(const Eigen::VectorXd& state,
                          const Action& action) const;
};

// Ground-truth dynamics from a private copy of an environment. Useful as a
// perfect model in tests and ablations.
class ExactDynamics : public DynamicsModel {
 public:
  explicit ExactDynamics(const Env& env) : env_(env.Clone()) {}
  Eigen::MatrixXd PredictBatch(
      const Eigen::VectorXd& state,
      const std::vector<Action>& actions) const override;

 private:
  std::unique_ptr<Env> env_;
};

// Per-dimension affine standardization, std floored at 1e-6.
struct Standardizer {
  Eigen::VectorXd mean;
  Eigen::VectorXd std;

  static Standardizer Identity(int dims);
  static Standardizer Fit(const Eigen::MatrixXd& rows);
  Eigen::MatrixXd Apply(const Eigen::MatrixXd& rows) const;
  Eigen::MatrixXd Invert(const Eigen::MatrixXd& rows) const;
};

struct FdmConfig {
  std::vector<int> hidden_sizes = {16, 16};
  AdamOptions adam;
  int batch_size = 16;
};

// Learnt forward model: next_state = state + denormalize(net(normalize(
// state ++ encode(action)))). Transitions with index % 10 == 9 in the buffer
// are held out from training and used for evaluation.
class ForwardDynamicsModel : public DynamicsModel {
 public:
  ForwardDynamicsModel(const EnvSpec& spec, FdmConfig config, Rng& init_rng);

  Eigen::MatrixXd PredictBatch(
      const Eigen::VectorXd& state,
      const std::vector<Action>& actions) const override;

  // Refits normalization on the training split, runs `epochs` shuffled
  // minibatch passes over it and returns the held-out MSE.
  double Train(const ExperienceBuffer& buffer, int epochs, Rng& train_rng);

  // Fits the standardizers on the training split without touching weights.
  void FitNormalization(const ExperienceBuffer& buffer);

  // Mean squared one-step error of the predicted next state over the
  // held-out split (the whole buffer if it has fewer than 10 transitions).
  double HeldOutMse(const ExperienceBuffer& buffer) const;

  const Mlp& network() const { return net_; }
  const FdmConfig& config() const { return config_; }
  std::int64_t train_steps() const { return adam_.step(); }
  const Standardizer& input_norm() const { return input_norm_; }
  const Standardizer& output_norm() const { return output_norm_; }

  static bool IsHeldOut(std::size_t index) { return index % 10 == 9; }

 private:
  Eigen::VectorXd EncodeInput(const Eigen::VectorXd& state,
                              const Action& action) const;
  void BuildTrainingSet(const ExperienceBuffer& buffer, Eigen::MatrixXd& inputs,
                        Eigen::MatrixXd& deltas) const;

  ActionSpace action_space_;
  int state_dim_;
  FdmConfig config_;
  Mlp net_;
  AdamState adam_;
  Standardizer input_norm_;
  Standardizer output_norm_;
};

}  // namespace tips

#endif  // TIPS_DYNAMICS_FORWARD_MODEL_H_

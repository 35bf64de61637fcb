#include "tips/dynamics/forward_model.h"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace tips {
namespace {

constexpr double kStdFloor = 1e-6;

std::vector<int> NetSizes(int in, const std::vector<int>& hidden, int out) {
  std::vector<int> sizes{in};
  sizes.insert(sizes.end(), hidden.begin(), hidden.end());
  sizes.push_back(out);
  return sizes;
}

void ShuffleIndices(std::vector<std::size_t>& idx, Rng& rng) {
  for (std::size_t i = idx.size(); i > 1; --i) {
    std::swap(idx[i - 1], idx[UniformIndex(rng, i)]);
  }
}

}  // namespace

Action RandomAction(const ActionSpace& space, Rng& rng) {
  if (space.is_discrete()) {
    return Action::Discrete(
        static_cast<int>(UniformIndex(rng, static_cast<std::uint64_t>(space.num_actions))));
  }
  Eigen::VectorXd a(space.lower.size());
  for (Eigen::Index d = 0; d < a.size(); ++d) {
    a[d] = UniformReal(rng, space.lower[d], space.upper[d]);
  }
  return Action::Continuous(std::move(a));
}

ExperienceBuffer CollectExploration(Env& env, int num_samples,
                                    std::uint64_t seed, std::size_t capacity) {
  if (num_samples <= 0) {
    throw std::invalid_argument("exploration sample count must be positive");
  }
  Rng rng(seed);
  ExperienceBuffer buffer(capacity);
  env.Reset(rng());
  for (int i = 0; i < num_samples; ++i) {
    if (env.done()) env.Reset(rng());
    buffer.Push(env.Step(RandomAction(env.spec().action_space, rng)));
  }
  return buffer;
}

Eigen::VectorXd DynamicsModel::Predict(const Eigen::VectorXd& state,
                                       const Action& action) const {
  return PredictBatch(state, {action}).row(0).transpose();
}

Eigen::MatrixXd ExactDynamics::PredictBatch(
    const Eigen::VectorXd& state, const std::vector<Action>& actions) const {
  Eigen::MatrixXd out(static_cast<Eigen::Index>(actions.size()), state.size());
  for (std::size_t i = 0; i < actions.size(); ++i) {
    out.row(static_cast<Eigen::Index>(i)) =
        env_->Simulate(state, actions[i]).next_state.transpose();
  }
  return out;
}

Standardizer Standardizer::Identity(int dims) {
  return {Eigen::VectorXd::Zero(dims), Eigen::VectorXd::Ones(dims)};
}

Standardizer Standardizer::Fit(const Eigen::MatrixXd& rows) {
  Standardizer s;
  s.mean = rows.colwise().mean().transpose();
  const Eigen::MatrixXd centered = rows.rowwise() - s.mean.transpose();
  s.std = (centered.colwise().squaredNorm() / static_cast<double>(rows.rows()))
              .cwiseSqrt()
              .transpose()
              .cwiseMax(kStdFloor);
  return s;
}

Eigen::MatrixXd Standardizer::Apply(const Eigen::MatrixXd& rows) const {
  return (rows.rowwise() - mean.transpose()).array().rowwise() /
         std.transpose().array();
}

Eigen::MatrixXd Standardizer::Invert(const Eigen::MatrixXd& rows) const {
  return ((rows.array().rowwise() * std.transpose().array()).matrix())
             .rowwise() +
         mean.transpose();
}

ForwardDynamicsModel::ForwardDynamicsModel(const EnvSpec& spec,
                                           FdmConfig config, Rng& init_rng)
    : action_space_(spec.action_space),
      state_dim_(spec.state_dim),
      config_(std::move(config)),
      net_(Mlp::HeUniform(
          NetSizes(spec.state_dim + spec.action_space.encoding_size(),
                   config_.hidden_sizes, spec.state_dim),
          OutputActivation::kIdentity, init_rng)),
      adam_(net_, config_.adam),
      input_norm_(Standardizer::Identity(net_.input_size())),
      output_norm_(Standardizer::Identity(state_dim_)) {
  if (config_.batch_size <= 0) {
    throw std::invalid_argument("FDM batch size must be positive");
  }
}

Eigen::VectorXd ForwardDynamicsModel::EncodeInput(const Eigen::VectorXd& state,
                                                  const Action& action) const {
  Eigen::VectorXd in(net_.input_size());
  in << state, EncodeAction(action_space_, action);
  return in;
}

Eigen::MatrixXd ForwardDynamicsModel::PredictBatch(
    const Eigen::VectorXd& state, const std::vector<Action>& actions) const {
  if (state.size() != state_dim_) {
    throw std::invalid_argument("state dimension mismatch in FDM prediction");
  }
  if (!state.allFinite()) {
    throw std::invalid_argument("non-finite state in FDM prediction");
  }
  const Eigen::Index n = static_cast<Eigen::Index>(actions.size());
  Eigen::MatrixXd inputs(n, net_.input_size());
  for (Eigen::Index i = 0; i < n; ++i) {
    inputs.row(i) = EncodeInput(state, actions[i]).transpose();
  }
  if (!inputs.allFinite()) {
    throw std::invalid_argument("non-finite action in FDM prediction");
  }
  Eigen::MatrixXd next =
      output_norm_.Invert(net_.ForwardBatch(input_norm_.Apply(inputs)));
  next.rowwise() += state.transpose();
  return next;
}

void ForwardDynamicsModel::BuildTrainingSet(const ExperienceBuffer& buffer,
                                            Eigen::MatrixXd& inputs,
                                            Eigen::MatrixXd& deltas) const {
  std::vector<std::size_t> train;
  for (std::size_t i = 0; i < buffer.size(); ++i) {
    if (buffer.size() < 10 || !IsHeldOut(i)) train.push_back(i);
  }
  if (train.empty()) throw std::invalid_argument("empty experience buffer");
  const Eigen::Index n = static_cast<Eigen::Index>(train.size());
  inputs.resize(n, net_.input_size());
  deltas.resize(n, state_dim_);
  for (Eigen::Index r = 0; r < n; ++r) {
    const Transition& t = buffer[train[static_cast<std::size_t>(r)]];
    inputs.row(r) = EncodeInput(t.state, t.action).transpose();
    deltas.row(r) = (t.next_state - t.state).transpose();
  }
}

void ForwardDynamicsModel::FitNormalization(const ExperienceBuffer& buffer) {
  Eigen::MatrixXd inputs, deltas;
  BuildTrainingSet(buffer, inputs, deltas);
  input_norm_ = Standardizer::Fit(inputs);
  output_norm_ = Standardizer::Fit(deltas);
}

double ForwardDynamicsModel::Train(const ExperienceBuffer& buffer, int epochs,
                                   Rng& train_rng) {
  Eigen::MatrixXd inputs, deltas;
  BuildTrainingSet(buffer, inputs, deltas);
  input_norm_ = Standardizer::Fit(inputs);
  output_norm_ = Standardizer::Fit(deltas);
  const Eigen::Index n = inputs.rows();
  const Eigen::MatrixXd x = input_norm_.Apply(inputs);
  const Eigen::MatrixXd y = output_norm_.Apply(deltas);

  const Eigen::Index batch = std::min<Eigen::Index>(config_.batch_size, n);
  std::vector<std::size_t> order(static_cast<std::size_t>(n));
  TrainBatch mb;
  for (int epoch = 0; epoch < epochs; ++epoch) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    ShuffleIndices(order, train_rng);
    for (Eigen::Index start = 0; start < n; start += batch) {
      const Eigen::Index len = std::min(batch, n - start);
      mb.inputs.resize(len, x.cols());
      mb.targets.resize(len, y.cols());
      for (Eigen::Index r = 0; r < len; ++r) {
        const Eigen::Index src =
            static_cast<Eigen::Index>(order[static_cast<std::size_t>(start + r)]);
        mb.inputs.row(r) = x.row(src);
        mb.targets.row(r) = y.row(src);
      }
      TrainMinibatch(net_, adam_, mb);
    }
  }
  return HeldOutMse(buffer);
}

double ForwardDynamicsModel::HeldOutMse(const ExperienceBuffer& buffer) const {
  if (buffer.empty()) throw std::invalid_argument("empty experience buffer");
  double sum = 0.0;
  std::size_t count = 0;
  for (std::size_t i = 0; i < buffer.size(); ++i) {
    if (buffer.size() >= 10 && !IsHeldOut(i)) continue;
    const Transition& t = buffer[i];
    sum += (Predict(t.state, t.action) - t.next_state).squaredNorm();
    count += static_cast<std::size_t>(state_dim_);
  }
  return sum / static_cast<double>(count);
}

}  // namespace tips

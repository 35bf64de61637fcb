#include "tips/nn/adam.h"

#include <cmath>
#include <stdexcept>

namespace tips {

AdamState::AdamState(const Mlp& net, AdamOptions options)
    : options_(options),
      first_moment_(MlpGradients::ZerosLike(net)),
      second_moment_(MlpGradients::ZerosLike(net)) {
  if (!(options_.learning_rate > 0.0)) {
    throw std::invalid_argument("Adam learning rate must be positive");
  }
}

void AdamStep(Mlp& net, AdamState& state, const MlpGradients& grads) {
  const int layers = net.num_layers();
  if (static_cast<int>(grads.weights.size()) != layers ||
      static_cast<int>(grads.biases.size()) != layers ||
      static_cast<int>(state.first_moment_.weights.size()) != layers) {
    throw std::invalid_argument("gradient layer count does not match network");
  }
  for (int l = 0; l < layers; ++l) {
    if (grads.weights[l].rows() != net.weights()[l].rows() ||
        grads.weights[l].cols() != net.weights()[l].cols() ||
        grads.biases[l].size() != net.biases()[l].size() ||
        state.first_moment_.weights[l].rows() != net.weights()[l].rows() ||
        state.first_moment_.weights[l].cols() != net.weights()[l].cols()) {
      throw std::invalid_argument("gradient shape does not match network");
    }
  }
  if (!grads.AllFinite()) {
    throw std::invalid_argument("non-finite gradient");
  }

  const AdamOptions& o = state.options_;
  state.step_ += 1;
  const double t = static_cast<double>(state.step_);
  const double m_correction = 1.0 - std::pow(o.beta1, t);
  const double v_correction = 1.0 - std::pow(o.beta2, t);

  auto update = [&](auto& param, auto& m, auto& v, const auto& g) {
    m = o.beta1 * m + (1.0 - o.beta1) * g;
    v = o.beta2 * v + (1.0 - o.beta2) * g.cwiseProduct(g);
    param.array() -= o.learning_rate * (m.array() / m_correction) /
                     ((v.array() / v_correction).sqrt() + o.epsilon);
  };
  for (int l = 0; l < layers; ++l) {
    update(net.weights()[l], state.first_moment_.weights[l],
           state.second_moment_.weights[l], grads.weights[l]);
    update(net.biases()[l], state.first_moment_.biases[l],
           state.second_moment_.biases[l], grads.biases[l]);
  }
}

double TrainMinibatch(Mlp& net, AdamState& state, const TrainBatch& batch) {
  double loss = 0.0;
  const MlpGradients grads = Gradients(net, batch, &loss);
  AdamStep(net, state, grads);
  return loss;
}

}  // namespace tips

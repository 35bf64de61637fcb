#include "tips/nn/mlp.h"

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

namespace tips {
namespace {

void CheckBatch(const Mlp& net, const TrainBatch& batch) {
  if (batch.inputs.rows() == 0) {
    throw std::invalid_argument("empty training batch");
  }
  if (batch.inputs.rows() != batch.targets.rows()) {
    throw std::invalid_argument("batch input/target row counts differ");
  }
  if (batch.inputs.cols() != net.input_size() ||
      batch.targets.cols() != net.output_size()) {
    throw std::invalid_argument("batch dimensions do not match network");
  }
  if (!batch.inputs.allFinite() || !batch.targets.allFinite()) {
    throw std::invalid_argument("batch contains non-finite values");
  }
}

}  // namespace

Mlp::Mlp(std::vector<int> layer_sizes, OutputActivation output_activation)
    : layer_sizes_(std::move(layer_sizes)),
      output_activation_(output_activation) {
  if (layer_sizes_.size() < 2) {
    throw std::invalid_argument("an MLP needs at least input and output sizes");
  }
  for (int n : layer_sizes_) {
    if (n <= 0) throw std::invalid_argument("layer sizes must be positive");
  }
  for (std::size_t l = 0; l + 1 < layer_sizes_.size(); ++l) {
    weights_.push_back(
        Eigen::MatrixXd::Zero(layer_sizes_[l + 1], layer_sizes_[l]));
    biases_.push_back(Eigen::VectorXd::Zero(layer_sizes_[l + 1]));
  }
}

Mlp Mlp::HeUniform(std::vector<int> layer_sizes,
                   OutputActivation output_activation, Rng& rng) {
  Mlp net(std::move(layer_sizes), output_activation);
  for (auto& w : net.weights_) {
    const double bound = std::sqrt(6.0 / static_cast<double>(w.cols()));
    // column-major fill order is part of the seeded contract
    for (Eigen::Index j = 0; j < w.cols(); ++j) {
      for (Eigen::Index i = 0; i < w.rows(); ++i) {
        w(i, j) = UniformReal(rng, -bound, bound);
      }
    }
  }
  return net;
}

Eigen::VectorXd Mlp::Forward(const Eigen::VectorXd& input) const {
  if (input.size() != input_size()) {
    throw std::invalid_argument("input length " + std::to_string(input.size()) +
                                " does not match network input size " +
                                std::to_string(input_size()));
  }
  Eigen::VectorXd a = input;
  for (int l = 0; l < num_layers(); ++l) {
    Eigen::VectorXd z = weights_[l] * a + biases_[l];
    if (l + 1 < num_layers()) {
      a = z.cwiseMax(0.0);
    } else if (output_activation_ == OutputActivation::kTanh) {
      a = z.array().tanh().matrix();
    } else {
      a = std::move(z);
    }
  }
  return a;
}

Eigen::MatrixXd Mlp::ForwardBatch(const Eigen::MatrixXd& inputs) const {
  if (inputs.cols() != input_size()) {
    throw std::invalid_argument("batch input width does not match network");
  }
  Eigen::MatrixXd a = inputs;
  for (int l = 0; l < num_layers(); ++l) {
    Eigen::MatrixXd z = a * weights_[l].transpose();
    z.rowwise() += biases_[l].transpose();
    if (l + 1 < num_layers()) {
      a = z.cwiseMax(0.0);
    } else if (output_activation_ == OutputActivation::kTanh) {
      a = z.array().tanh().matrix();
    } else {
      a = std::move(z);
    }
  }
  return a;
}

std::size_t Mlp::num_parameters() const {
  std::size_t n = 0;
  for (int l = 0; l < num_layers(); ++l) {
    n += static_cast<std::size_t>(weights_[l].size() + biases_[l].size());
  }
  return n;
}

bool Mlp::operator==(const Mlp& other) const {
  if (layer_sizes_ != other.layer_sizes_ ||
      output_activation_ != other.output_activation_) {
    return false;
  }
  for (int l = 0; l < num_layers(); ++l) {
    if (weights_[l] != other.weights_[l] || biases_[l] != other.biases_[l]) {
      return false;
    }
  }
  return true;
}

MlpGradients MlpGradients::ZerosLike(const Mlp& net) {
  MlpGradients g;
  for (int l = 0; l < net.num_layers(); ++l) {
    g.weights.push_back(Eigen::MatrixXd::Zero(net.weights()[l].rows(),
                                              net.weights()[l].cols()));
    g.biases.push_back(Eigen::VectorXd::Zero(net.biases()[l].size()));
  }
  return g;
}

bool MlpGradients::AllFinite() const {
  for (const auto& w : weights) {
    if (!w.allFinite()) return false;
  }
  for (const auto& b : biases) {
    if (!b.allFinite()) return false;
  }
  return true;
}

double MeanSquaredError(const Mlp& net, const TrainBatch& batch) {
  CheckBatch(net, batch);
  const Eigen::MatrixXd err = net.ForwardBatch(batch.inputs) - batch.targets;
  return err.squaredNorm() / static_cast<double>(err.size());
}

MlpGradients Gradients(const Mlp& net, const TrainBatch& batch, double* loss) {
  CheckBatch(net, batch);
  const int layers = net.num_layers();

  // activations[0] is the input; activations[l + 1] the output of layer l.
  std::vector<Eigen::MatrixXd> activations;
  activations.reserve(layers + 1);
  activations.push_back(batch.inputs);
  for (int l = 0; l < layers; ++l) {
    Eigen::MatrixXd z = activations.back() * net.weights()[l].transpose();
    z.rowwise() += net.biases()[l].transpose();
    if (l + 1 < layers) {
      activations.push_back(z.cwiseMax(0.0));
    } else if (net.output_activation() == OutputActivation::kTanh) {
      activations.push_back(z.array().tanh().matrix());
    } else {
      activations.push_back(std::move(z));
    }
  }

  const Eigen::MatrixXd err = activations.back() - batch.targets;
  const double count = static_cast<double>(err.size());
  if (loss != nullptr) *loss = err.squaredNorm() / count;

  // delta holds dL/dz for the current layer, one row per sample.
  Eigen::MatrixXd delta = (2.0 / count) * err;
  if (net.output_activation() == OutputActivation::kTanh) {
    const Eigen::ArrayXXd y = activations.back().array();
    delta = (delta.array() * (1.0 - y.square())).matrix();
  }

  MlpGradients grads = MlpGradients::ZerosLike(net);
  for (int l = layers - 1; l >= 0; --l) {
    grads.weights[l] = delta.transpose() * activations[l];
    grads.biases[l] = delta.colwise().sum().transpose();
    if (l > 0) {
      Eigen::MatrixXd upstream = delta * net.weights()[l];
      // ReLU derivative taken as 0 at exactly 0.
      delta = (upstream.array() * (activations[l].array() > 0.0).cast<double>())
                  .matrix();
    }
  }
  return grads;
}

}  // namespace tips

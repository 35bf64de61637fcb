#ifndef TIPS_NN_MLP_H_
#define TIPS_NN_MLP_H_

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "tips/random.h"

namespace tips {

enum class OutputActivation { kIdentity, kTanh };

// Supervised minibatch. One sample per row.
struct TrainBatch {
  Eigen::MatrixXd inputs;   // batch x in_dim
  Eigen::MatrixXd targets;  // batch x out_dim

  Eigen::Index size() const { return inputs.rows(); }
};

// Fully connected feed-forward network with ReLU hidden layers.
//
// Layer l maps a_{l-1} to W_l a_{l-1} + b_l, where W_l has shape
// (layer_sizes[l+1] x layer_sizes[l]). Hidden layers apply ReLU; the last
// layer applies `output_activation`.
class Mlp {
 public:
  Mlp(std::vector<int> layer_sizes, OutputActivation output_activation);

  // He-uniform weights (bound sqrt(6 / fan_in)) and zero biases.
  static Mlp HeUniform(std::vector<int> layer_sizes,
                       OutputActivation output_activation, Rng& rng);

  Eigen::VectorXd Forward(const Eigen::VectorXd& input) const;
  // Rows of `inputs` are independent samples.
  Eigen::MatrixXd ForwardBatch(const Eigen::MatrixXd& inputs) const;

  int input_size() const { return layer_sizes_.front(); }
  int output_size() const { return layer_sizes_.back(); }
  int num_layers() const { return static_cast<int>(weights_.size()); }
  std::size_t num_parameters() const;

  const std::vector<int>& layer_sizes() const { return layer_sizes_; }
  OutputActivation output_activation() const { return output_activation_; }

  std::vector<Eigen::MatrixXd>& weights() { return weights_; }
  const std::vector<Eigen::MatrixXd>& weights() const { return weights_; }
  std::vector<Eigen::VectorXd>& biases() { return biases_; }
  const std::vector<Eigen::VectorXd>& biases() const { return biases_; }

  bool operator==(const Mlp& other) const;

 private:
  std::vector<int> layer_sizes_;
  OutputActivation output_activation_;
  std::vector<Eigen::MatrixXd> weights_;
  std::vector<Eigen::VectorXd> biases_;
};

// Parameter-shaped container, used for gradients and Adam moments.
struct MlpGradients {
  std::vector<Eigen::MatrixXd> weights;
  std::vector<Eigen::VectorXd> biases;

  static MlpGradients ZerosLike(const Mlp& net);
  bool AllFinite() const;
};

// Mean over every batch entry and output dimension of (y - target)^2.
double MeanSquaredError(const Mlp& net, const TrainBatch& batch);

// Gradient of MeanSquaredError with respect to every parameter. If `loss`
// is non-null it receives the loss at the current parameters.
MlpGradients Gradients(const Mlp& net, const TrainBatch& batch,
                       double* loss = nullptr);

}  // namespace tips

#endif  // TIPS_NN_MLP_H_

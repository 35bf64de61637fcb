#ifndef TIPS_ENVS_CARTPOLE_H_
#define TIPS_ENVS_CARTPOLE_H_

#include "tips/envs/env.h"

namespace tips {

enum class CartPoleIntegrator {
  // positions advanced with the pre-step velocities
  kEuler,
  // velocities first, then positions with the updated velocities
  kSemiImplicitEuler,
};

struct CartPoleParams {
  double gravity = 9.8;
  double cart_mass = 1.0;
  double pole_mass = 0.1;
  double half_length = 0.5;
  double force_mag = 10.0;
  double dt = 0.02;
  double theta_threshold = 12.0 * 2.0 * 3.14159265358979323846 / 360.0;
  double x_threshold = 2.4;
  int max_steps = 200;
  double init_range = 0.05;
  CartPoleIntegrator integrator = CartPoleIntegrator::kSemiImplicitEuler;
};

// Cart-pole balancing with two push actions (0: left, 1: right).
// State: [x, x_dot, theta, theta_dot]. Reward +1 per step.
// Feedback observable: pole tip x = x + half_length * sin(theta).
class CartPole : public Env {
 public:
  explicit CartPole(CartPoleParams params = {});

  const EnvSpec& spec() const override { return spec_; }
  std::unique_ptr<Env> Clone() const override;
  const CartPoleParams& params() const { return params_; }

  Eigen::VectorXd InitialState(Rng& rng) const override;
  Eigen::VectorXd Dynamics(const Eigen::VectorXd& state,
                           const Action& action) const override;
  double Reward(const Eigen::VectorXd& state, const Action& action,
                const Eigen::VectorXd& next_state) const override;
  bool IsTerminal(const Eigen::VectorXd& state) const override;
  Eigen::VectorXd FeedbackObservables(
      const Eigen::VectorXd& state) const override;
  Scene Render(const Eigen::VectorXd& state) const override;

 private:
  CartPoleParams params_;
  EnvSpec spec_;
};

}  // namespace tips

#endif  // TIPS_ENVS_CARTPOLE_H_

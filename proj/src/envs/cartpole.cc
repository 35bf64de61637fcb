#include "tips/envs/cartpole.h"

#include <cmath>

namespace tips {

CartPole::CartPole(CartPoleParams params) : params_(params) {
  spec_.name = "cartpole";
  spec_.state_dim = 4;
  spec_.action_space = ActionSpace::Discrete(2);
  spec_.feedback_dims = {"pole_tip_x"};
  spec_.max_steps = params_.max_steps;
  spec_.min_return = 0.0;
  spec_.max_return = static_cast<double>(params_.max_steps);
}

std::unique_ptr<Env> CartPole::Clone() const {
  return std::make_unique<CartPole>(params_);
}

Eigen::VectorXd CartPole::InitialState(Rng& rng) const {
  Eigen::VectorXd s(4);
  for (int i = 0; i < 4; ++i) {
    s[i] = UniformReal(rng, -params_.init_range, params_.init_range);
  }
  return s;
}

Eigen::VectorXd CartPole::Dynamics(const Eigen::VectorXd& state,
                                   const Action& action) const {
  const CartPoleParams& p = params_;
  const double x = state[0], x_dot = state[1];
  const double theta = state[2], theta_dot = state[3];
  const double force = action.index() == 1 ? p.force_mag : -p.force_mag;

  const double total_mass = p.cart_mass + p.pole_mass;
  const double pole_mass_length = p.pole_mass * p.half_length;
  const double cos_t = std::cos(theta);
  const double sin_t = std::sin(theta);
  const double temp =
      (force + pole_mass_length * theta_dot * theta_dot * sin_t) / total_mass;
  const double theta_acc =
      (p.gravity * sin_t - cos_t * temp) /
      (p.half_length *
       (4.0 / 3.0 - p.pole_mass * cos_t * cos_t / total_mass));
  const double x_acc = temp - pole_mass_length * theta_acc * cos_t / total_mass;

  Eigen::VectorXd next(4);
  if (p.integrator == CartPoleIntegrator::kEuler) {
    next[0] = x + p.dt * x_dot;
    next[1] = x_dot + p.dt * x_acc;
    next[2] = theta + p.dt * theta_dot;
    next[3] = theta_dot + p.dt * theta_acc;
  } else {
    next[1] = x_dot + p.dt * x_acc;
    next[0] = x + p.dt * next[1];
    next[3] = theta_dot + p.dt * theta_acc;
    next[2] = theta + p.dt * next[3];
  }
  return next;
}

double CartPole::Reward(const Eigen::VectorXd&, const Action&,
                        const Eigen::VectorXd&) const {
  return 1.0;
}

bool CartPole::IsTerminal(const Eigen::VectorXd& state) const {
  return std::abs(state[0]) > params_.x_threshold ||
         std::abs(state[2]) > params_.theta_threshold;
}

Eigen::VectorXd CartPole::FeedbackObservables(
    const Eigen::VectorXd& state) const {
  Eigen::VectorXd obs(1);
  obs[0] = state[0] + params_.half_length * std::sin(state[2]);
  return obs;
}

Scene CartPole::Render(const Eigen::VectorXd& state) const {
  const double x = state[0], theta = state[2];
  const double pole = 2.0 * params_.half_length;
  const Eigen::VectorXd tip = FeedbackObservables(state);
  return {
      LinePrimitive{-params_.x_threshold, 0.0, params_.x_threshold, 0.0,
                    "track"},
      RectPrimitive{x, 0.0, 0.5, 0.3, "body"},
      LinePrimitive{x, 0.0, x + pole * std::sin(theta),
                    pole * std::cos(theta), "link"},
      CirclePrimitive{tip[0], params_.half_length * std::cos(theta), 0.04,
                      "feedback"},
  };
}

}  // namespace tips

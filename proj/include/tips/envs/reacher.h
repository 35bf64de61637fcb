#ifndef TIPS_ENVS_REACHER_H_
#define TIPS_ENVS_REACHER_H_

#include "tips/envs/env.h"

namespace tips {

struct ReacherParams {
  double link1_length = 0.1;
  double link2_length = 0.1;
  double link1_mass = 0.3;
  double link2_mass = 0.3;
  double damping = 0.2;  // viscous, per joint
  double max_torque = 1.0;
  double dt = 0.02;
  int substeps = 20;  // RK4 substeps per control step
  int max_steps = 50;
  double target_x = 0.1;
  double target_y = 0.1;
  double action_cost = 0.01;
  double init_angle_range = 0.1;
  double init_velocity_range = 0.005;
};

// Torque-controlled two-link planar arm with uniform-rod links, moving in the
// horizontal plane (no gravity), reaching a fixed target.
// State: [q1, q2, q1_dot, q2_dot]. Action: joint torques in
// [-max_torque, max_torque]^2. Reward: -|ee - target| - action_cost |a|^2,
// evaluated at the post-step state. Feedback observables: end-effector (x, y).
class Reacher : public Env {
 public:
  explicit Reacher(ReacherParams params = {});

  const EnvSpec& spec() const override { return spec_; }
  std::unique_ptr<Env> Clone() const override;
  const ReacherParams& params() const { return params_; }

  Eigen::VectorXd InitialState(Rng& rng) const override;
  Eigen::VectorXd Dynamics(const Eigen::VectorXd& state,
                           const Action& action) const override;
  double Reward(const Eigen::VectorXd& state, const Action& action,
                const Eigen::VectorXd& next_state) const override;
  bool IsTerminal(const Eigen::VectorXd& state) const override;
  Eigen::VectorXd FeedbackObservables(
      const Eigen::VectorXd& state) const override;
  Scene Render(const Eigen::VectorXd& state) const override;

  Eigen::Vector2d EndEffector(double q1, double q2) const;
  // d(ee)/d(q), 2x2.
  Eigen::Matrix2d Jacobian(double q1, double q2) const;
  Eigen::Matrix2d MassMatrix(double q2) const;
  double KineticEnergy(const Eigen::VectorXd& state) const;
  Eigen::Vector2d target() const { return {params_.target_x, params_.target_y}; }

 private:
  // Time derivative of the state under constant torque.
  Eigen::Vector4d Derivative(const Eigen::Vector4d& s,
                             const Eigen::Vector2d& torque) const;

  ReacherParams params_;
  EnvSpec spec_;
};

}  // namespace tips

#endif  // TIPS_ENVS_REACHER_H_

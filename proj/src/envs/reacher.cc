#include "tips/envs/reacher.h"

#include <cmath>

namespace tips {

Reacher::Reacher(ReacherParams params) : params_(params) {
  spec_.name = "reacher";
  spec_.state_dim = 4;
  spec_.action_space =
      ActionSpace::Box(Eigen::Vector2d::Constant(-params_.max_torque),
                       Eigen::Vector2d::Constant(params_.max_torque));
  spec_.feedback_dims = {"ee_x", "ee_y"};
  spec_.max_steps = params_.max_steps;
  // Worst case per step: arm fully extended away from the target under
  // maximal torque on both joints.
  const double max_distance = params_.link1_length + params_.link2_length +
                              std::hypot(params_.target_x, params_.target_y);
  const double max_cost =
      params_.action_cost * 2.0 * params_.max_torque * params_.max_torque;
  spec_.min_return = -params_.max_steps * (max_distance + max_cost);
  spec_.max_return = 0.0;
}

std::unique_ptr<Env> Reacher::Clone() const {
  return std::make_unique<Reacher>(params_);
}

Eigen::VectorXd Reacher::InitialState(Rng& rng) const {
  Eigen::VectorXd s(4);
  s[0] = UniformReal(rng, -params_.init_angle_range, params_.init_angle_range);
  s[1] = UniformReal(rng, -params_.init_angle_range, params_.init_angle_range);
  s[2] = UniformReal(rng, -params_.init_velocity_range,
                     params_.init_velocity_range);
  s[3] = UniformReal(rng, -params_.init_velocity_range,
                     params_.init_velocity_range);
  return s;
}

Eigen::Matrix2d Reacher::MassMatrix(double q2) const {
  const ReacherParams& p = params_;
  const double lc1 = 0.5 * p.link1_length, lc2 = 0.5 * p.link2_length;
  const double i1 = p.link1_mass * p.link1_length * p.link1_length / 12.0;
  const double i2 = p.link2_mass * p.link2_length * p.link2_length / 12.0;
  const double c2 = std::cos(q2);
  Eigen::Matrix2d m;
  m(0, 0) = i1 + i2 + p.link1_mass * lc1 * lc1 +
            p.link2_mass * (p.link1_length * p.link1_length + lc2 * lc2 +
                            2.0 * p.link1_length * lc2 * c2);
  m(0, 1) = i2 + p.link2_mass * (lc2 * lc2 + p.link1_length * lc2 * c2);
  m(1, 0) = m(0, 1);
  m(1, 1) = i2 + p.link2_mass * lc2 * lc2;
  return m;
}

Eigen::Vector4d Reacher::Derivative(const Eigen::Vector4d& s,
                                    const Eigen::Vector2d& torque) const {
  const ReacherParams& p = params_;
  const double qd1 = s[2], qd2 = s[3];
  const double h = p.link2_mass * p.link1_length * 0.5 * p.link2_length *
                   std::sin(s[1]);
  Eigen::Vector2d bias;
  bias[0] = -h * (2.0 * qd1 * qd2 + qd2 * qd2) + p.damping * qd1;
  bias[1] = h * qd1 * qd1 + p.damping * qd2;
  const Eigen::Vector2d qdd = MassMatrix(s[1]).ldlt().solve(torque - bias);
  return {qd1, qd2, qdd[0], qdd[1]};
}

Eigen::VectorXd Reacher::Dynamics(const Eigen::VectorXd& state,
                                  const Action& action) const {
  const Eigen::Vector2d torque = action.values();
  const double h = params_.dt / params_.substeps;
  Eigen::Vector4d s = state;
  for (int i = 0; i < params_.substeps; ++i) {
    const Eigen::Vector4d k1 = Derivative(s, torque);
    const Eigen::Vector4d k2 = Derivative(s + 0.5 * h * k1, torque);
    const Eigen::Vector4d k3 = Derivative(s + 0.5 * h * k2, torque);
    const Eigen::Vector4d k4 = Derivative(s + h * k3, torque);
    s += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return s;
}

double Reacher::Reward(const Eigen::VectorXd&, const Action& action,
                       const Eigen::VectorXd& next_state) const {
  const Eigen::Vector2d ee = EndEffector(next_state[0], next_state[1]);
  return -(ee - target()).norm() -
         params_.action_cost * action.values().squaredNorm();
}

bool Reacher::IsTerminal(const Eigen::VectorXd&) const { return false; }

Eigen::Vector2d Reacher::EndEffector(double q1, double q2) const {
  return {params_.link1_length * std::cos(q1) +
              params_.link2_length * std::cos(q1 + q2),
          params_.link1_length * std::sin(q1) +
              params_.link2_length * std::sin(q1 + q2)};
}

Eigen::Matrix2d Reacher::Jacobian(double q1, double q2) const {
  const double l1 = params_.link1_length, l2 = params_.link2_length;
  const double s1 = std::sin(q1), c1 = std::cos(q1);
  const double s12 = std::sin(q1 + q2), c12 = std::cos(q1 + q2);
  Eigen::Matrix2d j;
  j << -l1 * s1 - l2 * s12, -l2 * s12,  //
      l1 * c1 + l2 * c12, l2 * c12;
  return j;
}

double Reacher::KineticEnergy(const Eigen::VectorXd& state) const {
  const Eigen::Vector2d qd = state.tail<2>();
  return 0.5 * qd.dot(MassMatrix(state[1]) * qd);
}

Eigen::VectorXd Reacher::FeedbackObservables(
    const Eigen::VectorXd& state) const {
  return EndEffector(state[0], state[1]);
}

Scene Reacher::Render(const Eigen::VectorXd& state) const {
  const double l1 = params_.link1_length;
  const Eigen::Vector2d elbow(l1 * std::cos(state[0]), l1 * std::sin(state[0]));
  const Eigen::Vector2d ee = EndEffector(state[0], state[1]);
  return {
      CirclePrimitive{params_.target_x, params_.target_y, 0.01, "target"},
      LinePrimitive{0.0, 0.0, elbow.x(), elbow.y(), "link"},
      LinePrimitive{elbow.x(), elbow.y(), ee.x(), ee.y(), "link"},
      CirclePrimitive{0.0, 0.0, 0.008, "joint"},
      CirclePrimitive{elbow.x(), elbow.y(), 0.006, "joint"},
      CirclePrimitive{ee.x(), ee.y(), 0.006, "feedback"},
  };
}

}  // namespace tips

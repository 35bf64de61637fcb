#include "tips/oracle/expert.h"

#include <stdexcept>

namespace tips {

Eigen::Vector4d CartPoleExpert::DefaultGains() {
  return {0.1, 0.5, 10.0, 2.0};
}

Action CartPoleExpert::Act(const Eigen::VectorXd& state) const {
  return Action::Discrete(gains_.dot(state.head<4>()) > 0.0 ? 1 : 0);
}

Action ReacherExpert::Act(const Eigen::VectorXd& state) const {
  const Eigen::Vector2d ee = arm_.EndEffector(state[0], state[1]);
  const Eigen::Matrix2d jac = arm_.Jacobian(state[0], state[1]);
  const Eigen::Vector2d torque =
      kp_ * jac.transpose() * (arm_.target() - ee) - kd_ * state.tail<2>();
  const double limit = arm_.params().max_torque;
  return Action::Continuous(
      torque.cwiseMax(-limit).cwiseMin(limit));
}

std::unique_ptr<ExpertController> MakeExpert(const Env& env) {
  if (const auto* cp = dynamic_cast<const CartPole*>(&env)) {
    (void)cp;
    return std::make_unique<CartPoleExpert>();
  }
  if (const auto* arm = dynamic_cast<const Reacher*>(&env)) {
    return std::make_unique<ReacherExpert>(*arm);
  }
  throw std::invalid_argument("no expert controller for " + env.spec().name);
}

}  // namespace tips

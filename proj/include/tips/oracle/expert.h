#ifndef TIPS_ORACLE_EXPERT_H_
#define TIPS_ORACLE_EXPERT_H_

#include <memory>
#include <string>

#include <Eigen/Dense>

#include "tips/envs/cartpole.h"
#include "tips/envs/env.h"
#include "tips/envs/reacher.h"

namespace tips {

// Deterministic state -> action controller used as the scripted teacher's
// source of truth.
class ExpertController {
 public:
  virtual ~ExpertController() = default;
  virtual Action Act(const Eigen::VectorXd& state) const = 0;
  virtual std::string id() const = 0;
};

// Bang-bang on a linear switching function: push right (action 1) when
// gains . [x, x_dot, theta, theta_dot] > 0.
class CartPoleExpert : public ExpertController {
 public:
  static Eigen::Vector4d DefaultGains();

  explicit CartPoleExpert(Eigen::Vector4d gains = DefaultGains())
      : gains_(gains) {}

  Action Act(const Eigen::VectorXd& state) const override;
  std::string id() const override { return "cartpole-pd"; }
  const Eigen::Vector4d& gains() const { return gains_; }

 private:
  Eigen::Vector4d gains_;
};

// Proportional end-effector servo mapped to torques through the Jacobian
// transpose, with joint damping: tau = kp J^T (target - ee) - kd q_dot,
// clamped to the torque box.
class ReacherExpert : public ExpertController {
 public:
  static constexpr double kDefaultKp = 1000.0;
  static constexpr double kDefaultKd = 0.1;

  explicit ReacherExpert(Reacher arm, double kp = kDefaultKp,
                         double kd = kDefaultKd)
      : arm_(std::move(arm)), kp_(kp), kd_(kd) {}

  Action Act(const Eigen::VectorXd& state) const override;
  std::string id() const override { return "reacher-jt-servo"; }

 private:
  Reacher arm_;
  double kp_;
  double kd_;
};

// The calibrated expert for a built-in environment; throws
// std::invalid_argument for anything else.
std::unique_ptr<ExpertController> MakeExpert(const Env& env);

}  // namespace tips

#endif  // TIPS_ORACLE_EXPERT_H_

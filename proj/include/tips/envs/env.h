#ifndef TIPS_ENVS_ENV_H_
#define TIPS_ENVS_ENV_H_

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "tips/random.h"

namespace tips {

enum class ActionKind { kDiscrete, kContinuous };

struct ActionSpace {
  ActionKind kind = ActionKind::kDiscrete;
  int num_actions = 0;    // discrete only
  Eigen::VectorXd lower;  // continuous only
  Eigen::VectorXd upper;  // continuous only

  static ActionSpace Discrete(int n);
  static ActionSpace Box(Eigen::VectorXd lower, Eigen::VectorXd upper);

  bool is_discrete() const { return kind == ActionKind::kDiscrete; }
  // Width of the action encoding: one-hot length for discrete, vector
  // length for continuous.
  int encoding_size() const;
};

class Action {
 public:
  static Action Discrete(int index) { return Action(index); }
  static Action Continuous(Eigen::VectorXd values) {
    return Action(std::move(values));
  }

  bool is_discrete() const { return std::holds_alternative<int>(value_); }
  int index() const;
  const Eigen::VectorXd& values() const;

  bool operator==(const Action& other) const;

 private:
  explicit Action(int index) : value_(index) {}
  explicit Action(Eigen::VectorXd values) : value_(std::move(values)) {}

  std::variant<int, Eigen::VectorXd> value_;
};

// One-hot for discrete actions, the raw vector for continuous ones.
Eigen::VectorXd EncodeAction(const ActionSpace& space, const Action& action);

// Throws std::invalid_argument if the action does not belong to `space`.
// Continuous actions outside the box are valid input and get clamped.
Action ValidateAndClamp(const ActionSpace& space, const Action& action);

struct EnvSpec {
  std::string name;
  int state_dim = 0;
  ActionSpace action_space;
  std::vector<std::string> feedback_dims;
  int max_steps = 0;
  double min_return = 0.0;
  double max_return = 1.0;
};

struct Transition {
  Eigen::VectorXd state;
  Action action = Action::Discrete(0);
  Eigen::VectorXd next_state;
  double reward = 0.0;
  bool done = false;
};

// Geometric primitives in environment units, consumed by the teaching UI.
struct LinePrimitive {
  double x1, y1, x2, y2;
  std::string color;
};
struct CirclePrimitive {
  double x, y, r;
  std::string color;
};
// (x, y) is the rectangle centre.
struct RectPrimitive {
  double x, y, w, h;
  std::string color;
};
using ScenePrimitive =
    std::variant<LinePrimitive, CirclePrimitive, RectPrimitive>;
using Scene = std::vector<ScenePrimitive>;

// Common environment contract. The physics hooks are pure functions of
// their arguments; Reset/Step drive a single episode on top of them.
class Env {
 public:
  virtual ~Env() = default;

  virtual const EnvSpec& spec() const = 0;
  virtual std::unique_ptr<Env> Clone() const = 0;

  virtual Eigen::VectorXd InitialState(Rng& rng) const = 0;
  // One integration step. `action` must already be validated.
  virtual Eigen::VectorXd Dynamics(const Eigen::VectorXd& state,
                                   const Action& action) const = 0;
  virtual double Reward(const Eigen::VectorXd& state, const Action& action,
                        const Eigen::VectorXd& next_state) const = 0;
  virtual bool IsTerminal(const Eigen::VectorXd& state) const = 0;
  virtual Eigen::VectorXd FeedbackObservables(
      const Eigen::VectorXd& state) const = 0;
  virtual Scene Render(const Eigen::VectorXd& state) const = 0;

  const Eigen::VectorXd& Reset(std::uint64_t seed);
  // Validates the action, integrates, and advances the step counter.
  // `done` is set on termination or when max_steps is reached.
  Transition Step(const Action& action);
  // Stateless single step from an arbitrary state (no step counting).
  Transition Simulate(const Eigen::VectorXd& state, const Action& action) const;

  // Overrides the current state mid-episode; used by tests and replays.
  void SetState(const Eigen::VectorXd& state);

  const Eigen::VectorXd& state() const { return state_; }
  int steps() const { return steps_; }
  bool done() const { return done_; }

  // (return - min) / (max - min), clamped to [0, 1].
  double NormalizedReturn(double episode_return) const;

 private:
  Eigen::VectorXd state_;
  int steps_ = 0;
  bool done_ = true;
};

// "cartpole" or "reacher"; throws std::invalid_argument otherwise.
std::unique_ptr<Env> MakeEnv(std::string_view name);

}  // namespace tips

#endif  // TIPS_ENVS_ENV_H_

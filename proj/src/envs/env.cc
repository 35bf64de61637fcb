#include "tips/envs/env.h"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "tips/envs/cartpole.h"
#include "tips/envs/reacher.h"

namespace tips {

ActionSpace ActionSpace::Discrete(int n) {
  if (n <= 0) throw std::invalid_argument("discrete action count must be > 0");
  ActionSpace space;
  space.kind = ActionKind::kDiscrete;
  space.num_actions = n;
  return space;
}

ActionSpace ActionSpace::Box(Eigen::VectorXd lower, Eigen::VectorXd upper) {
  if (lower.size() == 0 || lower.size() != upper.size() ||
      (lower.array() >= upper.array()).any()) {
    throw std::invalid_argument("invalid action box");
  }
  ActionSpace space;
  space.kind = ActionKind::kContinuous;
  space.lower = std::move(lower);
  space.upper = std::move(upper);
  return space;
}

int ActionSpace::encoding_size() const {
  return is_discrete() ? num_actions : static_cast<int>(lower.size());
}

int Action::index() const {
  if (!is_discrete()) throw std::logic_error("continuous action has no index");
  return std::get<int>(value_);
}

const Eigen::VectorXd& Action::values() const {
  if (is_discrete()) throw std::logic_error("discrete action has no vector");
  return std::get<Eigen::VectorXd>(value_);
}

bool Action::operator==(const Action& other) const {
  if (is_discrete() != other.is_discrete()) return false;
  if (is_discrete()) return index() == other.index();
  return values().size() == other.values().size() &&
         values() == other.values();
}

Eigen::VectorXd EncodeAction(const ActionSpace& space, const Action& action) {
  if (space.is_discrete()) {
    Eigen::VectorXd one_hot = Eigen::VectorXd::Zero(space.num_actions);
    one_hot[action.index()] = 1.0;
    return one_hot;
  }
  return action.values();
}

Action ValidateAndClamp(const ActionSpace& space, const Action& action) {
  if (space.is_discrete()) {
    if (!action.is_discrete() || action.index() < 0 ||
        action.index() >= space.num_actions) {
      throw std::invalid_argument("invalid discrete action");
    }
    return action;
  }
  if (action.is_discrete() || action.values().size() != space.lower.size() ||
      !action.values().allFinite()) {
    throw std::invalid_argument("invalid continuous action");
  }
  return Action::Continuous(
      action.values().cwiseMax(space.lower).cwiseMin(space.upper));
}

const Eigen::VectorXd& Env::Reset(std::uint64_t seed) {
  Rng rng(seed);
  state_ = InitialState(rng);
  steps_ = 0;
  done_ = false;
  return state_;
}

Transition Env::Step(const Action& action) {
  if (done_) throw std::logic_error("Step called on a finished episode");
  Transition t = Simulate(state_, action);
  ++steps_;
  t.done = t.done || steps_ >= spec().max_steps;
  state_ = t.next_state;
  done_ = t.done;
  return t;
}

Transition Env::Simulate(const Eigen::VectorXd& state,
                         const Action& action) const {
  Transition t;
  t.state = state;
  t.action = ValidateAndClamp(spec().action_space, action);
  t.next_state = Dynamics(state, t.action);
  if (!t.next_state.allFinite()) {
    throw std::runtime_error("environment produced a non-finite state");
  }
  t.reward = Reward(state, t.action, t.next_state);
  t.done = IsTerminal(t.next_state);
  return t;
}

void Env::SetState(const Eigen::VectorXd& state) {
  if (state.size() != spec().state_dim || !state.allFinite()) {
    throw std::invalid_argument("invalid state for " + spec().name);
  }
  state_ = state;
  done_ = false;
}

double Env::NormalizedReturn(double episode_return) const {
  const EnvSpec& s = spec();
  const double r = (episode_return - s.min_return) / (s.max_return - s.min_return);
  return std::clamp(r, 0.0, 1.0);
}

std::unique_ptr<Env> MakeEnv(std::string_view name) {
  if (name == "cartpole") return std::make_unique<CartPole>();
  if (name == "reacher") return std::make_unique<Reacher>();
  throw std::invalid_argument("unknown environment: " + std::string(name));
}

}  // namespace tips

#ifndef TIPS_DYNAMICS_INVERSE_DYNAMICS_H_
#define TIPS_DYNAMICS_INVERSE_DYNAMICS_H_

#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "tips/dynamics/forward_model.h"
#include "tips/envs/env.h"
#include "tips/feedback/feedback.h"
#include "tips/random.h"

namespace tips {

// Candidate actions for inverse dynamics. Discrete spaces are enumerated
// once each, in index order; continuous spaces get `num_samples` fresh
// uniform draws from the box per call.
class ActionSampler {
 public:
  ActionSampler(ActionSpace space, int num_samples);

  std::vector<Action> Sample(Rng& rng) const;

  const ActionSpace& space() const { return space_; }
  int num_samples() const { return num_samples_; }

 private:
  ActionSpace space_;
  int num_samples_;
};

// Maps a raw state to the teacher-visible feedback observables.
using ObservableFn = std::function<Eigen::VectorXd(const Eigen::VectorXd&)>;

struct ActionChoice {
  Action action = Action::Discrete(0);
  int candidate_index = -1;
  double distance = 0.0;
};

// Euclidean distance between two observable vectors over the masked dims.
double MaskedDistance(const Eigen::VectorXd& a, const Eigen::VectorXd& b,
                      const std::vector<bool>& mask);

// Returns the candidate whose predicted next state, mapped to feedback
// observables, is closest to `desired.target` on the active dims of
// `desired.mask`. Ties go to the lowest candidate index. Throws
// std::invalid_argument on an empty candidate list or an all-false mask.
ActionChoice SelectAction(const DynamicsModel& model,
                          const ObservableFn& observables,
                          const Eigen::VectorXd& state,
                          const DesiredState& desired,
                          const std::vector<Action>& candidates);

}  // namespace tips

#endif  // TIPS_DYNAMICS_INVERSE_DYNAMICS_H_

#ifndef TIPS_BASELINES_DEMO_DATASET_H_
#define TIPS_BASELINES_DEMO_DATASET_H_

#include <iosfwd>
#include <vector>

#include <Eigen/Dense>

#include "tips/envs/env.h"

namespace tips {

struct DemoStep {
  Eigen::VectorXd state;
  Action action = Action::Discrete(0);
  double reward = 0.0;
};

struct DemoEpisode {
  std::vector<DemoStep> steps;

  double Return() const;
};

// Recorded tele-operation episodes.
struct DemoDataset {
  std::vector<DemoEpisode> episodes;

  std::size_t num_pairs() const;
  bool empty() const { return episodes.empty(); }
};

// One row per step:
//   episode,step,s0..s{n-1},a0..a{k-1},reward
// episode and step are 0-based; a discrete action is written as its index
// in a single a0 column. Reals use 17 significant digits.
void WriteDemoCsv(std::ostream& out, const DemoDataset& data,
                  const EnvSpec& spec);
// Throws std::runtime_error if the header does not match `spec`.
DemoDataset ReadDemoCsv(std::istream& in, const EnvSpec& spec);

}  // namespace tips

#endif  // TIPS_BASELINES_DEMO_DATASET_H_

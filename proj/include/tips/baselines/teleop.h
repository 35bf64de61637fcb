#ifndef TIPS_BASELINES_TELEOP_H_
#define TIPS_BASELINES_TELEOP_H_

#include <cstdint>
#include <vector>

#include "tips/baselines/demo_dataset.h"
#include "tips/dynamics/forward_model.h"
#include "tips/dynamics/inverse_dynamics.h"
#include "tips/envs/env.h"
#include "tips/feedback/feedback.h"
#include "tips/session/episode_log.h"
#include "tips/teacher.h"

namespace tips {

struct TeleopResult {
  DemoDataset dataset;
  std::vector<EpisodeLog> logs;
};

// The teacher commands every action directly. Each step counts as one
// feedback event in the logs.
TeleopResult TeleopAction(const Env& env, DemonstrationTeacher& teacher,
                          int episodes, std::uint64_t seed);

// The teacher gives state feedback every step; non-null feedback is mapped
// to an action through the desired state and inverse dynamics, null
// feedback executes the neutral action (hold the previous action for
// discrete spaces, starting from action 0; zero vector for continuous).
TeleopResult TeleopState(const Env& env, StateTeacher& teacher,
                         const DynamicsModel& model,
                         const ActionSampler& sampler,
                         const ErrorConstants& error, int episodes,
                         std::uint64_t seed);

}  // namespace tips

#endif  // TIPS_BASELINES_TELEOP_H_

#ifndef TIPS_SESSION_RUNNER_H_
#define TIPS_SESSION_RUNNER_H_

#include <filesystem>
#include <optional>
#include <vector>

#include "tips/session/config.h"
#include "tips/session/episode_log.h"
#include "tips/session/summary.h"

namespace tips {

struct RunResult {
  std::vector<EpisodeLog> logs;
  std::optional<RunSummary> summary;  // absent for zero-episode runs
};

// Runs one oracle-taught session and, when `out_dir` is given, writes:
//   episodes.csv              per-episode log
//   run.json                  resolved config and summary
//   policy.bin, policy.json   trained policy (tips, dcoach, bc)
//   fdm.bin, fdm.json         forward model (tips, teleop-state)
//   demos.csv                 demonstrations (teleop-action, teleop-state)
// Output is a pure function of the config unless record_wall_time is set.
// Throws UsageError for invalid configs, including the human teacher (which
// needs the live teaching service).
RunResult RunSession(const SessionConfig& config,
                     const std::optional<std::filesystem::path>& out_dir);

}  // namespace tips

#endif  // TIPS_SESSION_RUNNER_H_

#ifndef TIPS_SESSION_EPISODE_LOG_H_
#define TIPS_SESSION_EPISODE_LOG_H_

#include <chrono>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "tips/envs/env.h"

namespace tips {

struct EpisodeLog {
  int episode = 0;  // 1-based
  int steps = 0;
  double ret = 0.0;
  double normalized_return = 0.0;
  int feedback_count = 0;
  double feedback_rate = 0.0;  // feedback_count / steps
  std::optional<double> fdm_holdout_mse;
  double wall_ms = 0.0;

  bool operator==(const EpisodeLog&) const = default;
};

// Column order of the per-episode CSV log.
inline constexpr const char* kEpisodeCsvHeader =
    "episode,steps,return,normalized_return,feedback_count,feedback_rate,"
    "fdm_holdout_mse,wall_ms";

// Reals are written with 17 significant digits so a read-back is exact.
// A missing FDM loss is an empty field.
void WriteEpisodeCsv(std::ostream& out, const std::vector<EpisodeLog>& logs);
std::string EpisodeCsvString(const std::vector<EpisodeLog>& logs);
// Throws std::runtime_error on a malformed header or row.
std::vector<EpisodeLog> ReadEpisodeCsv(std::istream& in);

// Accumulates one episode's statistics.
class EpisodeRecorder {
 public:
  explicit EpisodeRecorder(bool record_wall_time = false)
      : record_wall_time_(record_wall_time) {}

  void Begin(int episode);
  void Record(double reward, bool had_feedback);
  EpisodeLog Finish(const Env& env, std::optional<double> fdm_holdout_mse);

  int episode() const { return log_.episode; }
  int steps() const { return log_.steps; }

 private:
  bool record_wall_time_;
  EpisodeLog log_;
  std::chrono::steady_clock::time_point start_;
};

}  // namespace tips

#endif  // TIPS_SESSION_EPISODE_LOG_H_

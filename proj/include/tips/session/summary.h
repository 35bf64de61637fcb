#ifndef TIPS_SESSION_SUMMARY_H_
#define TIPS_SESSION_SUMMARY_H_

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "tips/session/episode_log.h"

namespace tips {

// Trailing mean over full windows only: element i averages
// values[i .. i + window - 1]. Empty when window > values.size().
std::vector<double> RollingMean(const std::vector<double>& values, int window);

// Throws std::invalid_argument on empty input.
double Median(std::vector<double> values);

// First 1-based episode whose normalized return reaches `threshold`.
std::optional<int> EpisodesToThreshold(const std::vector<EpisodeLog>& logs,
                                       double threshold);

struct RunSummary {
  int episodes = 0;
  // Over the last min(window, episodes) episodes.
  double final_mean = 0.0;
  double final_median = 0.0;
  long total_feedback = 0;
  std::optional<int> episodes_to_threshold;
};

inline constexpr int kDefaultSummaryWindow = 10;
inline constexpr double kDefaultSuccessThreshold = 0.9;

// Throws std::invalid_argument on empty logs or window < 1.
RunSummary Summarize(const std::vector<EpisodeLog>& logs,
                     int window = kDefaultSummaryWindow,
                     double threshold = kDefaultSuccessThreshold);

// One row per (env, method) group of run directories.
struct GroupSummary {
  std::string env;
  std::string method;
  int runs = 0;
  double median_final_mean = 0.0;
  double median_final_median = 0.0;
  double mean_total_feedback = 0.0;
  // Median over runs that reached the threshold; count of those runs.
  std::optional<double> median_episodes_to_threshold;
  int runs_reaching_threshold = 0;
};

// Scans `root` and its immediate subdirectories for run outputs
// (episodes.csv next to run.json) and aggregates them per env and method.
// Throws std::runtime_error if none are found.
std::vector<GroupSummary> SummarizeDirectory(const std::filesystem::path& root,
                                             int window = kDefaultSummaryWindow,
                                             double threshold =
                                                 kDefaultSuccessThreshold);

void PrintSummaryTable(std::ostream& out,
                       const std::vector<GroupSummary>& groups);

}  // namespace tips

#endif  // TIPS_SESSION_SUMMARY_H_

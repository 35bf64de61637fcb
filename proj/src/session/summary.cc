#include "tips/session/summary.h"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>
#include <ostream>
#include <stdexcept>
#include <utility>

#include <nlohmann/json.hpp>

namespace tips {

std::vector<double> RollingMean(const std::vector<double>& values, int window) {
  if (window < 1) throw std::invalid_argument("window must be >= 1");
  std::vector<double> out;
  const std::size_t w = static_cast<std::size_t>(window);
  if (values.size() < w) return out;
  double sum = 0.0;
  for (std::size_t i = 0; i < w; ++i) sum += values[i];
  out.push_back(sum / window);
  for (std::size_t i = w; i < values.size(); ++i) {
    sum += values[i] - values[i - w];
    out.push_back(sum / window);
  }
  return out;
}

double Median(std::vector<double> values) {
  if (values.empty()) throw std::invalid_argument("median of empty set");
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  return n % 2 == 1 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

std::optional<int> EpisodesToThreshold(const std::vector<EpisodeLog>& logs,
                                       double threshold) {
  for (const EpisodeLog& l : logs) {
    if (l.normalized_return >= threshold) return l.episode;
  }
  return std::nullopt;
}

RunSummary Summarize(const std::vector<EpisodeLog>& logs, int window,
                     double threshold) {
  if (logs.empty()) throw std::invalid_argument("no episodes to summarize");
  if (window < 1) throw std::invalid_argument("window must be >= 1");
  RunSummary s;
  s.episodes = static_cast<int>(logs.size());
  const std::size_t n = std::min<std::size_t>(window, logs.size());
  std::vector<double> tail;
  for (std::size_t i = logs.size() - n; i < logs.size(); ++i) {
    tail.push_back(logs[i].normalized_return);
  }
  double sum = 0.0;
  for (double v : tail) sum += v;
  s.final_mean = sum / static_cast<double>(n);
  s.final_median = Median(tail);
  for (const EpisodeLog& l : logs) s.total_feedback += l.feedback_count;
  s.episodes_to_threshold = EpisodesToThreshold(logs, threshold);
  return s;
}

namespace {

struct RunEntry {
  std::string env;
  std::string method;
  RunSummary summary;
};

std::optional<RunEntry> LoadRun(const std::filesystem::path& dir, int window,
                                double threshold) {
  const auto csv = dir / "episodes.csv";
  const auto meta = dir / "run.json";
  if (!std::filesystem::is_regular_file(csv) ||
      !std::filesystem::is_regular_file(meta)) {
    return std::nullopt;
  }
  std::ifstream meta_in(meta);
  const nlohmann::json j = nlohmann::json::parse(meta_in);
  std::ifstream csv_in(csv);
  const std::vector<EpisodeLog> logs = ReadEpisodeCsv(csv_in);
  if (logs.empty()) return std::nullopt;
  RunEntry e;
  e.env = j.at("config").at("env").get<std::string>();
  e.method = j.at("config").at("method").get<std::string>();
  e.summary = Summarize(logs, window, threshold);
  return e;
}

}  // namespace

std::vector<GroupSummary> SummarizeDirectory(const std::filesystem::path& root,
                                             int window, double threshold) {
  if (!std::filesystem::is_directory(root)) {
    throw std::runtime_error("not a directory: " + root.string());
  }
  std::vector<std::filesystem::path> dirs = {root};
  for (const auto& entry : std::filesystem::directory_iterator(root)) {
    if (entry.is_directory()) dirs.push_back(entry.path());
  }
  std::sort(dirs.begin() + 1, dirs.end());

  std::map<std::pair<std::string, std::string>, std::vector<RunSummary>> groups;
  for (const auto& dir : dirs) {
    if (auto run = LoadRun(dir, window, threshold)) {
      groups[{run->env, run->method}].push_back(run->summary);
    }
  }
  if (groups.empty()) {
    throw std::runtime_error("no runs (episodes.csv + run.json) under " +
                             root.string());
  }

  std::vector<GroupSummary> out;
  for (const auto& [key, runs] : groups) {
    GroupSummary g;
    g.env = key.first;
    g.method = key.second;
    g.runs = static_cast<int>(runs.size());
    std::vector<double> means, medians, reached;
    double feedback = 0.0;
    for (const RunSummary& r : runs) {
      means.push_back(r.final_mean);
      medians.push_back(r.final_median);
      feedback += static_cast<double>(r.total_feedback);
      if (r.episodes_to_threshold) reached.push_back(*r.episodes_to_threshold);
    }
    g.median_final_mean = Median(means);
    g.median_final_median = Median(medians);
    g.mean_total_feedback = feedback / g.runs;
    g.runs_reaching_threshold = static_cast<int>(reached.size());
    if (!reached.empty()) g.median_episodes_to_threshold = Median(reached);
    out.push_back(g);
  }
  return out;
}

void PrintSummaryTable(std::ostream& out,
                       const std::vector<GroupSummary>& groups) {
  char line[256];
  std::snprintf(line, sizeof(line), "%-10s %-14s %5s %11s %13s %10s %14s\n",
                "env", "method", "runs", "final_mean", "final_median",
                "feedback", "to_threshold");
  out << line;
  for (const GroupSummary& g : groups) {
    char reach[64];
    if (g.median_episodes_to_threshold) {
      std::snprintf(reach, sizeof(reach), "%.1f (%d/%d)",
                    *g.median_episodes_to_threshold, g.runs_reaching_threshold,
                    g.runs);
    } else {
      std::snprintf(reach, sizeof(reach), "- (0/%d)", g.runs);
    }
    std::snprintf(line, sizeof(line), "%-10s %-14s %5d %11.4f %13.4f %10.1f %14s\n",
                  g.env.c_str(), g.method.c_str(), g.runs, g.median_final_mean,
                  g.median_final_median, g.mean_total_feedback, reach);
    out << line;
  }
}

}  // namespace tips

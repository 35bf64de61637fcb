#include "tips/session/episode_log.h"

#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace tips {
namespace {

std::string FormatReal(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::vector<std::string> SplitCsvLine(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

double ParseReal(const std::string& s) {
  std::size_t used = 0;
  const double v = std::stod(s, &used);
  if (used != s.size()) throw std::runtime_error("bad number: " + s);
  return v;
}

int ParseInt(const std::string& s) {
  std::size_t used = 0;
  const int v = std::stoi(s, &used);
  if (used != s.size()) throw std::runtime_error("bad integer: " + s);
  return v;
}

}  // namespace

void WriteEpisodeCsv(std::ostream& out, const std::vector<EpisodeLog>& logs) {
  out << kEpisodeCsvHeader << '\n';
  for (const EpisodeLog& l : logs) {
    out << l.episode << ',' << l.steps << ',' << FormatReal(l.ret) << ','
        << FormatReal(l.normalized_return) << ',' << l.feedback_count << ','
        << FormatReal(l.feedback_rate) << ','
        << (l.fdm_holdout_mse ? FormatReal(*l.fdm_holdout_mse) : "") << ','
        << FormatReal(l.wall_ms) << '\n';
  }
}

std::string EpisodeCsvString(const std::vector<EpisodeLog>& logs) {
  std::ostringstream out;
  WriteEpisodeCsv(out, logs);
  return out.str();
}

std::vector<EpisodeLog> ReadEpisodeCsv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kEpisodeCsvHeader) {
    throw std::runtime_error("episode log: unexpected header");
  }
  std::vector<EpisodeLog> logs;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const std::vector<std::string> f = SplitCsvLine(line);
    if (f.size() != 8) {
      throw std::runtime_error("episode log: expected 8 fields in: " + line);
    }
    try {
      EpisodeLog l;
      l.episode = ParseInt(f[0]);
      l.steps = ParseInt(f[1]);
      l.ret = ParseReal(f[2]);
      l.normalized_return = ParseReal(f[3]);
      l.feedback_count = ParseInt(f[4]);
      l.feedback_rate = ParseReal(f[5]);
      if (!f[6].empty()) l.fdm_holdout_mse = ParseReal(f[6]);
      l.wall_ms = ParseReal(f[7]);
      logs.push_back(l);
    } catch (const std::logic_error& e) {
      throw std::runtime_error("episode log: malformed row: " + line);
    }
  }
  return logs;
}

void EpisodeRecorder::Begin(int episode) {
  log_ = EpisodeLog{};
  log_.episode = episode;
  if (record_wall_time_) start_ = std::chrono::steady_clock::now();
}

void EpisodeRecorder::Record(double reward, bool had_feedback) {
  ++log_.steps;
  log_.ret += reward;
  if (had_feedback) ++log_.feedback_count;
}

EpisodeLog EpisodeRecorder::Finish(const Env& env,
                                   std::optional<double> fdm_holdout_mse) {
  log_.normalized_return = env.NormalizedReturn(log_.ret);
  log_.feedback_rate =
      log_.steps > 0 ? static_cast<double>(log_.feedback_count) / log_.steps : 0.0;
  log_.fdm_holdout_mse = fdm_holdout_mse;
  if (record_wall_time_) {
    log_.wall_ms = std::chrono::duration<double, std::milli>(
                       std::chrono::steady_clock::now() - start_)
                       .count();
  }
  return log_;
}

}  // namespace tips

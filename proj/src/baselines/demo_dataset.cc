#include "tips/baselines/demo_dataset.h"

#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace tips {
namespace {

std::string Real(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

int ActionColumns(const EnvSpec& spec) {
  return spec.action_space.is_discrete()
             ? 1
             : static_cast<int>(spec.action_space.lower.size());
}

std::string Header(const EnvSpec& spec) {
  std::string h = "episode,step";
  for (int i = 0; i < spec.state_dim; ++i) h += ",s" + std::to_string(i);
  for (int i = 0; i < ActionColumns(spec); ++i) h += ",a" + std::to_string(i);
  return h + ",reward";
}

}  // namespace

double DemoEpisode::Return() const {
  double r = 0.0;
  for (const DemoStep& s : steps) r += s.reward;
  return r;
}

std::size_t DemoDataset::num_pairs() const {
  std::size_t n = 0;
  for (const DemoEpisode& e : episodes) n += e.steps.size();
  return n;
}

void WriteDemoCsv(std::ostream& out, const DemoDataset& data,
                  const EnvSpec& spec) {
  out << Header(spec) << '\n';
  for (std::size_t e = 0; e < data.episodes.size(); ++e) {
    const auto& steps = data.episodes[e].steps;
    for (std::size_t t = 0; t < steps.size(); ++t) {
      out << e << ',' << t;
      for (Eigen::Index i = 0; i < steps[t].state.size(); ++i) {
        out << ',' << Real(steps[t].state[i]);
      }
      if (steps[t].action.is_discrete()) {
        out << ',' << steps[t].action.index();
      } else {
        for (Eigen::Index i = 0; i < steps[t].action.values().size(); ++i) {
          out << ',' << Real(steps[t].action.values()[i]);
        }
      }
      out << ',' << Real(steps[t].reward) << '\n';
    }
  }
}

DemoDataset ReadDemoCsv(std::istream& in, const EnvSpec& spec) {
  std::string line;
  if (!std::getline(in, line) || line != Header(spec)) {
    throw std::runtime_error("demo dataset: header does not match " + spec.name);
  }
  const int action_cols = ActionColumns(spec);
  const std::size_t expected =
      static_cast<std::size_t>(2 + spec.state_dim + action_cols + 1);
  DemoDataset data;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) f.push_back(field);
    if (f.size() != expected) {
      throw std::runtime_error("demo dataset: malformed row: " + line);
    }
    try {
      const std::size_t episode = std::stoul(f[0]);
      if (episode == data.episodes.size()) data.episodes.emplace_back();
      if (episode + 1 != data.episodes.size()) {
        throw std::runtime_error("demo dataset: episodes out of order");
      }
      DemoStep step;
      step.state.resize(spec.state_dim);
      for (int i = 0; i < spec.state_dim; ++i) step.state[i] = std::stod(f[2 + i]);
      const std::size_t a0 = static_cast<std::size_t>(2 + spec.state_dim);
      if (spec.action_space.is_discrete()) {
        step.action = Action::Discrete(std::stoi(f[a0]));
      } else {
        Eigen::VectorXd a(action_cols);
        for (int i = 0; i < action_cols; ++i) a[i] = std::stod(f[a0 + i]);
        step.action = Action::Continuous(std::move(a));
      }
      step.action = ValidateAndClamp(spec.action_space, step.action);
      step.reward = std::stod(f.back());
      data.episodes.back().steps.push_back(std::move(step));
    } catch (const std::logic_error&) {
      throw std::runtime_error("demo dataset: malformed row: " + line);
    }
  }
  return data;
}

}  // namespace tips

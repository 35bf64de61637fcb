#include "tips/baselines/behavior_cloning.h"

#include <algorithm>
#include <numeric>

#include "tips/random.h"

namespace tips {

DemoDataset FilterSuccessful(const DemoDataset& data, const Env& env,
                             double min_normalized_return) {
  DemoDataset kept;
  for (const DemoEpisode& e : data.episodes) {
    if (!e.steps.empty() &&
        env.NormalizedReturn(e.Return()) >= min_normalized_return) {
      kept.episodes.push_back(e);
    }
  }
  return kept;
}

Policy TrainBehaviorCloning(const DemoDataset& data, const Env& env,
                            const BcConfig& config, std::uint64_t seed) {
  if (data.empty()) throw std::invalid_argument("empty demonstration dataset");
  const DemoDataset kept =
      FilterSuccessful(data, env, config.min_normalized_return);
  if (kept.num_pairs() == 0) throw NoSuccessfulDemonstrations();

  Rng init_rng = MakeStream(seed, "init");
  Rng train_rng = MakeStream(seed, "train");
  Policy policy(env.spec(), config.policy, init_rng);

  const Eigen::Index n = static_cast<Eigen::Index>(kept.num_pairs());
  Eigen::MatrixXd inputs(n, env.spec().state_dim);
  Eigen::MatrixXd targets(n, policy.network().output_size());
  Eigen::Index row = 0;
  for (const DemoEpisode& e : kept.episodes) {
    for (const DemoStep& s : e.steps) {
      inputs.row(row) = s.state.transpose();
      targets.row(row) = policy.Target(s.action).transpose();
      ++row;
    }
  }

  const Eigen::Index batch =
      std::min<Eigen::Index>(config.policy.batch_size, n);
  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  TrainBatch mb;
  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    for (std::size_t i = order.size(); i > 1; --i) {
      std::swap(order[i - 1], order[UniformIndex(train_rng, i)]);
    }
    for (Eigen::Index start = 0; start < n; start += batch) {
      const Eigen::Index len = std::min(batch, n - start);
      mb.inputs.resize(len, inputs.cols());
      mb.targets.resize(len, targets.cols());
      for (Eigen::Index r = 0; r < len; ++r) {
        const Eigen::Index src = order[static_cast<std::size_t>(start + r)];
        mb.inputs.row(r) = inputs.row(src);
        mb.targets.row(r) = targets.row(src);
      }
      policy.Train(mb);
    }
  }
  return policy;
}

std::vector<EpisodeLog> EvaluatePolicy(const Env& env_template,
                                       const Policy& policy, int episodes,
                                       std::uint64_t seed) {
  std::unique_ptr<Env> env = env_template.Clone();
  Rng env_rng = MakeStream(seed, "eval");
  EpisodeRecorder recorder;
  std::vector<EpisodeLog> logs;
  for (int ep = 1; ep <= episodes; ++ep) {
    env->Reset(env_rng());
    recorder.Begin(ep);
    while (!env->done()) {
      const Transition t = env->Step(policy.Act(env->state()));
      recorder.Record(t.reward, false);
    }
    logs.push_back(recorder.Finish(*env, std::nullopt));
  }
  return logs;
}

}  // namespace tips

#include <algorithm>
#include <set>
#include <utility>
#include <vector>

#include <gtest/gtest.h>

#include "stub_envs.h"
#include "tips/agent/policy.h"
#include "tips/agent/policy_trainer.h"
#include "tips/agent/tips_agent.h"
#include "tips/baselines/dcoach.h"
#include "tips/envs/cartpole.h"
#include "tips/envs/reacher.h"
#include "tips/oracle/expert.h"
#include "tips/oracle/oracle_teacher.h"
#include "tips/session/summary.h"

namespace tips {
namespace {

using testing::StaticEnv;

TipsConfig SmallConfig() {
  TipsConfig c = TipsConfig::Defaults("cartpole");
  c.exploration_samples = 50;
  c.fdm_initial_epochs = 1;
  c.fdm_episode_epochs = 1;
  return c;
}

// Feedback +1 on the listed (episode, step) pairs, null elsewhere.
class TraceStateTeacher : public StateTeacher {
 public:
  explicit TraceStateTeacher(std::set<std::pair<int, int>> trace)
      : trace_(std::move(trace)) {}
  FeedbackSignal Feedback(const TeachingContext& c) override {
    ++calls;
    if (!trace_.count({c.episode, c.step})) return FeedbackSignal::Null(1, c.step);
    ++non_null;
    return FeedbackSignal({+1}, c.step);
  }
  int calls = 0;
  int non_null = 0;

 private:
  std::set<std::pair<int, int>> trace_;
};

class TraceActionTeacher : public ActionTeacher {
 public:
  explicit TraceActionTeacher(std::set<std::pair<int, int>> trace)
      : trace_(std::move(trace)) {}
  ActionFeedback Feedback(const TeachingContext& c) override {
    if (!trace_.count({c.episode, c.step})) return ActionFeedback::Null(1);
    return ActionFeedback({+1});
  }

 private:
  std::set<std::pair<int, int>> trace_;
};

TEST(PolicyTest, DiscreteArgmaxAndOneHotTarget) {
  CartPole env;
  Rng rng(1);
  Policy policy(env.spec(), {}, rng);
  Mlp& net = policy.mutable_network();
  for (auto& w : net.weights()) w.setZero();
  for (auto& b : net.biases()) b.setZero();
  // Equal scores pick the lowest index.
  EXPECT_EQ(policy.Act(Eigen::VectorXd::Zero(4)).index(), 0);
  net.biases().back()[1] = 1.0;
  EXPECT_EQ(policy.Act(Eigen::VectorXd::Zero(4)).index(), 1);
  EXPECT_EQ(policy.Target(Action::Discrete(1)), Eigen::VectorXd(Eigen::Vector2d(0, 1)));
}

TEST(PolicyTest, ContinuousOutputWithinBoxAndTargetInverse) {
  Reacher env;
  Rng rng(2);
  Policy policy(env.spec(), {}, rng);
  for (int k = 0; k < 100; ++k) {
    Eigen::VectorXd s(4);
    for (int d = 0; d < 4; ++d) s[d] = UniformReal(rng, -50, 50);
    EXPECT_LE(policy.Act(s).values().cwiseAbs().maxCoeff(), 1.0);
  }
  const Action a = Action::Continuous(Eigen::Vector2d(0.25, -1.0));
  EXPECT_EQ(policy.Target(a), Eigen::VectorXd(Eigen::Vector2d(0.25, -1.0)));
}

TEST(PolicyTrainerTest, SinglePairBufferTrainsTwiceOnThatPair) {
  CartPole env;
  Rng r1(3), r2(3), replay(4);
  PolicyTrainer trainer(Policy(env.spec(), {}, r1), 10);
  Policy reference(env.spec(), {}, r2);
  const Eigen::VectorXd s = Eigen::Vector4d(0.01, -0.02, 0.03, 0.04);
  trainer.AddCorrection(s, Action::Discrete(1), replay);
  TrainBatch pair;
  pair.inputs = s.transpose();
  pair.targets = Eigen::RowVector2d(0, 1);
  reference.Train(pair);
  reference.Train(pair);
  EXPECT_TRUE(trainer.policy().network() == reference.network());
  EXPECT_EQ(trainer.buffer().size(), 1u);
  EXPECT_EQ(trainer.counts(), (UpdateCounts{1, 1, 0}));
}

TEST(PolicyTrainerTest, RepeatedCorrectionsReduceLoss) {
  CartPole env;
  Rng init(5), replay(6);
  PolicyTrainer trainer(Policy(env.spec(), {}, init), 10);
  const Eigen::VectorXd s = Eigen::Vector4d(0.0, 0.1, -0.05, 0.2);
  const double first = trainer.AddCorrection(s, Action::Discrete(0), replay).pair_loss;
  double last = first;
  for (int k = 0; k < 100; ++k) {
    last = trainer.AddCorrection(s, Action::Discrete(0), replay).pair_loss;
  }
  EXPECT_LT(last, 0.1 * first);
  EXPECT_EQ(trainer.policy().Act(s).index(), 0);
}

TEST(PolicyTrainerTest, ReplaySamplingIsSeeded) {
  CartPole env;
  Rng i1(7), i2(7);
  PolicyTrainer a(Policy(env.spec(), {}, i1), 10);
  PolicyTrainer b(Policy(env.spec(), {}, i2), 10);
  Rng ra(8), rb(8), states(9);
  for (int k = 0; k < 40; ++k) {
    Eigen::VectorXd s(4);
    for (int d = 0; d < 4; ++d) s[d] = UniformReal(states, -0.1, 0.1);
    a.AddCorrection(s, Action::Discrete(k % 2), ra);
    b.AddCorrection(s, Action::Discrete(k % 2), rb);
  }
  const TrainBatch ba = a.SampleBatch(ra);
  const TrainBatch bb = b.SampleBatch(rb);
  EXPECT_EQ(ba.inputs, bb.inputs);
  EXPECT_EQ(ba.inputs.rows(), 16);
  EXPECT_TRUE(a.policy().network() == b.policy().network());
}

TEST(PolicyTrainerTest, PeriodicUpdateBoundary) {
  CartPole env;
  Rng init(1), replay(2);
  PolicyTrainer trainer(Policy(env.spec(), {}, init), 10);
  // Empty buffer: nothing to replay.
  EXPECT_FALSE(trainer.MaybePeriodicUpdate(10, replay).has_value());
  trainer.AddCorrection(Eigen::Vector4d::Zero(), Action::Discrete(1), replay);
  for (int step = 1; step <= 35; ++step) {
    EXPECT_EQ(trainer.MaybePeriodicUpdate(step, replay).has_value(), step % 10 == 0);
  }
  EXPECT_EQ(trainer.counts().periodic, 3);
  EXPECT_THROW(PolicyTrainer(Policy(env.spec(), {}, init), 0), std::invalid_argument);
}

TEST(TipsAgentTest, NullFeedbackExecutesPolicyAction) {
  CartPole env;
  TipsAgent agent(env.spec(), SmallConfig(), 1);
  CartPole run_env;
  agent.RunInitialPhase(run_env);
  run_env.Reset(3);
  const Action expected = agent.PolicyAction(run_env.state());
  const std::size_t e_before = agent.experience().size();
  const TeachingStepResult r = agent.TeachingStep(run_env, FeedbackSignal::Null(1), 1);
  EXPECT_EQ(r.transition.action, expected);
  EXPECT_FALSE(r.corrected);
  EXPECT_FALSE(r.choice.has_value());
  EXPECT_EQ(agent.trainer().buffer().size(), 0u);
  EXPECT_EQ(agent.experience().size(), e_before + 1);
}

TEST(TipsAgentTest, FeedbackExecutesInverseDynamicsAction) {
  CartPole env;
  TipsAgent agent(env.spec(), SmallConfig(), 2);
  CartPole run_env;
  agent.RunInitialPhase(run_env);
  run_env.Reset(4);
  for (int step = 1; step <= 30 && !run_env.done(); ++step) {
    const std::size_t d_before = agent.trainer().buffer().size();
    const std::size_t e_before = agent.experience().size();
    const FeedbackSignal h({step % 3 == 0 ? -1 : +1});
    const TeachingStepResult r = agent.TeachingStep(run_env, h, step);
    ASSERT_TRUE(r.choice.has_value());
    EXPECT_EQ(r.transition.action, r.choice->action);
    EXPECT_EQ(agent.trainer().buffer().size(), d_before + 1);
    EXPECT_EQ(agent.experience().size(), e_before + 1);
    EXPECT_EQ(agent.trainer().buffer()[d_before].action, r.choice->action);
  }
}

TEST(TipsAgentTest, FeedbackBeforeModelThrows) {
  CartPole env;
  TipsAgent agent(env.spec(), SmallConfig(), 3);
  env.Reset(0);
  EXPECT_THROW(agent.TeachingStep(env, FeedbackSignal({1}), 1), std::logic_error);
  EXPECT_THROW(agent.TeachingStep(env, FeedbackSignal({1, 0}), 1),
               std::invalid_argument);
  // Null feedback is fine without a model.
  EXPECT_NO_THROW(agent.TeachingStep(env, FeedbackSignal::Null(1), 1));
}

TEST(TipsAgentTest, UpdateAccountingOverHundredSteps) {
  StaticEnv env(100);
  TipsConfig cfg = SmallConfig();
  cfg.t_update = 10;
  TipsAgent agent(env.spec(), cfg, 4);
  StaticEnv explore(100);
  agent.RunInitialPhase(explore);
  env.Reset(1);
  for (int step = 1; step <= 100; ++step) {
    agent.TeachingStep(env, FeedbackSignal({step % 2 ? 1 : -1}), step);
  }
  EXPECT_TRUE(env.done());
  EXPECT_EQ(agent.trainer().counts(), (UpdateCounts{100, 100, 10}));
  EXPECT_EQ(agent.policy().train_steps(), 210);
  EXPECT_EQ(agent.trainer().buffer().size(), 100u);
}

TEST(TipsAgentTest, ConfigValidation) {
  CartPole env;
  TipsConfig c = SmallConfig();
  c.error_constants = Eigen::Vector2d(0.1, 0.1);
  EXPECT_THROW(TipsAgent(env.spec(), c, 1), std::invalid_argument);
  c = SmallConfig();
  c.t_update = 0;
  EXPECT_THROW(TipsAgent(env.spec(), c, 1), std::invalid_argument);
  c = SmallConfig();
  c.policy_hidden = {};
  EXPECT_THROW(TipsAgent(env.spec(), c, 1), std::invalid_argument);
  EXPECT_THROW(TipsConfig::Defaults("pendulum"), std::invalid_argument);
  const TipsConfig r = TipsConfig::Defaults("reacher");
  EXPECT_EQ(r.exploration_samples, 10000);
  EXPECT_EQ(r.action_samples, 500);
  EXPECT_EQ(r.error_constants, Eigen::VectorXd(Eigen::Vector2d(0.008, 0.008)));
  EXPECT_EQ(r.fdm_hidden, std::vector<int>({64, 64}));
  EXPECT_EQ(r.policy_hidden, std::vector<int>({32, 32}));
  EXPECT_EQ(r.batch_size, 32);
}

TEST(TipsSessionTest, SilentTeacherNeverTrainsPolicy) {
  CartPole env;
  TipsConfig cfg = SmallConfig();
  cfg.episodes = 5;
  TipsSession session(env, cfg, 5);
  const Mlp before = session.agent().policy().network();
  session.RunInitialPhase();
  SilentStateTeacher teacher;
  while (!session.finished()) session.Step(teacher);
  EXPECT_TRUE(session.agent().policy().network() == before);
  EXPECT_EQ(session.agent().trainer().buffer().size(), 0u);
  EXPECT_EQ(session.agent().trainer().counts(), UpdateCounts{});
  for (const EpisodeLog& log : session.logs()) EXPECT_EQ(log.feedback_count, 0);
}

TEST(TipsSessionTest, LogAccounting) {
  CartPole env;
  TipsConfig cfg = SmallConfig();
  cfg.episodes = 6;
  std::set<std::pair<int, int>> trace;
  for (int e = 1; e <= 6; ++e) {
    for (int s = 1; s <= 200; s += e) trace.insert({e, s});
  }
  TraceStateTeacher teacher(trace);
  TipsSession session(env, cfg, 6);
  session.RunInitialPhase();
  int steps = 0;
  while (!session.finished()) {
    session.Step(teacher);
    ++steps;
  }
  const auto& logs = session.logs();
  ASSERT_EQ(logs.size(), 6u);
  int total_steps = 0, total_feedback = 0;
  for (std::size_t i = 0; i < logs.size(); ++i) {
    EXPECT_EQ(logs[i].episode, static_cast<int>(i) + 1);
    EXPECT_DOUBLE_EQ(logs[i].feedback_rate,
                     static_cast<double>(logs[i].feedback_count) / logs[i].steps);
    EXPECT_TRUE(logs[i].fdm_holdout_mse.has_value());
    EXPECT_EQ(logs[i].wall_ms, 0.0);
    total_steps += logs[i].steps;
    total_feedback += logs[i].feedback_count;
  }
  EXPECT_EQ(total_steps, steps);
  EXPECT_EQ(teacher.calls, steps);
  EXPECT_EQ(total_feedback, teacher.non_null);
  EXPECT_EQ(static_cast<std::int64_t>(total_feedback),
            session.agent().trainer().counts().immediate);
  EXPECT_THROW(session.Step(teacher), std::logic_error);
}

TEST(TipsSessionTest, SharedTrainerParityWithDCoach) {
  StaticEnv env(25);
  std::set<std::pair<int, int>> trace;
  for (int e = 1; e <= 3; ++e) {
    for (int s = 1; s <= 25; ++s) {
      if ((s * 7 + e) % 4 == 0) trace.insert({e, s});
    }
  }
  TipsConfig tcfg = SmallConfig();
  tcfg.episodes = 3;
  TipsSession tips(env, tcfg, 7);
  tips.RunInitialPhase();
  TraceStateTeacher st(trace);
  while (!tips.finished()) tips.Step(st);

  DCoachConfig dcfg = DCoachConfig::FromTips(tcfg, "static");
  DCoachSession dcoach(env, dcfg, 7);
  TraceActionTeacher at(trace);
  while (!dcoach.finished()) dcoach.Step(at);

  const UpdateCounts expected{static_cast<std::int64_t>(trace.size()),
                              static_cast<std::int64_t>(trace.size()), 0};
  EXPECT_EQ(tips.agent().trainer().counts().immediate, expected.immediate);
  EXPECT_EQ(tips.agent().trainer().counts(), dcoach.trainer().counts());
  EXPECT_GT(dcoach.trainer().counts().periodic, 0);
}

// Fraction of probe states where the policy disagrees with the expert.
double Disagreement(const Policy& policy, const ExpertController& expert,
                    const std::vector<Eigen::VectorXd>& probes) {
  int diff = 0;
  for (const auto& s : probes) diff += !(policy.Act(s) == expert.Act(s));
  return static_cast<double>(diff) / static_cast<double>(probes.size());
}

TEST(TipsSessionTest, ExactModelWithPersistentOracleConverges) {
  CartPole env;
  TipsConfig cfg = TipsConfig::Defaults("cartpole");
  cfg.episodes = 30;
  TipsSession session(env, cfg, 8);
  session.agent().UseDynamicsModel(std::make_unique<ExactDynamics>(env));
  OracleConfig oc = OracleConfig::Defaults("cartpole");
  oc.schedule.floor = 1.0;
  OracleStateTeacher teacher(MakeExpert(env), oc, 9);
  const auto expert = MakeExpert(env);

  std::vector<Eigen::VectorXd> probes;
  Rng rng(10);
  for (int k = 0; k < 200; ++k) {
    Eigen::VectorXd s(4);
    s << UniformReal(rng, -0.5, 0.5), UniformReal(rng, -0.5, 0.5),
        UniformReal(rng, -0.1, 0.1), UniformReal(rng, -0.5, 0.5);
    probes.push_back(s);
  }
  std::vector<double> per_episode;
  while (!session.finished()) {
    if (session.Step(teacher).finished_episode) {
      per_episode.push_back(Disagreement(session.agent().policy(), *expert, probes));
      EXPECT_FALSE(session.logs().back().fdm_holdout_mse.has_value());
    }
  }
  ASSERT_EQ(per_episode.size(), 30u);
  double first = 0, last = 0;
  for (int i = 0; i < 10; ++i) {
    first += per_episode[i];
    last += per_episode[20 + i];
  }
  EXPECT_LT(last, first);
}

TEST(TipsSessionTest, FdmHeldOutErrorTrendsDown) {
  CartPole env;
  const TipsConfig cfg = TipsConfig::Defaults("cartpole");
  OracleStateTeacher teacher(MakeExpert(env), OracleConfig::Defaults("cartpole"),
                             StreamSeed(3, "oracle"));
  const auto logs = RunTipsSession(env, teacher, cfg, 3);
  ASSERT_EQ(logs.size(), 40u);
  std::vector<double> first, last;
  for (int i = 0; i < 5; ++i) {
    first.push_back(*logs[i].fdm_holdout_mse);
    last.push_back(*logs[35 + i].fdm_holdout_mse);
  }
  EXPECT_LE(Median(last), Median(first));
}

TEST(TipsSessionTest, DeterministicLogs) {
  CartPole env;
  TipsConfig cfg = SmallConfig();
  cfg.episodes = 4;
  OracleStateTeacher t1(MakeExpert(env), OracleConfig::Defaults("cartpole"), 1);
  OracleStateTeacher t2(MakeExpert(env), OracleConfig::Defaults("cartpole"), 1);
  EXPECT_EQ(RunTipsSession(env, t1, cfg, 11), RunTipsSession(env, t2, cfg, 11));
}

}  // namespace
}  // namespace tips

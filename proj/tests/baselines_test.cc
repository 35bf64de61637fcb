#include <algorithm>
#include <sstream>
#include <vector>

#include <gtest/gtest.h>

#include "stub_envs.h"
#include "tips/agent/tips_agent.h"
#include "tips/baselines/action_feedback.h"
#include "tips/baselines/behavior_cloning.h"
#include "tips/baselines/dcoach.h"
#include "tips/baselines/demo_dataset.h"
#include "tips/baselines/teleop.h"
#include "tips/envs/cartpole.h"
#include "tips/envs/reacher.h"
#include "tips/oracle/expert.h"
#include "tips/oracle/oracle_teacher.h"
#include "tips/session/summary.h"

namespace tips {
namespace {

using testing::AdditiveEnv;

double MeanNormalized(const std::vector<EpisodeLog>& logs) {
  double sum = 0.0;
  for (const auto& l : logs) sum += l.normalized_return;
  return sum / static_cast<double>(logs.size());
}

// a = -0.5 s, a linear expert for the additive stub.
class LinearDemonstrator : public DemonstrationTeacher {
 public:
  Action Act(const Env&, const Eigen::VectorXd& state) override {
    return Action::Continuous(-0.5 * state);
  }
};

// A CartPole episode whose return is `steps` (one reward per step).
DemoEpisode CartPoleEpisode(int steps, int action) {
  DemoEpisode e;
  for (int i = 0; i < steps; ++i) {
    Eigen::VectorXd s(4);
    s << 0.001 * i, 0.0, 0.01 * (i % 3), 0.0;
    e.steps.push_back({s, Action::Discrete(action), 1.0});
  }
  return e;
}

TEST(TeleopActionTest, ZeroEpisodesGivesEmptyDataset) {
  CartPole env;
  ExpertDemonstrator expert(MakeExpert(env));
  const TeleopResult r = TeleopAction(env, expert, 0, 1);
  EXPECT_TRUE(r.dataset.empty());
  EXPECT_TRUE(r.logs.empty());
  EXPECT_THROW(TeleopAction(env, expert, -1, 1), std::invalid_argument);
}

TEST(TeleopActionTest, ExpertDemonstrationsOnCartPole) {
  CartPole env;
  ExpertDemonstrator expert(MakeExpert(env));
  const TeleopResult r = TeleopAction(env, expert, 5, 2);
  ASSERT_EQ(r.dataset.episodes.size(), 5u);
  for (std::size_t i = 0; i < 5; ++i) {
    EXPECT_EQ(static_cast<int>(r.dataset.episodes[i].steps.size()), r.logs[i].steps);
    EXPECT_EQ(r.logs[i].feedback_count, r.logs[i].steps);
    EXPECT_DOUBLE_EQ(r.dataset.episodes[i].Return(), r.logs[i].ret);
  }
  EXPECT_GE(MeanNormalized(r.logs), 0.9);
}

TEST(TeleopStateTest, SilentTeacherExecutesNeutralActions) {
  CartPole cartpole;
  ExactDynamics cp_model(cartpole);
  SilentStateTeacher silent;
  const TeleopResult cp =
      TeleopState(cartpole, silent, cp_model, ActionSampler(cartpole.spec().action_space, 10),
                  ErrorConstants(Eigen::VectorXd::Constant(1, 0.1)), 2, 3);
  for (const auto& e : cp.dataset.episodes) {
    for (const auto& s : e.steps) EXPECT_EQ(s.action.index(), 0);
  }
  for (const auto& l : cp.logs) EXPECT_EQ(l.feedback_count, 0);

  Reacher reacher;
  ExactDynamics r_model(reacher);
  const TeleopResult r =
      TeleopState(reacher, silent, r_model, ActionSampler(reacher.spec().action_space, 10),
                  ErrorConstants(Eigen::Vector2d(0.008, 0.008)), 1, 3);
  for (const auto& s : r.dataset.episodes[0].steps) {
    EXPECT_EQ(s.action.values(), Eigen::VectorXd::Zero(2));
  }
}

TEST(TeleopStateTest, ActionsStayWithinBounds) {
  Reacher env;
  ExactDynamics model(env);
  OracleConfig oc = OracleConfig::Defaults("reacher");
  oc.schedule.floor = 1.0;
  OracleStateTeacher teacher(MakeExpert(env), oc, 4);
  const TeleopResult r =
      TeleopState(env, teacher, model, ActionSampler(env.spec().action_space, 100),
                  ErrorConstants(Eigen::Vector2d(0.008, 0.008)), 2, 5);
  EXPECT_EQ(r.dataset.num_pairs(), 100u);
  for (const auto& e : r.dataset.episodes) {
    for (const auto& s : e.steps) EXPECT_LE(s.action.values().cwiseAbs().maxCoeff(), 1.0);
  }
}

TEST(TeleopStateTest, StateTeleopTracksActionTeleopOnCartPole) {
  CartPole env;
  const TipsConfig cfg = TipsConfig::Defaults("cartpole");
  TipsAgent agent(env.spec(), cfg, 6);
  CartPole explore;
  agent.RunInitialPhase(explore);
  OracleConfig oc = OracleConfig::Defaults("cartpole");
  oc.schedule.floor = 1.0;
  OracleStateTeacher teacher(MakeExpert(env), oc, StreamSeed(6, "oracle"));
  const TeleopResult state =
      TeleopState(env, teacher, agent.fdm(), agent.sampler(),
                  ErrorConstants(cfg.error_constants), 20, 6);
  ExpertDemonstrator expert(MakeExpert(env));
  const TeleopResult action = TeleopAction(env, expert, 20, 6);
  EXPECT_LE(std::abs(MeanNormalized(state.logs) - MeanNormalized(action.logs)), 0.2);
}

TEST(BehaviorCloningTest, FilterKeepsBoundaryEpisode) {
  CartPole env;
  DemoDataset data;
  data.episodes = {CartPoleEpisode(80, 1), CartPoleEpisode(79, 0),
                   CartPoleEpisode(200, 1)};
  const DemoDataset kept = FilterSuccessful(data, env, 0.4);
  ASSERT_EQ(kept.episodes.size(), 2u);
  EXPECT_EQ(kept.episodes[0].steps.size(), 80u);
  EXPECT_EQ(kept.episodes[1].steps.size(), 200u);
}

TEST(BehaviorCloningTest, AllBelowThresholdThrows) {
  CartPole env;
  DemoDataset data;
  data.episodes = {CartPoleEpisode(10, 1), CartPoleEpisode(79, 0)};
  EXPECT_THROW(TrainBehaviorCloning(data, env, {}, 1), NoSuccessfulDemonstrations);
  EXPECT_THROW(TrainBehaviorCloning(DemoDataset{}, env, {}, 1), std::invalid_argument);
}

TEST(BehaviorCloningTest, PolicyDependsOnlyOnFilteredSubset) {
  CartPole env;
  BcConfig cfg;
  cfg.epochs = 20;
  DemoDataset good;
  good.episodes = {CartPoleEpisode(120, 1), CartPoleEpisode(90, 0)};
  DemoDataset mixed = good;
  mixed.episodes.insert(mixed.episodes.begin() + 1, CartPoleEpisode(30, 1));
  mixed.episodes.push_back(CartPoleEpisode(5, 0));
  const Policy a = TrainBehaviorCloning(good, env, cfg, 9);
  const Policy b = TrainBehaviorCloning(mixed, env, cfg, 9);
  EXPECT_TRUE(a.network() == b.network());
}

TEST(BehaviorCloningTest, MatchesLinearExpertOnTrainingStates) {
  AdditiveEnv env(2, 50, 0.9);
  LinearDemonstrator expert;
  const TeleopResult demos = TeleopAction(env, expert, 1, 10);
  BcConfig cfg;
  cfg.epochs = 400;
  const Policy policy = TrainBehaviorCloning(demos.dataset, env, cfg, 11);
  double worst = 0.0;
  for (const auto& s : demos.dataset.episodes[0].steps) {
    worst = std::max(worst, (policy.Act(s.state).values() - s.action.values())
                                .cwiseAbs()
                                .maxCoeff());
  }
  EXPECT_LT(worst, 1e-2);
}

TEST(BehaviorCloningTest, EvaluationIsDeterministic) {
  CartPole env;
  Rng init(1);
  Policy policy(env.spec(), {}, init);
  const auto a = EvaluatePolicy(env, policy, 3, 4);
  EXPECT_EQ(a, EvaluatePolicy(env, policy, 3, 4));
  EXPECT_EQ(a.size(), 3u);
  for (const auto& l : a) EXPECT_EQ(l.feedback_count, 0);
}

TEST(ActionFeedbackTest, DiscreteCorrectionFlipsAction) {
  const ActionSpace space = ActionSpace::Discrete(2);
  const Eigen::VectorXd unused = Eigen::VectorXd::Constant(1, 1.0);
  EXPECT_EQ(ApplyActionFeedback(space, Action::Discrete(0), ActionFeedback({+1}), unused)
                .index(),
            1);
  EXPECT_EQ(ApplyActionFeedback(space, Action::Discrete(1), ActionFeedback({-1}), unused)
                .index(),
            0);
  EXPECT_EQ(ApplyActionFeedback(space, Action::Discrete(1), ActionFeedback({+1}), unused)
                .index(),
            1);
  EXPECT_EQ(ApplyActionFeedback(space, Action::Discrete(0), ActionFeedback({-1}), unused)
                .index(),
            0);
  EXPECT_THROW(ApplyActionFeedback(space, Action::Discrete(0), ActionFeedback({1, 0}),
                                   unused),
               std::invalid_argument);
}

TEST(ActionFeedbackTest, ContinuousCorrectionIsClamped) {
  Reacher env;
  const Eigen::Vector2d e(0.1, 0.1);
  const Action a = ApplyActionFeedback(env.spec().action_space,
                                       Action::Continuous(Eigen::Vector2d(0.3, 0.95)),
                                       ActionFeedback({-1, +1}), e);
  EXPECT_NEAR(a.values()[0], 0.2, 1e-15);
  EXPECT_EQ(a.values()[1], 1.0);
}

TEST(DCoachTest, SilentTeacherIsPurePolicyRollout) {
  CartPole env;
  DCoachConfig cfg = DCoachConfig::Defaults("cartpole");
  cfg.episodes = 3;
  DCoachSession session(env, cfg, 1);
  const Mlp before = session.policy().network();
  SilentActionTeacher silent;
  while (!session.finished()) {
    const Eigen::VectorXd s = session.env().state();
    const bool fresh = session.env().done();
    const SessionStep step = session.Step(silent);
    if (!fresh) EXPECT_EQ(step.transition.action, session.policy().Act(s));
  }
  EXPECT_TRUE(session.policy().network() == before);
  EXPECT_EQ(session.trainer().counts(), UpdateCounts{});
}

TEST(DCoachTest, ExecutedActionsStayWithinBounds) {
  Reacher env;
  DCoachConfig cfg = DCoachConfig::Defaults("reacher");
  cfg.episodes = 3;
  EXPECT_EQ(cfg.action_error, Eigen::VectorXd(Eigen::Vector2d(0.1, 0.1)));
  DCoachSession session(env, cfg, 2);
  OracleActionTeacher teacher(MakeExpert(env), OracleConfig::Defaults("reacher"), 3);
  int corrected = 0;
  while (!session.finished()) {
    const SessionStep s = session.Step(teacher);
    EXPECT_LE(s.transition.action.values().cwiseAbs().maxCoeff(), 1.0);
    corrected += s.had_feedback;
  }
  EXPECT_GT(corrected, 0);
  EXPECT_EQ(session.trainer().counts().immediate, corrected);
}

TEST(DCoachTest, ConfigValidation) {
  Reacher env;
  DCoachConfig cfg = DCoachConfig::Defaults("reacher");
  cfg.action_error = Eigen::VectorXd::Constant(1, 0.1);
  EXPECT_THROW(DCoachSession(env, cfg, 1), std::invalid_argument);
  cfg.action_error = Eigen::Vector2d(0.1, 0.0);
  EXPECT_THROW(DCoachSession(env, cfg, 1), std::invalid_argument);
}

TEST(DCoachTest, CartPoleOracleReachesThresholdNoFasterThanTips) {
  CartPole env;
  std::vector<double> dcoach_eps, tips_eps;
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    OracleActionTeacher at(MakeExpert(env), OracleConfig::Defaults("cartpole"),
                           StreamSeed(seed, "oracle"));
    const auto d = RunDCoachSession(env, at, DCoachConfig::Defaults("cartpole"), seed);
    dcoach_eps.push_back(EpisodesToThreshold(d, 0.9).value_or(1000));
    OracleStateTeacher st(MakeExpert(env), OracleConfig::Defaults("cartpole"),
                          StreamSeed(seed, "oracle"));
    const auto t = RunTipsSession(env, st, TipsConfig::Defaults("cartpole"), seed);
    tips_eps.push_back(EpisodesToThreshold(t, 0.9).value_or(1000));
  }
  EXPECT_LE(Median(dcoach_eps), 40.0);
  EXPECT_GE(Median(dcoach_eps), Median(tips_eps));
}

TEST(DemoCsvTest, RoundTripBothEnvironments) {
  for (const char* name : {"cartpole", "reacher"}) {
    auto env = MakeEnv(name);
    ExpertDemonstrator expert(MakeExpert(*env));
    const TeleopResult r = TeleopAction(*env, expert, 2, 7);
    std::stringstream ss;
    WriteDemoCsv(ss, r.dataset, env->spec());
    const DemoDataset back = ReadDemoCsv(ss, env->spec());
    ASSERT_EQ(back.episodes.size(), r.dataset.episodes.size());
    for (std::size_t e = 0; e < back.episodes.size(); ++e) {
      ASSERT_EQ(back.episodes[e].steps.size(), r.dataset.episodes[e].steps.size());
      for (std::size_t i = 0; i < back.episodes[e].steps.size(); ++i) {
        const DemoStep& a = back.episodes[e].steps[i];
        const DemoStep& b = r.dataset.episodes[e].steps[i];
        EXPECT_EQ(a.state, b.state);
        EXPECT_EQ(a.action, b.action);
        EXPECT_EQ(a.reward, b.reward);
      }
    }
  }
}

TEST(DemoCsvTest, HeaderAndRows) {
  CartPole env;
  DemoDataset data;
  data.episodes = {CartPoleEpisode(2, 1)};
  std::stringstream ss;
  WriteDemoCsv(ss, data, env.spec());
  std::string header;
  std::getline(ss, header);
  EXPECT_EQ(header, "episode,step,s0,s1,s2,s3,a0,reward");
  std::string row;
  std::getline(ss, row);
  EXPECT_EQ(row.substr(0, 4), "0,0,");
  Reacher reacher;
  std::stringstream again;
  WriteDemoCsv(again, data, env.spec());
  EXPECT_THROW(ReadDemoCsv(again, reacher.spec()), std::runtime_error);
}

}  // namespace
}  // namespace tips

#include "tips/serve/teach_loop.h"

#include <chrono>
#include <fstream>
#include <thread>

#include "tips/agent/tips_agent.h"
#include "tips/baselines/dcoach.h"
#include "tips/session/model_io.h"

namespace tips {
namespace {

class PendingStateTeacher : public StateTeacher {
 public:
  FeedbackSignal Feedback(const TeachingContext& context) override {
    return FeedbackSignal(pending, context.step);
  }
  std::vector<int> pending;
};

class PendingActionTeacher : public ActionTeacher {
 public:
  ActionFeedback Feedback(const TeachingContext&) override {
    return ActionFeedback(pending);
  }
  std::vector<int> pending;
};

class LiveTips : public LiveSession {
 public:
  LiveTips(const Env& env, const SessionConfig& config)
      : session_(env, config.tips_config(), config.seed,
                 config.record_wall_time) {}

  bool has_exploration() const override { return true; }
  void Explore() override { session_.RunInitialPhase(); }
  bool finished() const override { return session_.finished(); }
  SessionStep Step(const std::vector<int>& feedback) override {
    teacher_.pending = feedback;
    return session_.Step(teacher_);
  }
  const Env& env() const override { return session_.env(); }
  const std::vector<EpisodeLog>& logs() const override {
    return session_.logs();
  }
  const Mlp& policy_network() const override {
    return session_.agent().policy().network();
  }
  std::vector<std::string> feedback_dims() const override {
    return session_.env().spec().feedback_dims;
  }

 private:
  TipsSession session_;
  PendingStateTeacher teacher_;
};

class LiveDCoach : public LiveSession {
 public:
  LiveDCoach(const Env& env, const SessionConfig& config)
      : session_(env, config.dcoach_config(), config.seed,
                 config.record_wall_time) {}

  bool has_exploration() const override { return false; }
  void Explore() override {}
  bool finished() const override { return session_.finished(); }
  SessionStep Step(const std::vector<int>& feedback) override {
    teacher_.pending = feedback;
    return session_.Step(teacher_);
  }
  const Env& env() const override { return session_.env(); }
  const std::vector<EpisodeLog>& logs() const override {
    return session_.logs();
  }
  const Mlp& policy_network() const override {
    return session_.policy().network();
  }
  std::vector<std::string> feedback_dims() const override {
    const ActionSpace& space = session_.env().spec().action_space;
    if (space.is_discrete()) return {"action"};
    std::vector<std::string> names;
    for (int d = 0; d < ActionFeedbackDims(space); ++d) {
      names.push_back("a" + std::to_string(d));
    }
    return names;
  }

 private:
  DCoachSession session_;
  PendingActionTeacher teacher_;
};

}  // namespace

std::unique_ptr<LiveSession> MakeLiveSession(const SessionConfig& config) {
  const std::unique_ptr<Env> env = MakeEnv(config.env);
  switch (config.method) {
    case Method::kTips:
      return std::make_unique<LiveTips>(*env, config);
    case Method::kDCoach:
      return std::make_unique<LiveDCoach>(*env, config);
    default:
      throw UsageError("live teaching supports the tips and dcoach methods, not " +
                       MethodName(config.method));
  }
}

TeachLoop::TeachLoop(SessionConfig config, Channel<ClientMessage>& inbound,
                     Channel<FrameMessage>& outbound, TeachLoopOptions options)
    : config_(std::move(config)),
      inbound_(inbound),
      outbound_(outbound),
      options_(std::move(options)),
      session_(MakeLiveSession(config_)),
      fb_dims_(session_->feedback_dims()) {
  if (options_.autostart) Apply(ControlMessage{ControlCommand::kStart});
}

void TeachLoop::Tick() {
  for (ClientMessage& message : inbound_.Drain()) {
    if (const auto* control = std::get_if<ControlMessage>(&message)) {
      Apply(*control);
    } else if (state_ == LoopState::kTeaching) {
      const auto& event = std::get<FeedbackEvent>(message);
      if (event.dim >= 0 && event.dim < num_feedback_dims()) reducer_.Add(event);
    }
  }
  if (state_ == LoopState::kTeaching) Advance();
}

void TeachLoop::Apply(const ControlMessage& control) {
  switch (control.cmd) {
    case ControlCommand::kStart:
      if (state_ != LoopState::kIdle) return;
      if (session_->has_exploration()) {
        state_ = LoopState::kExploring;
        Publish(Phase::kExploring, false);
        session_->Explore();
      }
      state_ = LoopState::kTeaching;
      return;
    case ControlCommand::kPause:
      if (state_ != LoopState::kTeaching) return;
      state_ = LoopState::kPaused;
      reducer_.Clear();
      Publish(Phase::kPaused, false);
      return;
    case ControlCommand::kResume:
      if (state_ != LoopState::kPaused) return;
      state_ = LoopState::kTeaching;
      return;
    case ControlCommand::kReset:
      session_ = MakeLiveSession(config_);
      reducer_.Clear();
      episode_ = 0;
      step_ = 0;
      episode_return_ = 0.0;
      state_ = LoopState::kIdle;
      Publish(Phase::kPaused, false);
      return;
  }
}

void TeachLoop::Advance() {
  if (session_->finished()) {
    state_ = LoopState::kFinished;
    return;
  }
  const std::vector<int> feedback = reducer_.Take(num_feedback_dims());
  const SessionStep s = session_->Step(feedback);
  ++steps_taken_;
  if (s.step == 1) episode_return_ = 0.0;
  episode_ = s.episode;
  step_ = s.step;
  episode_return_ += s.transition.reward;
  Publish(Phase::kTeaching, s.had_feedback);
  if (s.finished_episode) PersistLogs();
  if (session_->finished()) {
    state_ = LoopState::kFinished;
    PersistPolicy();
  }
}

void TeachLoop::Publish(Phase phase, bool had_feedback) {
  FrameMessage f;
  f.episode = episode_;
  f.step = step_;
  f.fb_dims = fb_dims_;
  f.phase = phase;
  f.had_feedback = had_feedback;
  const Env& env = session_->env();
  if (phase != Phase::kExploring && env.state().size() > 0) {
    f.scene = env.Render(env.state());
    f.norm_return = env.NormalizedReturn(episode_return_);
  }
  outbound_.Push(std::move(f));
}

void TeachLoop::PersistLogs() const {
  if (!options_.out_dir) return;
  std::filesystem::create_directories(*options_.out_dir);
  std::ofstream out(*options_.out_dir / "episodes.csv", std::ios::trunc);
  WriteEpisodeCsv(out, session_->logs());
}

void TeachLoop::PersistPolicy() const {
  if (!options_.out_dir) return;
  std::filesystem::create_directories(*options_.out_dir);
  SaveMlp(*options_.out_dir / "policy.bin", session_->policy_network());
}

void TeachLoop::Run(std::stop_token stop) {
  using Clock = std::chrono::steady_clock;
  const auto period = std::chrono::duration_cast<Clock::duration>(
      std::chrono::duration<double>(1.0 / config_.control_hz));
  auto next = Clock::now();
  while (!stop.stop_requested()) {
    Tick();
    next += period;
    const auto now = Clock::now();
    // After a long tick (model fitting), restart the schedule instead of
    // bursting to catch up.
    if (now > next + period) next = now;
    std::this_thread::sleep_until(next);
  }
}

}  // namespace tips

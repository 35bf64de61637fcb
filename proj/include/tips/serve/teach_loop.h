#ifndef TIPS_SERVE_TEACH_LOOP_H_
#define TIPS_SERVE_TEACH_LOOP_H_

#include <atomic>
#include <filesystem>
#include <memory>
#include <optional>
#include <stop_token>
#include <string>
#include <vector>

#include "tips/serve/channel.h"
#include "tips/serve/feedback_reducer.h"
#include "tips/serve/protocol.h"
#include "tips/session/config.h"
#include "tips/session/episode_log.h"

namespace tips {

enum class LoopState { kIdle, kExploring, kTeaching, kPaused, kFinished };

struct TeachLoopOptions {
  // Begin teaching without waiting for a "start" command.
  bool autostart = false;
  // When set, episodes.csv is rewritten after every episode and the policy
  // is saved when the session finishes.
  std::optional<std::filesystem::path> out_dir;
};

// A live session stepped with externally supplied feedback vectors.
class LiveSession {
 public:
  virtual ~LiveSession() = default;
  // Work done before teaching (TIPS: exploration and model fitting).
  virtual bool has_exploration() const = 0;
  virtual void Explore() = 0;
  virtual bool finished() const = 0;
  virtual SessionStep Step(const std::vector<int>& feedback) = 0;
  virtual const Env& env() const = 0;
  virtual const std::vector<EpisodeLog>& logs() const = 0;
  virtual const Mlp& policy_network() const = 0;
  virtual std::vector<std::string> feedback_dims() const = 0;
};

// tips -> state feedback on the env's observables; dcoach -> action
// feedback. Throws UsageError for other methods.
std::unique_ptr<LiveSession> MakeLiveSession(const SessionConfig& config);

// Owns the session. Talks to the network layer only through `inbound`
// (feedback events and commands) and `outbound` (frames).
//
// States: idle --start--> exploring --> teaching <--pause/resume--> paused,
// teaching --last episode--> finished; reset returns to idle with a fresh
// session built from the same config. Feedback received outside teaching is
// discarded.
class TeachLoop {
 public:
  TeachLoop(SessionConfig config, Channel<ClientMessage>& inbound,
            Channel<FrameMessage>& outbound, TeachLoopOptions options = {});

  // Applies queued messages in arrival order, then, while teaching, reduces
  // the interval's feedback to one signal, advances one step and publishes
  // a frame.
  void Tick();

  // Calls Tick at config.control_hz until `stop` is requested.
  void Run(std::stop_token stop);

  LoopState state() const { return state_.load(); }
  long steps_taken() const { return steps_taken_.load(); }
  int num_feedback_dims() const { return static_cast<int>(fb_dims_.size()); }
  const std::vector<std::string>& feedback_dims() const { return fb_dims_; }
  // Only safe to read while Run is not executing on another thread.
  const LiveSession& session() const { return *session_; }

 private:
  void Apply(const ControlMessage& control);
  void Advance();
  void Publish(Phase phase, bool had_feedback);
  void PersistLogs() const;
  void PersistPolicy() const;

  SessionConfig config_;
  Channel<ClientMessage>& inbound_;
  Channel<FrameMessage>& outbound_;
  TeachLoopOptions options_;
  std::unique_ptr<LiveSession> session_;
  std::vector<std::string> fb_dims_;
  FeedbackReducer reducer_;
  std::atomic<LoopState> state_{LoopState::kIdle};
  std::atomic<long> steps_taken_{0};
  int episode_ = 0;
  int step_ = 0;
  double episode_return_ = 0.0;
};

}  // namespace tips

#endif  // TIPS_SERVE_TEACH_LOOP_H_

#ifndef TIPS_SERVE_PROTOCOL_H_
#define TIPS_SERVE_PROTOCOL_H_

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "tips/envs/env.h"

namespace tips {

// JSON text messages exchanged over the teaching WebSocket. Every message
// carries "v": 1; unknown fields are ignored on decode.
//
// Server -> client:
//   {"type":"frame","v":1,"episode":int,"step":int,"scene":[primitive...],
//    "fb_dims":[string...],"norm_return":float,"phase":string,
//    "had_feedback":bool}
//   {"type":"error","v":1,"message":string}
// where a primitive is one of
//   {"kind":"line","x1","y1","x2","y2","color"}
//   {"kind":"circle","x","y","r","color"}
//   {"kind":"rect","x","y","w","h","color"}      (x, y) is the centre
//
// Client -> server:
//   {"type":"feedback","v":1,"dim":int,"value":-1|1,"ts":int}
//   {"type":"control","v":1,"cmd":"start"|"pause"|"resume"|"reset"}
inline constexpr int kProtocolVersion = 1;

class ProtocolError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Phase { kExploring, kTeaching, kPaused };
std::string PhaseName(Phase phase);
Phase ParsePhase(std::string_view name);

struct FrameMessage {
  int episode = 0;
  int step = 0;
  Scene scene;
  std::vector<std::string> fb_dims;
  // Running normalized return of the current episode.
  double norm_return = 0.0;
  Phase phase = Phase::kPaused;
  bool had_feedback = false;
};

struct FeedbackEvent {
  int dim = 0;
  int value = 0;  // -1 or +1
  std::int64_t ts = 0;

  bool operator==(const FeedbackEvent&) const = default;
};

enum class ControlCommand { kStart, kPause, kResume, kReset };
std::string CommandName(ControlCommand cmd);

struct ControlMessage {
  ControlCommand cmd = ControlCommand::kStart;

  bool operator==(const ControlMessage&) const = default;
};

using ClientMessage = std::variant<FeedbackEvent, ControlMessage>;

bool operator==(const FrameMessage& a, const FrameMessage& b);

std::string EncodeFrame(const FrameMessage& frame);
FrameMessage DecodeFrame(std::string_view text);
std::string EncodeError(std::string_view message);
std::string EncodeClientMessage(const ClientMessage& message);

// Throws ProtocolError on malformed JSON, a wrong version, an unknown type
// or command, a value outside {-1, +1}, or a dim outside [0, num_dims).
ClientMessage DecodeClientMessage(std::string_view text, int num_dims);

}  // namespace tips

#endif  // TIPS_SERVE_PROTOCOL_H_

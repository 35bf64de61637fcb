#include "tips/serve/protocol.h"

#include <cmath>

#include <nlohmann/json.hpp>

namespace tips {
namespace {

using nlohmann::json;

json PrimitiveJson(const ScenePrimitive& p) {
  return std::visit(
      [](const auto& s) -> json {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, LinePrimitive>) {
          return {{"kind", "line"}, {"x1", s.x1}, {"y1", s.y1}, {"x2", s.x2},
                  {"y2", s.y2},     {"color", s.color}};
        } else if constexpr (std::is_same_v<T, CirclePrimitive>) {
          return {{"kind", "circle"}, {"x", s.x}, {"y", s.y}, {"r", s.r},
                  {"color", s.color}};
        } else {
          return {{"kind", "rect"}, {"x", s.x}, {"y", s.y}, {"w", s.w},
                  {"h", s.h},       {"color", s.color}};
        }
      },
      p);
}

double Finite(const json& j, const char* key) {
  const double v = j.at(key).get<double>();
  if (!std::isfinite(v)) throw ProtocolError(std::string("non-finite ") + key);
  return v;
}

ScenePrimitive ParsePrimitive(const json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  const std::string color = j.value("color", std::string());
  if (kind == "line") {
    return LinePrimitive{Finite(j, "x1"), Finite(j, "y1"), Finite(j, "x2"),
                         Finite(j, "y2"), color};
  }
  if (kind == "circle") {
    return CirclePrimitive{Finite(j, "x"), Finite(j, "y"), Finite(j, "r"), color};
  }
  if (kind == "rect") {
    return RectPrimitive{Finite(j, "x"), Finite(j, "y"), Finite(j, "w"),
                         Finite(j, "h"), color};
  }
  throw ProtocolError("unknown primitive kind: " + kind);
}

bool SamePrimitive(const ScenePrimitive& a, const ScenePrimitive& b) {
  if (a.index() != b.index()) return false;
  return PrimitiveJson(a) == PrimitiveJson(b);
}

void CheckVersion(const json& j) {
  if (j.contains("v") && j.at("v") != kProtocolVersion) {
    throw ProtocolError("unsupported protocol version");
  }
}

json ParseObject(std::string_view text) {
  json j = json::parse(text.begin(), text.end(), nullptr, false);
  if (j.is_discarded() || !j.is_object()) {
    throw ProtocolError("malformed message: expected a JSON object");
  }
  return j;
}

}  // namespace

std::string PhaseName(Phase phase) {
  switch (phase) {
    case Phase::kExploring: return "exploring";
    case Phase::kTeaching: return "teaching";
    case Phase::kPaused: return "paused";
  }
  return "?";
}

Phase ParsePhase(std::string_view name) {
  for (Phase p : {Phase::kExploring, Phase::kTeaching, Phase::kPaused}) {
    if (PhaseName(p) == name) return p;
  }
  throw ProtocolError("unknown phase: " + std::string(name));
}

std::string CommandName(ControlCommand cmd) {
  switch (cmd) {
    case ControlCommand::kStart: return "start";
    case ControlCommand::kPause: return "pause";
    case ControlCommand::kResume: return "resume";
    case ControlCommand::kReset: return "reset";
  }
  return "?";
}

bool operator==(const FrameMessage& a, const FrameMessage& b) {
  if (a.scene.size() != b.scene.size()) return false;
  for (std::size_t i = 0; i < a.scene.size(); ++i) {
    if (!SamePrimitive(a.scene[i], b.scene[i])) return false;
  }
  return a.episode == b.episode && a.step == b.step && a.fb_dims == b.fb_dims &&
         a.norm_return == b.norm_return && a.phase == b.phase &&
         a.had_feedback == b.had_feedback;
}

std::string EncodeFrame(const FrameMessage& frame) {
  json scene = json::array();
  for (const ScenePrimitive& p : frame.scene) scene.push_back(PrimitiveJson(p));
  const json j = {{"type", "frame"},
                  {"v", kProtocolVersion},
                  {"episode", frame.episode},
                  {"step", frame.step},
                  {"scene", scene},
                  {"fb_dims", frame.fb_dims},
                  {"norm_return", frame.norm_return},
                  {"phase", PhaseName(frame.phase)},
                  {"had_feedback", frame.had_feedback}};
  return j.dump();
}

FrameMessage DecodeFrame(std::string_view text) {
  const json j = ParseObject(text);
  CheckVersion(j);
  try {
    if (j.at("type") != "frame") throw ProtocolError("not a frame message");
    FrameMessage f;
    f.episode = j.at("episode").get<int>();
    f.step = j.at("step").get<int>();
    for (const json& p : j.at("scene")) f.scene.push_back(ParsePrimitive(p));
    f.fb_dims = j.at("fb_dims").get<std::vector<std::string>>();
    f.norm_return = j.at("norm_return").get<double>();
    f.phase = ParsePhase(j.at("phase").get<std::string>());
    f.had_feedback = j.value("had_feedback", false);
    return f;
  } catch (const json::exception& e) {
    throw ProtocolError(std::string("malformed frame: ") + e.what());
  }
}

std::string EncodeError(std::string_view message) {
  return json{{"type", "error"}, {"v", kProtocolVersion}, {"message", message}}
      .dump();
}

std::string EncodeClientMessage(const ClientMessage& message) {
  if (const auto* fb = std::get_if<FeedbackEvent>(&message)) {
    return json{{"type", "feedback"}, {"v", kProtocolVersion},
                {"dim", fb->dim},     {"value", fb->value},
                {"ts", fb->ts}}
        .dump();
  }
  const auto& control = std::get<ControlMessage>(message);
  return json{{"type", "control"},
              {"v", kProtocolVersion},
              {"cmd", CommandName(control.cmd)}}
      .dump();
}

ClientMessage DecodeClientMessage(std::string_view text, int num_dims) {
  const json j = ParseObject(text);
  CheckVersion(j);
  std::string type;
  try {
    type = j.at("type").get<std::string>();
    if (type == "feedback") {
      FeedbackEvent e;
      e.dim = j.at("dim").get<int>();
      e.value = j.at("value").get<int>();
      e.ts = j.at("ts").get<std::int64_t>();
      if (e.value != -1 && e.value != 1) {
        throw ProtocolError("feedback value must be -1 or 1");
      }
      if (e.dim < 0 || e.dim >= num_dims) {
        throw ProtocolError("feedback dim " + std::to_string(e.dim) +
                            " out of range [0, " + std::to_string(num_dims) +
                            ")");
      }
      return e;
    }
    if (type == "control") {
      const std::string cmd = j.at("cmd").get<std::string>();
      for (ControlCommand c : {ControlCommand::kStart, ControlCommand::kPause,
                               ControlCommand::kResume, ControlCommand::kReset}) {
        if (CommandName(c) == cmd) return ControlMessage{c};
      }
      throw ProtocolError("unknown control command: " + cmd);
    }
  } catch (const json::exception& e) {
    throw ProtocolError(std::string("malformed message: ") + e.what());
  }
  throw ProtocolError("unknown message type: " + type);
}

}  // namespace tips

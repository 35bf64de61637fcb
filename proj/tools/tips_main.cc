#include <atomic>
#include <chrono>
#include <csignal>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <thread>

#include <CLI11.hpp>

#include "tips/serve/teach_loop.h"
#include "tips/serve/ws_server.h"
#include "tips/session/config.h"
#include "tips/session/runner.h"
#include "tips/session/summary.h"

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitFailure = 3;

std::atomic<bool> g_interrupted{false};

void OnSignal(int) { g_interrupted = true; }

struct CommonFlags {
  std::optional<std::string> env;
  std::optional<std::string> method;
  std::optional<std::uint64_t> seed;
  std::optional<int> episodes;
  std::optional<std::string> config;
  std::optional<std::string> out;
};

void AddCommon(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("--env", f.env, "cartpole | reacher");
  cmd->add_option("--method", f.method,
                  "tips | dcoach | bc | teleop-action | teleop-state");
  cmd->add_option("--seed", f.seed, "master seed");
  cmd->add_option("--episodes", f.episodes,
                  "teaching, demonstration or evaluation episodes");
  cmd->add_option("--config", f.config, "JSON config file");
  cmd->add_option("--out", f.out, "output directory");
}

tips::SessionConfig Resolve(const CommonFlags& f) {
  std::optional<std::filesystem::path> path;
  if (f.config) path = *f.config;
  tips::SessionConfig c = tips::LoadSessionConfig(path, f.env);
  if (f.method) c.method = tips::ParseMethod(*f.method);
  if (f.seed) c.seed = *f.seed;
  if (f.episodes) c.episodes = *f.episodes;
  return c;
}

int Run(const CommonFlags& f, const std::optional<std::string>& teacher,
        const std::optional<std::string>& dataset, bool wall_time) {
  tips::SessionConfig c = Resolve(f);
  if (teacher) c.teacher = tips::ParseTeacher(*teacher);
  if (dataset) c.dataset = *dataset;
  if (wall_time) c.record_wall_time = true;
  std::optional<std::filesystem::path> out;
  if (f.out) out = *f.out;
  const tips::RunResult r = tips::RunSession(c, out);
  if (r.summary) {
    std::printf("%s %s seed=%llu episodes=%d final_mean=%.4f final_median=%.4f "
                "feedback=%ld",
                c.env.c_str(), tips::MethodName(c.method).c_str(),
                static_cast<unsigned long long>(c.seed), r.summary->episodes,
                r.summary->final_mean, r.summary->final_median,
                r.summary->total_feedback);
    if (r.summary->episodes_to_threshold) {
      std::printf(" to_threshold=%d", *r.summary->episodes_to_threshold);
    }
    std::printf("\n");
  }
  return 0;
}

int Serve(const CommonFlags& f, std::optional<int> port,
          std::optional<double> control_hz, bool autostart) {
  tips::SessionConfig c = Resolve(f);
  c.teacher = tips::TeacherKind::kHuman;
  if (port) c.port = *port;
  if (control_hz) c.control_hz = *control_hz;
  c.Validate();

  tips::Channel<tips::ClientMessage> inbound;
  tips::Channel<tips::FrameMessage> outbound;
  tips::TeachLoopOptions options;
  options.autostart = autostart;
  if (f.out) options.out_dir = *f.out;
  tips::TeachLoop loop(c, inbound, outbound, options);
  tips::WsServer server(static_cast<unsigned short>(c.port),
                        loop.num_feedback_dims(), inbound, outbound);
  server.Start();
  std::printf("serving %s/%s on ws://0.0.0.0:%u at %.3g Hz (Ctrl-C to stop)\n",
              c.env.c_str(), tips::MethodName(c.method).c_str(), server.port(),
              c.control_hz);
  std::fflush(stdout);

  std::signal(SIGINT, OnSignal);
  std::signal(SIGTERM, OnSignal);
  {
    std::jthread worker([&loop](std::stop_token stop) { loop.Run(stop); });
    while (!g_interrupted) {
      std::this_thread::sleep_for(std::chrono::milliseconds(100));
    }
  }
  server.Stop();
  return 0;
}

int Summarize(const std::string& dir, int window, double threshold) {
  if (window < 1) throw tips::UsageError("--window must be >= 1");
  tips::PrintSummaryTable(std::cout,
                          tips::SummarizeDirectory(dir, window, threshold));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Interactive imitation learning from state-space feedback"};
  app.require_subcommand(1);

  CommonFlags run_flags;
  std::optional<std::string> teacher, dataset;
  bool wall_time = false;
  CLI::App* run = app.add_subcommand("run", "run one oracle-taught session");
  AddCommon(run, run_flags);
  run->add_option("--teacher", teacher, "oracle | human");
  run->add_option("--dataset", dataset, "demonstrations CSV (method bc)");
  run->add_flag("--wall-time", wall_time, "record wall-clock time per episode");

  CommonFlags serve_flags;
  std::optional<int> port;
  std::optional<double> control_hz;
  bool autostart = false;
  CLI::App* serve = app.add_subcommand("serve", "live human teaching over WebSocket");
  AddCommon(serve, serve_flags);
  serve->add_option("--port", port, "listen port (0 picks a free port)");
  serve->add_option("--control-hz", control_hz, "control steps per second");
  serve->add_flag("--autostart", autostart, "start without a start command");

  std::string summarize_dir;
  int window = tips::kDefaultSummaryWindow;
  double threshold = tips::kDefaultSuccessThreshold;
  CLI::App* summarize = app.add_subcommand("summarize", "aggregate run directories");
  summarize->add_option("--in", summarize_dir, "directory of runs")->required();
  summarize->add_option("--window", window, "final-episode window");
  summarize->add_option("--threshold", threshold, "success threshold");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (run->parsed()) return Run(run_flags, teacher, dataset, wall_time);
    if (serve->parsed()) return Serve(serve_flags, port, control_hz, autostart);
    return Summarize(summarize_dir, window, threshold);
  } catch (const tips::UsageError& e) {
    std::fprintf(stderr, "usage error: %s\n", e.what());
    return kExitUsage;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitFailure;
  }
}

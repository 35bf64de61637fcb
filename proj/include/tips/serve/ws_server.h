#ifndef TIPS_SERVE_WS_SERVER_H_
#define TIPS_SERVE_WS_SERVER_H_

#include <memory>
#include <thread>

#include "tips/serve/channel.h"
#include "tips/serve/protocol.h"

namespace tips {

// WebSocket endpoint for the teaching UI. Decodes client messages into
// `inbound` (invalid ones get an error reply and the connection stays open)
// and broadcasts every frame from `outbound` to all connected clients.
class WsServer {
 public:
  // Binds and listens on 0.0.0.0:`port` (0 picks a free port). Throws
  // std::runtime_error if the port cannot be bound.
  WsServer(unsigned short port, int num_feedback_dims,
           Channel<ClientMessage>& inbound, Channel<FrameMessage>& outbound);
  ~WsServer();

  WsServer(const WsServer&) = delete;
  WsServer& operator=(const WsServer&) = delete;

  unsigned short port() const;
  // Starts the network and frame-pump threads.
  void Start();
  // Closes the outbound channel, all connections and joins the threads.
  void Stop();
  int num_clients() const;

  struct Impl;

 private:
  std::shared_ptr<Impl> impl_;
  std::thread io_thread_;
  std::thread pump_thread_;
};

}  // namespace tips

#endif  // TIPS_SERVE_WS_SERVER_H_

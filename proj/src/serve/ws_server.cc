#include "tips/serve/ws_server.h"

#include <atomic>
#include <chrono>
#include <deque>
#include <set>
#include <string>

#include <boost/asio.hpp>
#include <boost/beast/core.hpp>
#include <boost/beast/websocket.hpp>

namespace tips {
namespace {

namespace asio = boost::asio;
namespace beast = boost::beast;
namespace websocket = beast::websocket;
using tcp = asio::ip::tcp;

class Connection;

}  // namespace

struct WsServer::Impl {
  asio::io_context ioc;
  tcp::acceptor acceptor{ioc};
  int num_dims = 0;
  Channel<ClientMessage>* inbound = nullptr;
  Channel<FrameMessage>* outbound = nullptr;
  // Touched only on the io thread.
  std::set<std::shared_ptr<Connection>> connections;
  std::atomic<int> num_clients{0};
  std::atomic<bool> stopping{false};

  void Accept();
  void Broadcast(std::shared_ptr<const std::string> text);
  void Remove(const std::shared_ptr<Connection>& c);
};

namespace {

class Connection : public std::enable_shared_from_this<Connection> {
 public:
  Connection(tcp::socket socket, WsServer::Impl* server)
      : ws_(std::move(socket)), server_(server) {}

  void Open() {
    ws_.set_option(
        websocket::stream_base::timeout::suggested(beast::role_type::server));
    ws_.async_accept([self = shared_from_this()](beast::error_code ec) {
      if (ec) return self->Fail();
      self->open_ = true;
      self->Read();
    });
  }

  void Send(std::shared_ptr<const std::string> text) {
    if (!open_) return;
    queue_.push_back(std::move(text));
    if (queue_.size() == 1) Write();
  }

  void Close() {
    if (!open_) return;
    open_ = false;
    ws_.async_close(websocket::close_code::going_away,
                    [self = shared_from_this()](beast::error_code) {});
  }

 private:
  void Read() {
    ws_.async_read(buffer_, [self = shared_from_this()](beast::error_code ec,
                                                        std::size_t) {
      if (ec) return self->Fail();
      const std::string text = beast::buffers_to_string(self->buffer_.data());
      self->buffer_.consume(self->buffer_.size());
      try {
        self->server_->inbound->Push(
            DecodeClientMessage(text, self->server_->num_dims));
      } catch (const ProtocolError& e) {
        self->Send(std::make_shared<const std::string>(EncodeError(e.what())));
      }
      self->Read();
    });
  }

  void Write() {
    ws_.text(true);
    ws_.async_write(asio::buffer(*queue_.front()),
                    [self = shared_from_this()](beast::error_code ec,
                                                std::size_t) {
                      if (ec) return self->Fail();
                      self->queue_.pop_front();
                      if (!self->queue_.empty()) self->Write();
                    });
  }

  void Fail() {
    open_ = false;
    server_->Remove(shared_from_this());
  }

  websocket::stream<beast::tcp_stream> ws_;
  WsServer::Impl* server_;
  beast::flat_buffer buffer_;
  std::deque<std::shared_ptr<const std::string>> queue_;
  bool open_ = false;
};

}  // namespace

void WsServer::Impl::Accept() {
  acceptor.async_accept([this](beast::error_code ec, tcp::socket socket) {
    if (ec || stopping) return;
    auto c = std::make_shared<Connection>(std::move(socket), this);
    connections.insert(c);
    num_clients = static_cast<int>(connections.size());
    c->Open();
    Accept();
  });
}

void WsServer::Impl::Broadcast(std::shared_ptr<const std::string> text) {
  for (const auto& c : connections) c->Send(text);
}

void WsServer::Impl::Remove(const std::shared_ptr<Connection>& c) {
  connections.erase(c);
  num_clients = static_cast<int>(connections.size());
}

WsServer::WsServer(unsigned short port, int num_feedback_dims,
                   Channel<ClientMessage>& inbound,
                   Channel<FrameMessage>& outbound)
    : impl_(std::make_shared<Impl>()) {
  impl_->num_dims = num_feedback_dims;
  impl_->inbound = &inbound;
  impl_->outbound = &outbound;
  try {
    const tcp::endpoint endpoint(tcp::v4(), port);
    impl_->acceptor.open(endpoint.protocol());
    impl_->acceptor.set_option(asio::socket_base::reuse_address(true));
    impl_->acceptor.bind(endpoint);
    impl_->acceptor.listen();
  } catch (const boost::system::system_error& e) {
    throw std::runtime_error("cannot listen on port " + std::to_string(port) +
                             ": " + e.code().message());
  }
}

WsServer::~WsServer() { Stop(); }

unsigned short WsServer::port() const {
  return impl_->acceptor.local_endpoint().port();
}

int WsServer::num_clients() const { return impl_->num_clients.load(); }

void WsServer::Start() {
  impl_->Accept();
  io_thread_ = std::thread([impl = impl_] {
    auto guard = asio::make_work_guard(impl->ioc);
    impl->ioc.run();
  });
  pump_thread_ = std::thread([impl = impl_] {
    while (!impl->stopping) {
      auto frame = impl->outbound->PopFor(std::chrono::milliseconds(50));
      if (!frame) continue;
      auto text = std::make_shared<const std::string>(EncodeFrame(*frame));
      asio::post(impl->ioc, [impl, text] { impl->Broadcast(text); });
    }
  });
}

void WsServer::Stop() {
  if (impl_->stopping.exchange(true)) return;
  impl_->outbound->Close();
  if (pump_thread_.joinable()) pump_thread_.join();
  if (io_thread_.joinable()) {
    asio::post(impl_->ioc, [impl = impl_] {
      beast::error_code ec;
      impl->acceptor.close(ec);
      for (const auto& c : impl->connections) c->Close();
    });
    // Let the close handshakes go out before tearing down.
    std::this_thread::sleep_for(std::chrono::milliseconds(50));
    impl_->ioc.stop();
    io_thread_.join();
  }
}

}  // namespace tips

#pragma once

#include <cstdint>
#include <memory>
#include <string>

#include "heteroedge/runtime/transport.hpp"

namespace heteroedge::runtime {

// Point-to-point TCP transport speaking the length-prefixed wire format.
// A reader thread demultiplexes incoming frames into per-topic bounded
// mailboxes; a full mailbox blocks the reader, which backpressures the
// sender through TCP. Messages for not-yet-subscribed topics are retained.
class SocketTransport final : public Transport {
 public:
  ~SocketTransport() override;

  SocketTransport(const SocketTransport&) = delete;
  SocketTransport& operator=(const SocketTransport&) = delete;

  std::uint64_t publish(Message m) override;
  std::shared_ptr<Subscription> subscribe(const std::string& topic) override;

  // Returns a listening fd bound to 127.0.0.1; fills in the chosen port.
  static int listen_on(std::uint16_t& port);
  static std::unique_ptr<SocketTransport> accept_peer(int listen_fd);
  static std::unique_ptr<SocketTransport> connect_to(const std::string& host,
                                                     std::uint16_t port);

  // Graceful shutdown of the sending side (peer sees EOF after queued data).
  void close_send();

 private:
  explicit SocketTransport(int fd);
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace heteroedge::runtime

#pragma once

#include <functional>
#include <memory>
#include <optional>

#include "heteroedge/runtime/message.hpp"

namespace heteroedge::runtime {

// Simulated time in seconds. The in-process transport and the scenario
// driver share one clock; nothing in the runtime reads wall time.
class VirtualClock {
 public:
  double now() const { return now_s_; }
  void advance(double dt_s) {
    if (dt_s > 0) now_s_ += dt_s;
  }
  void advance_to(double t_s) {
    if (t_s > now_s_) now_s_ = t_s;
  }

 private:
  double now_s_ = 0;
};

// Receiving end of a topic subscription. Messages become visible in
// delivery order, each exactly once per subscription.
class Subscription {
 public:
  virtual ~Subscription() = default;
  // Next already-delivered message, if any. Never blocks.
  virtual std::optional<Message> poll() = 0;
  // Wait up to timeout_s for a message. On the in-process transport time is
  // virtual, so this is poll() without waiting.
  virtual std::optional<Message> await(double timeout_s) = 0;
};

// Minimal topic pub/sub contract shared by the in-process and socket
// transports. publish() stamps a per-topic, strictly increasing sequence
// number and returns it.
class Transport {
 public:
  virtual ~Transport() = default;
  virtual std::uint64_t publish(Message m) = 0;
  virtual std::shared_ptr<Subscription> subscribe(const std::string& topic) = 0;
};

// Deterministic single-threaded transport on virtual time. Each published
// message is due at now + latency(message); subscribers see it once the
// shared clock passes the due time. Messages published before a topic has
// subscribers are retained and handed to the first subscriber.
class InprocTransport final : public Transport {
 public:
  using LatencyFn = std::function<double(const Message&)>;

  InprocTransport(VirtualClock& clock, LatencyFn latency, std::size_t queue_capacity = 4096);
  ~InprocTransport() override;

  std::uint64_t publish(Message m) override;
  std::shared_ptr<Subscription> subscribe(const std::string& topic) override;

  // Earliest pending delivery time across all mailboxes, if any.
  std::optional<double> next_delivery_time() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace heteroedge::runtime

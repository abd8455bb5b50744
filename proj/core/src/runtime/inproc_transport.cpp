#include "heteroedge/runtime/transport.hpp"

#include <deque>
#include <map>
#include <vector>

#include "heteroedge/error.hpp"

namespace heteroedge::runtime {

namespace {

struct Pending {
  double due_s = 0;
  Message msg;
};

}  // namespace

struct InprocTransport::Impl {
  VirtualClock* clock = nullptr;
  LatencyFn latency;
  std::size_t capacity = 0;
  std::map<std::string, std::uint64_t> next_seq;
  std::map<std::string, std::vector<std::shared_ptr<class InprocSubscription>>> subs;
  std::map<std::string, std::deque<Pending>> retained;  // published before any subscriber
};

class InprocSubscription final : public Subscription {
 public:
  InprocSubscription(VirtualClock* clock, std::size_t capacity)
      : clock_(clock), capacity_(capacity) {}

  void push(Pending p) {
    if (queue_.size() >= capacity_)
      throw Error(Errc::BACKPRESSURE, "subscriber queue full on topic " + p.msg.topic);
    queue_.push_back(std::move(p));
  }

  std::optional<Message> poll() override {
    if (queue_.empty() || queue_.front().due_s > clock_->now()) return std::nullopt;
    Message m = std::move(queue_.front().msg);
    queue_.pop_front();
    return m;
  }

  std::optional<Message> await(double) override { return poll(); }

  std::optional<double> next_due() const {
    if (queue_.empty()) return std::nullopt;
    return queue_.front().due_s;
  }

 private:
  VirtualClock* clock_;
  std::size_t capacity_;
  // Publish order, gated on the head's due time; per-publisher sequence
  // order is preserved even if a later message carries a shorter latency.
  std::deque<Pending> queue_;
};

InprocTransport::InprocTransport(VirtualClock& clock, LatencyFn latency,
                                 std::size_t queue_capacity)
    : impl_(std::make_unique<Impl>()) {
  impl_->clock = &clock;
  impl_->latency = latency ? std::move(latency) : [](const Message&) { return 0.0; };
  impl_->capacity = queue_capacity;
}

InprocTransport::~InprocTransport() = default;

std::uint64_t InprocTransport::publish(Message m) {
  m.sequence = impl_->next_seq[m.topic]++;
  const std::uint64_t seq = m.sequence;
  const double due = impl_->clock->now() + impl_->latency(m);
  const auto it = impl_->subs.find(m.topic);
  if (it == impl_->subs.end() || it->second.empty()) {
    auto& q = impl_->retained[m.topic];
    if (q.size() >= impl_->capacity)
      throw Error(Errc::BACKPRESSURE, "retained queue full on topic " + m.topic);
    q.push_back({due, std::move(m)});
    return seq;
  }
  for (auto& sub : it->second) sub->push({due, m});
  return seq;
}

std::shared_ptr<Subscription> InprocTransport::subscribe(const std::string& topic) {
  auto sub = std::make_shared<InprocSubscription>(impl_->clock, impl_->capacity);
  if (auto it = impl_->retained.find(topic); it != impl_->retained.end()) {
    for (auto& p : it->second) sub->push(std::move(p));
    impl_->retained.erase(it);
  }
  impl_->subs[topic].push_back(sub);
  return sub;
}

std::optional<double> InprocTransport::next_delivery_time() const {
  std::optional<double> best;
  for (const auto& [topic, subs] : impl_->subs)
    for (const auto& sub : subs)
      if (const auto due = sub->next_due(); due && (!best || *due < *best)) best = due;
  for (const auto& [topic, q] : impl_->retained)
    if (!q.empty() && (!best || q.front().due_s < *best)) best = q.front().due_s;
  return best;
}

}  // namespace heteroedge::runtime

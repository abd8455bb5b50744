#include "heteroedge/runtime/socket_transport.hpp"

#include <arpa/inet.h>
#include <netinet/in.h>
#include <netinet/tcp.h>
#include <sys/socket.h>
#include <unistd.h>

#include <chrono>
#include <condition_variable>
#include <cstring>
#include <deque>
#include <map>
#include <mutex>
#include <thread>
#include <vector>

#include "heteroedge/error.hpp"
#include "heteroedge/log.hpp"
#include "heteroedge/runtime/wire.hpp"

namespace heteroedge::runtime {

namespace {

constexpr std::size_t kMailboxCapacity = 1024;

bool read_exact(int fd, std::uint8_t* buf, std::size_t n) {
  std::size_t got = 0;
  while (got < n) {
    const ssize_t k = ::read(fd, buf + got, n - got);
    if (k <= 0) return false;
    got += static_cast<std::size_t>(k);
  }
  return true;
}

void write_all(int fd, const std::uint8_t* buf, std::size_t n) {
  std::size_t sent = 0;
  while (sent < n) {
    const ssize_t k = ::write(fd, buf + sent, n - sent);
    if (k <= 0) throw Error(Errc::TRANSPORT_DOWN, "socket write failed");
    sent += static_cast<std::size_t>(k);
  }
}

}  // namespace

class SocketSubscription final : public Subscription {
 public:
  std::optional<Message> poll() override {
    std::unique_lock<std::mutex> lock(mu_);
    if (queue_.empty()) return std::nullopt;
    return take(lock);
  }

  std::optional<Message> await(double timeout_s) override {
    std::unique_lock<std::mutex> lock(mu_);
    // A system_clock deadline keeps this on pthread_cond_timedwait, which
    // thread sanitizers intercept (steady-clock waits go through
    // pthread_cond_clockwait and confuse them).
    const auto deadline =
        std::chrono::system_clock::now() +
        std::chrono::duration_cast<std::chrono::system_clock::duration>(
            std::chrono::duration<double>(timeout_s));
    not_empty_.wait_until(lock, deadline, [&] { return !queue_.empty() || down_; });
    if (queue_.empty()) return std::nullopt;
    return take(lock);
  }

  // Called from the reader thread; blocks when the mailbox is full so TCP
  // flow control throttles the sender.
  void push(Message m) {
    std::unique_lock<std::mutex> lock(mu_);
    not_full_.wait(lock, [&] { return queue_.size() < kMailboxCapacity || down_; });
    if (down_) return;
    queue_.push_back(std::move(m));
    not_empty_.notify_all();
  }

  void mark_down() {
    std::lock_guard<std::mutex> lock(mu_);
    down_ = true;
    not_empty_.notify_all();
    not_full_.notify_all();
  }

 private:
  std::optional<Message> take(std::unique_lock<std::mutex>&) {
    Message m = std::move(queue_.front());
    queue_.pop_front();
    not_full_.notify_all();
    return m;
  }

  std::mutex mu_;
  std::condition_variable not_empty_, not_full_;
  std::deque<Message> queue_;
  bool down_ = false;
};

struct SocketTransport::Impl {
  int fd = -1;
  std::thread reader;
  std::mutex send_mu;
  std::mutex route_mu;
  std::map<std::string, std::uint64_t> next_seq;  // guarded by send_mu
  std::map<std::string, std::vector<std::shared_ptr<SocketSubscription>>> subs;
  std::map<std::string, std::deque<Message>> retained;
  bool down = false;

  void route(Message m) {
    std::vector<std::shared_ptr<SocketSubscription>> targets;
    {
      std::lock_guard<std::mutex> lock(route_mu);
      const auto it = subs.find(m.topic);
      if (it == subs.end() || it->second.empty()) {
        auto& q = retained[m.topic];
        if (q.size() < kMailboxCapacity) q.push_back(std::move(m));
        return;
      }
      targets = it->second;
    }
    for (std::size_t i = 0; i + 1 < targets.size(); ++i) targets[i]->push(m);
    targets.back()->push(std::move(m));
  }

  void reader_loop() {
    while (true) {
      // Fixed prefix: magic | kind | sequence | topic length.
      std::uint8_t head[15];
      if (!read_exact(fd, head, sizeof(head))) break;
      if (std::memcmp(head, "HEO1", 4) != 0) {
        HETEROEDGE_LOG_ERROR("socket transport: bad magic, closing");
        break;
      }
      const std::uint16_t topic_len = static_cast<std::uint16_t>((head[13] << 8) | head[14]);
      std::vector<std::uint8_t> frame(sizeof(head) + topic_len + 4);
      std::memcpy(frame.data(), head, sizeof(head));
      if (!read_exact(fd, frame.data() + sizeof(head), topic_len + 4)) break;
      const std::uint8_t* len_at = frame.data() + sizeof(head) + topic_len;
      const std::uint32_t payload_len = (static_cast<std::uint32_t>(len_at[0]) << 24) |
                                        (len_at[1] << 16) | (len_at[2] << 8) | len_at[3];
      const std::size_t frame_head = frame.size();
      frame.resize(frame_head + payload_len);
      if (payload_len > 0 && !read_exact(fd, frame.data() + frame_head, payload_len)) break;
      Message m;
      try {
        m = decode_message(frame);
      } catch (const Error& e) {
        HETEROEDGE_LOG_ERROR("socket transport: ", e.what());
        break;
      }
      route(std::move(m));
    }
    std::lock_guard<std::mutex> lock(route_mu);
    down = true;
    for (auto& [topic, v] : subs)
      for (auto& s : v) s->mark_down();
  }
};

SocketTransport::SocketTransport(int fd) : impl_(std::make_unique<Impl>()) {
  impl_->fd = fd;
  const int one = 1;
  ::setsockopt(fd, IPPROTO_TCP, TCP_NODELAY, &one, sizeof(one));
  impl_->reader = std::thread([impl = impl_.get()] { impl->reader_loop(); });
}

SocketTransport::~SocketTransport() {
  ::shutdown(impl_->fd, SHUT_RDWR);
  if (impl_->reader.joinable()) impl_->reader.join();
  ::close(impl_->fd);
}

std::uint64_t SocketTransport::publish(Message m) {
  std::lock_guard<std::mutex> lock(impl_->send_mu);
  m.sequence = impl_->next_seq[m.topic]++;
  const std::uint64_t seq = m.sequence;
  const auto frame = encode_message(m);
  write_all(impl_->fd, frame.data(), frame.size());
  return seq;
}

std::shared_ptr<Subscription> SocketTransport::subscribe(const std::string& topic) {
  auto sub = std::make_shared<SocketSubscription>();
  std::deque<Message> backlog;
  {
    std::lock_guard<std::mutex> lock(impl_->route_mu);
    if (auto it = impl_->retained.find(topic); it != impl_->retained.end()) {
      backlog = std::move(it->second);
      impl_->retained.erase(it);
    }
    impl_->subs[topic].push_back(sub);
    if (impl_->down) sub->mark_down();
  }
  for (auto& m : backlog) sub->push(std::move(m));
  return sub;
}

void SocketTransport::close_send() {
  ::shutdown(impl_->fd, SHUT_WR);
}

int SocketTransport::listen_on(std::uint16_t& port) {
  const int fd = ::socket(AF_INET, SOCK_STREAM, 0);
  if (fd < 0) throw Error(Errc::TRANSPORT_DOWN, "socket() failed");
  const int one = 1;
  ::setsockopt(fd, SOL_SOCKET, SO_REUSEADDR, &one, sizeof(one));
  sockaddr_in addr{};
  addr.sin_family = AF_INET;
  addr.sin_addr.s_addr = htonl(INADDR_LOOPBACK);
  addr.sin_port = htons(port);
  if (::bind(fd, reinterpret_cast<sockaddr*>(&addr), sizeof(addr)) != 0) {
    ::close(fd);
    throw Error(Errc::TRANSPORT_DOWN, "bind() failed");
  }
  socklen_t len = sizeof(addr);
  ::getsockname(fd, reinterpret_cast<sockaddr*>(&addr), &len);
  port = ntohs(addr.sin_port);
  if (::listen(fd, 1) != 0) {
    ::close(fd);
    throw Error(Errc::TRANSPORT_DOWN, "listen() failed");
  }
  return fd;
}

std::unique_ptr<SocketTransport> SocketTransport::accept_peer(int listen_fd) {
  const int fd = ::accept(listen_fd, nullptr, nullptr);
  if (fd < 0) throw Error(Errc::TRANSPORT_DOWN, "accept() failed");
  return std::unique_ptr<SocketTransport>(new SocketTransport(fd));
}

std::unique_ptr<SocketTransport> SocketTransport::connect_to(const std::string& host,
                                                             std::uint16_t port) {
  const int fd = ::socket(AF_INET, SOCK_STREAM, 0);
  if (fd < 0) throw Error(Errc::TRANSPORT_DOWN, "socket() failed");
  sockaddr_in addr{};
  addr.sin_family = AF_INET;
  addr.sin_port = htons(port);
  if (::inet_pton(AF_INET, host.c_str(), &addr.sin_addr) != 1) {
    ::close(fd);
    throw Error(Errc::TRANSPORT_DOWN, "bad address " + host);
  }
  if (::connect(fd, reinterpret_cast<sockaddr*>(&addr), sizeof(addr)) != 0) {
    ::close(fd);
    throw Error(Errc::TRANSPORT_DOWN, "connect() to " + host + " failed");
  }
  return std::unique_ptr<SocketTransport>(new SocketTransport(fd));
}

}  // namespace heteroedge::runtime

// Copyright 2026 The Tunnelmail Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef TUNNELMAIL_ENGINE_STATE_SYNC_HPP_
#define TUNNELMAIL_ENGINE_STATE_SYNC_HPP_

#include <chrono>
#include <condition_variable>
#include <deque>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

namespace tunnelmail::engine {

/// Unbounded FIFO safe for any number of producers and consumers.
template <typename T>
class ConcurrentQueue {
 public:
  void push(T item) {
    {
      std::lock_guard<std::mutex> lock(mu_);
      items_.push_back(std::move(item));
    }
    cv_.notify_all();
  }

  std::optional<T> try_pop() {
    std::lock_guard<std::mutex> lock(mu_);
    if (items_.empty()) return std::nullopt;
    T item = std::move(items_.front());
    items_.pop_front();
    return item;
  }

  /// Removes and returns everything queued, oldest first.
  std::vector<T> drain() {
    std::lock_guard<std::mutex> lock(mu_);
    std::vector<T> out(std::make_move_iterator(items_.begin()), std::make_move_iterator(items_.end()));
    items_.clear();
    return out;
  }

  std::size_t size() const {
    std::lock_guard<std::mutex> lock(mu_);
    return items_.size();
  }

  bool empty() const { return size() == 0; }

  /// Blocks until the queue is non-empty or `timeout` elapses.
  bool wait_nonempty(std::chrono::nanoseconds timeout) const {
    std::unique_lock<std::mutex> lock(mu_);
    return cv_.wait_for(lock, timeout, [&] { return !items_.empty(); });
  }

  /// Wakes every waiter without queuing anything.
  void notify() const { cv_.notify_all(); }

 private:
  mutable std::mutex mu_;
  mutable std::condition_variable cv_;
  std::deque<T> items_;
};

/// Inter-agent message carried on the inbox and outbox queues. Shipped plans
/// never produce or consume them; the queues are drained every cycle.
struct AgentMessage {
  std::string payload;
  friend bool operator==(const AgentMessage&, const AgentMessage&) = default;
};

/// The four queues decoupling the reasoning cycle from bus traffic.
struct StateSync {
  ConcurrentQueue<std::string> perceptions;
  ConcurrentQueue<AgentMessage> inbox;
  ConcurrentQueue<std::string> actions;
  ConcurrentQueue<AgentMessage> outbox;
};

}  // namespace tunnelmail::engine

#endif  // TUNNELMAIL_ENGINE_STATE_SYNC_HPP_

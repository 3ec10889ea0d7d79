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

#ifndef TUNNELMAIL_BUS_BROKER_HPP_
#define TUNNELMAIL_BUS_BROKER_HPP_

#include <chrono>
#include <condition_variable>
#include <cstdint>
#include <deque>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "tunnelmail/bus/clock.hpp"

namespace tunnelmail::bus {

inline constexpr std::size_t kDefaultCapacity = 64;

/// Non-empty `/`-separated segments of `[a-z_][a-z0-9_]*`.
bool is_valid_topic(std::string_view name);

class InvalidTopic : public std::invalid_argument {
 public:
  explicit InvalidTopic(const std::string& name);
};

struct BusMessage {
  std::string topic;
  std::string payload;
  std::uint64_t seq = 0;
  std::int64_t ts = 0;

  friend bool operator==(const BusMessage&, const BusMessage&) = default;
};

/// Bounded receive queue for one topic. On overflow the oldest message is
/// evicted and overflow_count() increments.
class Subscription {
 public:
  Subscription(std::string topic, std::size_t capacity);

  const std::string& topic() const { return topic_; }
  std::size_t capacity() const { return capacity_; }

  std::optional<BusMessage> try_pop();
  std::vector<BusMessage> drain();
  std::optional<BusMessage> wait_pop(std::chrono::nanoseconds timeout);
  std::size_t size() const;
  std::uint64_t overflow_count() const;

  /// Called (without internal locks held) after each delivery.
  void set_notifier(std::function<void()> notifier);

  /// Broker side: enqueue one message.
  void deliver(const BusMessage& message);

 private:
  const std::string topic_;
  const std::size_t capacity_;
  mutable std::mutex mu_;
  std::condition_variable cv_;
  std::deque<BusMessage> queue_;
  std::uint64_t overflow_ = 0;
  std::function<void()> notifier_;
};

/// In-process topic broker. Publishing is serialised so every subscriber of
/// a topic sees one total order; sequence numbers start at 1 per topic.
class Broker {
 public:
  using Tap = std::function<void(const BusMessage&)>;

  explicit Broker(std::shared_ptr<const Clock> clock = std::make_shared<SteadyClock>());

  std::uint64_t publish(const std::string& topic, std::string payload);

  std::shared_ptr<Subscription> subscribe(const std::string& topic,
                                          std::size_t capacity = kDefaultCapacity);
  void unsubscribe(const std::shared_ptr<Subscription>& subscription);

  /// Observers see every publish on every topic in global order; used by the
  /// recorder. Taps run under the broker lock and must not publish.
  int add_tap(Tap tap);
  void remove_tap(int id);

  std::size_t subscriber_count(const std::string& topic) const;
  const Clock& clock() const { return *clock_; }

 private:
  std::shared_ptr<const Clock> clock_;
  mutable std::mutex mu_;
  std::map<std::string, std::uint64_t> seq_;
  std::map<std::string, std::vector<std::weak_ptr<Subscription>>> subs_;
  std::map<int, Tap> taps_;
  int next_tap_ = 1;
};

}  // namespace tunnelmail::bus

#endif  // TUNNELMAIL_BUS_BROKER_HPP_

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

#include "tunnelmail/bus/broker.hpp"

#include <algorithm>

namespace tunnelmail::bus {
namespace {

bool valid_segment(std::string_view seg) {
  if (seg.empty()) return false;
  const char c0 = seg.front();
  if (!((c0 >= 'a' && c0 <= 'z') || c0 == '_')) return false;
  return std::all_of(seg.begin(), seg.end(), [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_';
  });
}

}  // namespace

bool is_valid_topic(std::string_view name) {
  if (name.empty()) return false;
  std::size_t start = 0;
  while (true) {
    const std::size_t slash = name.find('/', start);
    const std::string_view seg =
        name.substr(start, slash == std::string_view::npos ? std::string_view::npos : slash - start);
    if (!valid_segment(seg)) return false;
    if (slash == std::string_view::npos) return true;
    start = slash + 1;
  }
}

InvalidTopic::InvalidTopic(const std::string& name)
    : std::invalid_argument("invalid topic name '" + name + "'") {}

Subscription::Subscription(std::string topic, std::size_t capacity)
    : topic_(std::move(topic)), capacity_(capacity) {
  if (capacity_ == 0) throw std::invalid_argument("subscription capacity must be at least 1");
}

std::optional<BusMessage> Subscription::try_pop() {
  std::lock_guard<std::mutex> lock(mu_);
  if (queue_.empty()) return std::nullopt;
  BusMessage m = std::move(queue_.front());
  queue_.pop_front();
  return m;
}

std::vector<BusMessage> Subscription::drain() {
  std::lock_guard<std::mutex> lock(mu_);
  std::vector<BusMessage> out(std::make_move_iterator(queue_.begin()),
                              std::make_move_iterator(queue_.end()));
  queue_.clear();
  return out;
}

std::optional<BusMessage> Subscription::wait_pop(std::chrono::nanoseconds timeout) {
  std::unique_lock<std::mutex> lock(mu_);
  if (!cv_.wait_for(lock, timeout, [&] { return !queue_.empty(); })) return std::nullopt;
  BusMessage m = std::move(queue_.front());
  queue_.pop_front();
  return m;
}

std::size_t Subscription::size() const {
  std::lock_guard<std::mutex> lock(mu_);
  return queue_.size();
}

std::uint64_t Subscription::overflow_count() const {
  std::lock_guard<std::mutex> lock(mu_);
  return overflow_;
}

void Subscription::set_notifier(std::function<void()> notifier) {
  std::lock_guard<std::mutex> lock(mu_);
  notifier_ = std::move(notifier);
}

void Subscription::deliver(const BusMessage& message) {
  std::function<void()> notify;
  {
    std::lock_guard<std::mutex> lock(mu_);
    if (queue_.size() >= capacity_) {
      queue_.pop_front();
      ++overflow_;
    }
    queue_.push_back(message);
    notify = notifier_;
  }
  cv_.notify_all();
  if (notify) notify();
}

Broker::Broker(std::shared_ptr<const Clock> clock) : clock_(std::move(clock)) {}

std::uint64_t Broker::publish(const std::string& topic, std::string payload) {
  if (!is_valid_topic(topic)) throw InvalidTopic(topic);
  std::lock_guard<std::mutex> lock(mu_);
  BusMessage m{topic, std::move(payload), ++seq_[topic], clock_->now_ns()};
  for (const auto& [id, tap] : taps_) tap(m);
  auto it = subs_.find(topic);
  if (it != subs_.end()) {
    auto& list = it->second;
    list.erase(std::remove_if(list.begin(), list.end(), [](const auto& w) { return w.expired(); }),
               list.end());
    for (const auto& w : list) {
      if (auto s = w.lock()) s->deliver(m);
    }
  }
  return m.seq;
}

std::shared_ptr<Subscription> Broker::subscribe(const std::string& topic, std::size_t capacity) {
  if (!is_valid_topic(topic)) throw InvalidTopic(topic);
  auto sub = std::make_shared<Subscription>(topic, capacity);
  std::lock_guard<std::mutex> lock(mu_);
  subs_[topic].push_back(sub);
  return sub;
}

void Broker::unsubscribe(const std::shared_ptr<Subscription>& subscription) {
  if (!subscription) return;
  std::lock_guard<std::mutex> lock(mu_);
  auto it = subs_.find(subscription->topic());
  if (it == subs_.end()) return;
  auto& list = it->second;
  list.erase(std::remove_if(list.begin(), list.end(),
                            [&](const auto& w) {
                              auto s = w.lock();
                              return !s || s == subscription;
                            }),
             list.end());
}

int Broker::add_tap(Tap tap) {
  std::lock_guard<std::mutex> lock(mu_);
  const int id = next_tap_++;
  taps_.emplace(id, std::move(tap));
  return id;
}

void Broker::remove_tap(int id) {
  std::lock_guard<std::mutex> lock(mu_);
  taps_.erase(id);
}

std::size_t Broker::subscriber_count(const std::string& topic) const {
  std::lock_guard<std::mutex> lock(mu_);
  auto it = subs_.find(topic);
  if (it == subs_.end()) return 0;
  return std::count_if(it->second.begin(), it->second.end(), [](const auto& w) { return !w.expired(); });
}

}  // namespace tunnelmail::bus

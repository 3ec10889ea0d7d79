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

#ifndef TUNNELMAIL_BUS_CLOCK_HPP_
#define TUNNELMAIL_BUS_CLOCK_HPP_

#include <atomic>
#include <chrono>
#include <cstdint>

namespace tunnelmail::bus {

/// Monotonic nanosecond time source shared by the bus and the simulation.
class Clock {
 public:
  virtual ~Clock() = default;
  virtual std::int64_t now_ns() const = 0;
};

class SteadyClock : public Clock {
 public:
  std::int64_t now_ns() const override {
    return std::chrono::duration_cast<std::chrono::nanoseconds>(
               std::chrono::steady_clock::now().time_since_epoch())
        .count();
  }
};

/// Manually advanced clock for deterministic runs.
class VirtualClock : public Clock {
 public:
  std::int64_t now_ns() const override { return now_.load(std::memory_order_acquire); }
  void set_ns(std::int64_t t) { now_.store(t, std::memory_order_release); }
  void advance_ns(std::int64_t dt) { now_.fetch_add(dt, std::memory_order_acq_rel); }

 private:
  std::atomic<std::int64_t> now_{0};
};

}  // namespace tunnelmail::bus

#endif  // TUNNELMAIL_BUS_CLOCK_HPP_

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

#ifndef TUNNELMAIL_RUNNER_RECORD_HPP_
#define TUNNELMAIL_RUNNER_RECORD_HPP_

#include <cstdint>
#include <functional>
#include <mutex>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "tunnelmail/bus/broker.hpp"

namespace tunnelmail::runner {

/// Record header topic; its payload is a JSON session description.
inline constexpr const char* kSessionTopic = "meta/session";

struct RecordEntry {
  std::string topic;
  std::uint64_t seq = 0;
  std::int64_t ts = 0;
  std::string payload;

  /// One JSON line without the trailing newline, keys in the order
  /// topic, seq, ts, payload.
  std::string to_line() const;
  friend bool operator==(const RecordEntry&, const RecordEntry&) = default;
};

class RecordError : public std::runtime_error {
 public:
  RecordError(std::size_t line, const std::string& message);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Parses one record line; `line_number` is reported in errors.
RecordEntry parse_record_line(std::string_view line, std::size_t line_number);
/// Reads a whole record, skipping blank lines. Throws RecordError.
std::vector<RecordEntry> read_record(const std::string& path);
void write_record(const std::string& path, const std::vector<RecordEntry>& entries);

/// True for the topics a session records: `perceptions`, `actions` and
/// `cmd/*`.
bool is_recorded_topic(std::string_view topic);

/// Collects every recorded-topic publish through a broker tap.
class Recorder {
 public:
  explicit Recorder(bus::Broker& broker, std::function<bool(std::string_view)> filter = is_recorded_topic);
  ~Recorder();
  Recorder(const Recorder&) = delete;
  Recorder& operator=(const Recorder&) = delete;

  /// Adds an entry that did not travel over the bus (the session header).
  void add(RecordEntry entry);
  std::vector<RecordEntry> entries() const;

 private:
  bus::Broker& broker_;
  std::function<bool(std::string_view)> filter_;
  int tap_ = 0;
  mutable std::mutex mu_;
  std::vector<RecordEntry> entries_;
};

}  // namespace tunnelmail::runner

#endif  // TUNNELMAIL_RUNNER_RECORD_HPP_

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

#include "tunnelmail/runner/record.hpp"

#include <fstream>

#include <nlohmann/json.hpp>

namespace tunnelmail::runner {

std::string RecordEntry::to_line() const {
  nlohmann::ordered_json j;
  j["topic"] = topic;
  j["seq"] = seq;
  j["ts"] = ts;
  j["payload"] = payload;
  return j.dump();
}

RecordError::RecordError(std::size_t line, const std::string& message)
    : std::runtime_error("record line " + std::to_string(line) + ": " + message), line_(line) {}

RecordEntry parse_record_line(std::string_view line, std::size_t line_number) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(line);
  } catch (const nlohmann::json::exception& e) {
    throw RecordError(line_number, std::string("malformed json: ") + e.what());
  }
  try {
    if (!j.is_object()) throw RecordError(line_number, "record line is not an object");
    if (!j.at("seq").is_number_unsigned() || !j.at("ts").is_number_integer()) {
      throw RecordError(line_number, "seq and ts must be integers, seq non-negative");
    }
    RecordEntry e;
    e.topic = j.at("topic").get<std::string>();
    e.seq = j.at("seq").get<std::uint64_t>();
    e.ts = j.at("ts").get<std::int64_t>();
    e.payload = j.at("payload").get<std::string>();
    if (!bus::is_valid_topic(e.topic)) throw RecordError(line_number, "invalid topic '" + e.topic + "'");
    return e;
  } catch (const nlohmann::json::exception& e) {
    throw RecordError(line_number, std::string("missing or mistyped field: ") + e.what());
  }
}

std::vector<RecordEntry> read_record(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw RecordError(0, "cannot open '" + path + "'");
  std::vector<RecordEntry> out;
  std::string line;
  for (std::size_t n = 1; std::getline(in, line); ++n) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    out.push_back(parse_record_line(line, n));
  }
  return out;
}

void write_record(const std::string& path, const std::vector<RecordEntry>& entries) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write record '" + path + "'");
  for (const RecordEntry& e : entries) out << e.to_line() << '\n';
}

bool is_recorded_topic(std::string_view topic) {
  return topic == "perceptions" || topic == "actions" || topic.substr(0, 4) == "cmd/";
}

Recorder::Recorder(bus::Broker& broker, std::function<bool(std::string_view)> filter)
    : broker_(broker), filter_(std::move(filter)) {
  tap_ = broker_.add_tap([this](const bus::BusMessage& m) {
    if (!filter_(m.topic)) return;
    std::lock_guard<std::mutex> lock(mu_);
    entries_.push_back({m.topic, m.seq, m.ts, m.payload});
  });
}

Recorder::~Recorder() { broker_.remove_tap(tap_); }

void Recorder::add(RecordEntry entry) {
  std::lock_guard<std::mutex> lock(mu_);
  entries_.push_back(std::move(entry));
}

std::vector<RecordEntry> Recorder::entries() const {
  std::lock_guard<std::mutex> lock(mu_);
  return entries_;
}

}  // namespace tunnelmail::runner

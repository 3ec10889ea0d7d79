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

#include "tunnelmail/runner/period_stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace tunnelmail::runner {

PeriodStats compute_period_stats(const std::vector<RecordEntry>& record) {
  std::map<std::string, std::vector<std::int64_t>> stamps;
  for (const RecordEntry& e : record) {
    if (e.topic != kSessionTopic) stamps[e.topic].push_back(e.ts);
  }
  PeriodStats stats;
  for (const auto& [topic, ts] : stamps) {
    if (ts.size() < 2) {
      stats.notes.push_back(topic + ": fewer than 2 messages, omitted");
      continue;
    }
    TopicPeriods t;
    t.message_count = ts.size();
    for (std::size_t i = 1; i < ts.size(); ++i) {
      const std::int64_t gap_ns = ts[i] - ts[i - 1];
      t.periods.push_back(static_cast<double>(gap_ns) * 1e-9);
      ++t.histogram[gap_ns / 1000000];
    }
    t.mean = std::accumulate(t.periods.begin(), t.periods.end(), 0.0) / static_cast<double>(t.periods.size());
    std::vector<double> sorted = t.periods;
    std::sort(sorted.begin(), sorted.end());
    const std::size_t n = sorted.size();
    t.median = n % 2 ? sorted[n / 2] : (sorted[n / 2 - 1] + sorted[n / 2]) / 2.0;
    std::vector<std::pair<std::int64_t, std::size_t>> bins(t.histogram.begin(), t.histogram.end());
    std::stable_sort(bins.begin(), bins.end(), [](const auto& a, const auto& b) { return a.second > b.second; });
    for (std::size_t i = 0; i < std::min<std::size_t>(2, bins.size()); ++i) {
      t.modes.push_back({static_cast<double>(bins[i].first) * 1e-3, bins[i].second});
    }
    stats.topics.emplace(topic, std::move(t));
  }
  return stats;
}

nlohmann::json PeriodStats::to_json() const {
  nlohmann::json j;
  j["topics"] = nlohmann::json::object();
  for (const auto& [topic, t] : topics) {
    nlohmann::json hist = nlohmann::json::object();
    for (const auto& [bin, count] : t.histogram) hist[std::to_string(bin)] = count;
    nlohmann::json modes = nlohmann::json::array();
    for (const PeriodMode& m : t.modes) modes.push_back({{"period", m.period}, {"count", m.count}});
    j["topics"][topic] = {{"messages", t.message_count},
                          {"periods", t.periods.size()},
                          {"mean", t.mean},
                          {"median", t.median},
                          {"histogram_ms", hist},
                          {"modes", modes}};
  }
  j["notes"] = notes;
  return j;
}

}  // namespace tunnelmail::runner

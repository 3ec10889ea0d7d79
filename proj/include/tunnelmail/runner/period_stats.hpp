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

#ifndef TUNNELMAIL_RUNNER_PERIOD_STATS_HPP_
#define TUNNELMAIL_RUNNER_PERIOD_STATS_HPP_

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "tunnelmail/runner/record.hpp"

namespace tunnelmail::runner {

struct PeriodMode {
  /// Lower edge of the 1 ms bin, in seconds.
  double period = 0.0;
  std::size_t count = 0;
};

struct TopicPeriods {
  std::size_t message_count = 0;
  /// Gaps between consecutive messages, in seconds.
  std::vector<double> periods;
  double mean = 0.0;
  double median = 0.0;
  /// Bin index (period in whole milliseconds) to count.
  std::map<std::int64_t, std::size_t> histogram;
  /// The two most populated bins, most populated first; ties go to the
  /// shorter period.
  std::vector<PeriodMode> modes;
};

struct PeriodStats {
  std::map<std::string, TopicPeriods> topics;
  /// One note per topic left out for having fewer than two messages.
  std::vector<std::string> notes;

  nlohmann::json to_json() const;
};

/// Per-topic inter-message periods of a time-ordered record. The session
/// header topic is ignored.
PeriodStats compute_period_stats(const std::vector<RecordEntry>& record);

}  // namespace tunnelmail::runner

#endif  // TUNNELMAIL_RUNNER_PERIOD_STATS_HPP_

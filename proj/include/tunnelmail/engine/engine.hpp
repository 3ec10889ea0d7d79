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

#ifndef TUNNELMAIL_ENGINE_ENGINE_HPP_
#define TUNNELMAIL_ENGINE_ENGINE_HPP_

#include <atomic>
#include <cstdint>
#include <deque>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>
#include <spdlog/logger.h>

#include "tunnelmail/asl/program.hpp"
#include "tunnelmail/asl/solve.hpp"
#include "tunnelmail/engine/belief_base.hpp"
#include "tunnelmail/engine/state_sync.hpp"

namespace tunnelmail::engine {

enum class EventOrigin { kPerception, kPlanBody, kInitial };

std::string_view origin_name(EventOrigin origin);

struct Event {
  asl::Trigger trigger;
  EventOrigin origin = EventOrigin::kInitial;
  /// Set for achievement goals posted by a running intention; the selected
  /// plan is pushed onto that intention instead of starting a new one.
  bool subgoal = false;

  std::string to_string() const { return trigger.to_string(); }
};

struct EngineConfig {
  std::size_t stack_bound = 64;
  int depth_limit = 256;
  /// When set, actions it rejects fail their frame instead of being emitted.
  std::function<bool(const asl::Term&)> action_repertoire;
  /// Cycle timestamp source in nanoseconds; defaults to the steady clock.
  std::function<std::int64_t()> clock;
};

struct CycleReport {
  std::uint64_t cycle_index = 0;
  std::size_t percepts_consumed = 0;
  /// Perception queue length observed at cycle start, before draining.
  std::size_t perception_queue_depth = 0;
  std::optional<Event> event_selected;
  /// Index into Program::plans of the plan chosen for event_selected.
  std::optional<std::size_t> plan_selected;
  std::vector<std::string> actions_emitted;
  std::int64_t timestamp_ns = 0;

  nlohmann::json to_json() const;
};

struct RunReport {
  std::uint64_t cycles = 0;
  std::size_t unfinished_intentions = 0;
};

struct PlanChoice {
  std::size_t plan_index = 0;
  asl::Substitution substitution;
};

/// First plan in program order whose trigger unifies with `trigger` and whose
/// context (renamed to `scope`) has a solution; substitution is that of the
/// first context solution. Plans whose context raises a solver error are
/// skipped and reported through `on_error`.
std::optional<PlanChoice> select_plan(
    const asl::Trigger& trigger, const std::vector<asl::Plan>& plans, const asl::FactSource& facts,
    const asl::RuleBase& rules, std::uint32_t scope, const asl::SolveOptions& options = {},
    const std::function<void(std::size_t, const std::exception&)>& on_error = {});

/// Single-intention AgentSpeak interpreter driven one cycle at a time.
class Engine {
 public:
  Engine(asl::Program program, StateSync& sync, EngineConfig config = {});

  /// Queues an achievement-goal event of initial origin.
  void post_goal(const asl::Term& goal);

  /// One reasoning cycle: drain perceptions and inbox, revise beliefs, select
  /// one event and plan, then execute at most one body step.
  CycleReport step();

  /// Steps until `budget` cycles ran or `stop` is set, sleeping on the
  /// perception queue when there is nothing to do.
  RunReport run(std::uint64_t budget, const std::atomic<bool>* stop = nullptr);

  const asl::Program& program() const { return program_; }
  const BeliefBase& beliefs() const { return beliefs_; }
  const std::deque<Event>& events() const { return events_; }
  /// Active intention plus queued ones.
  std::size_t unfinished_intentions() const;
  /// Frames on the active intention's stack (0 when idle).
  std::size_t active_depth() const;
  /// True when no step can run until new input arrives.
  bool quiescent() const;
  std::uint64_t cycle_count() const { return cycle_; }

 private:
  struct Frame {
    std::size_t plan_index = 0;
    asl::Substitution substitution;
    std::uint32_t scope = 0;
    std::size_t next_step = 0;
  };
  enum class IntentionState { kReady, kAwaitingSubgoal, kAwaitingPercept };
  struct Intention {
    std::vector<Frame> stack;
    IntentionState state = IntentionState::kReady;
  };

  void consume_percepts(CycleReport& report);
  void handle_event(const Event& event, CycleReport& report);
  void execute_step(CycleReport& report);
  void fail_frame(const std::string& why);
  void pop_finished_frames();
  bool push_frame(Intention& intention, Frame frame);
  void emit_belief_changes(const std::vector<BeliefChange>& changes, EventOrigin origin);
  std::uint32_t next_scope();
  std::int64_t now() const;

  asl::Program program_;
  asl::RuleBase rules_;
  StateSync& sync_;
  EngineConfig config_;
  asl::SolveOptions solve_options_;
  BeliefBase beliefs_;
  std::deque<Event> events_;
  std::optional<Intention> active_;
  std::deque<Intention> queued_;
  std::uint64_t cycle_ = 0;
  std::uint32_t scope_counter_ = 0;
  std::shared_ptr<spdlog::logger> log_;
};

}  // namespace tunnelmail::engine

#endif  // TUNNELMAIL_ENGINE_ENGINE_HPP_

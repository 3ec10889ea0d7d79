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

#include "tunnelmail/engine/engine.hpp"

#include <chrono>
#include <stdexcept>

#include "tunnelmail/asl/parser.hpp"
#include "tunnelmail/common/log.hpp"

namespace tunnelmail::engine {
namespace {

// Plan instances use scopes below the solver's rename range.
constexpr std::uint32_t kMaxPlanScope = 0x7fffffffu;

bool trigger_matches(const asl::Trigger& plan, const asl::Trigger& event) {
  return plan.op == event.op && plan.kind == event.kind;
}

}  // namespace

std::string_view origin_name(EventOrigin origin) {
  switch (origin) {
    case EventOrigin::kPerception: return "perception";
    case EventOrigin::kPlanBody: return "plan-body";
    case EventOrigin::kInitial: return "initial";
  }
  return "?";
}

nlohmann::json CycleReport::to_json() const {
  nlohmann::json j;
  j["cycle"] = cycle_index;
  j["ts"] = timestamp_ns;
  j["percepts"] = percepts_consumed;
  j["queue_depth"] = perception_queue_depth;
  if (event_selected) {
    j["event"] = event_selected->to_string();
    j["origin"] = origin_name(event_selected->origin);
  } else {
    j["event"] = nullptr;
  }
  j["plan"] = plan_selected ? nlohmann::json(*plan_selected) : nlohmann::json(nullptr);
  j["actions"] = actions_emitted;
  return j;
}

std::optional<PlanChoice> select_plan(
    const asl::Trigger& trigger, const std::vector<asl::Plan>& plans, const asl::FactSource& facts,
    const asl::RuleBase& rules, std::uint32_t scope, const asl::SolveOptions& options,
    const std::function<void(std::size_t, const std::exception&)>& on_error) {
  for (std::size_t i = 0; i < plans.size(); ++i) {
    const asl::Plan& plan = plans[i];
    if (!trigger_matches(plan.trigger, trigger)) continue;
    const auto head = asl::unify(plan.trigger.literal.with_scope(scope), trigger.literal);
    if (!head) continue;
    try {
      const auto ctx = asl::solve_first(plan.context.with_scope(scope), facts, rules, *head, options);
      if (ctx) return PlanChoice{i, *ctx};
    } catch (const std::exception& e) {
      if (on_error) on_error(i, e);
    }
  }
  return std::nullopt;
}

Engine::Engine(asl::Program program, StateSync& sync, EngineConfig config)
    : program_(std::move(program)),
      rules_(program_.rules),
      sync_(sync),
      config_(std::move(config)),
      log_(get_logger("engine")) {
  solve_options_.depth_limit = config_.depth_limit;
  std::vector<BeliefChange> initial;
  for (const asl::Term& b : program_.beliefs) {
    if (beliefs_.add_mental(b)) initial.push_back({asl::TriggerOp::kAdd, b});
  }
  emit_belief_changes(initial, EventOrigin::kInitial);
}

void Engine::post_goal(const asl::Term& goal) {
  events_.push_back(Event{asl::Trigger{asl::TriggerOp::kAdd, asl::TriggerKind::kAchieve, goal},
                          EventOrigin::kInitial, false});
}

std::int64_t Engine::now() const {
  if (config_.clock) return config_.clock();
  return std::chrono::duration_cast<std::chrono::nanoseconds>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

std::uint32_t Engine::next_scope() {
  scope_counter_ = scope_counter_ >= kMaxPlanScope ? 1 : scope_counter_ + 1;
  return scope_counter_;
}

CycleReport Engine::step() {
  CycleReport report;
  report.cycle_index = cycle_++;
  report.timestamp_ns = now();
  report.perception_queue_depth = sync_.perceptions.size();
  consume_percepts(report);
  for (const AgentMessage& m : sync_.inbox.drain()) {
    log_->debug("inbox message ignored: {}", m.payload);
  }
  if (!events_.empty()) {
    Event ev = std::move(events_.front());
    events_.pop_front();
    handle_event(ev, report);
    report.event_selected = std::move(ev);
  }
  if (!active_ && !queued_.empty()) {
    active_ = std::move(queued_.front());
    queued_.pop_front();
  }
  if (active_ && active_->state == IntentionState::kReady) execute_step(report);
  return report;
}

void Engine::consume_percepts(CycleReport& report) {
  const std::vector<std::string> batch = sync_.perceptions.drain();
  report.percepts_consumed = batch.size();
  if (batch.empty()) return;
  if (active_ && active_->state == IntentionState::kAwaitingPercept) {
    active_->state = IntentionState::kReady;
  }
  for (const std::string& payload : batch) {
    asl::Term literal;
    try {
      literal = asl::parse_literal(payload);
    } catch (const asl::ParseError& e) {
      log_->warn("percept '{}' rejected: {}", payload, e.what());
      continue;
    }
    emit_belief_changes(beliefs_.revise({literal}), EventOrigin::kPerception);
  }
}

void Engine::emit_belief_changes(const std::vector<BeliefChange>& changes, EventOrigin origin) {
  for (const BeliefChange& c : changes) {
    events_.push_back(Event{asl::Trigger{c.op, asl::TriggerKind::kBelief, c.literal}, origin, false});
  }
}

void Engine::handle_event(const Event& event, CycleReport& report) {
  const std::uint32_t scope = next_scope();
  const auto choice = select_plan(event.trigger, program_.plans, beliefs_, rules_, scope, solve_options_,
                                  [&](std::size_t plan, const std::exception& e) {
                                    log_->error("context of plan {} (line {}) failed: {}", plan,
                                                program_.plans[plan].source_line, e.what());
                                  });
  if (choice) report.plan_selected = choice->plan_index;
  Frame frame;
  if (choice) frame = Frame{choice->plan_index, choice->substitution, scope, 0};

  if (event.subgoal) {
    if (!active_) return;
    active_->state = IntentionState::kReady;
    if (!choice) {
      log_->warn("no applicable plan for subgoal {}; continuing with the parent", event.to_string());
      pop_finished_frames();
      return;
    }
    if (!push_frame(*active_, std::move(frame))) active_.reset();
    return;
  }
  if (!choice) {
    if (event.trigger.kind == asl::TriggerKind::kBelief) {
      log_->debug("no plan for {}; dropped", event.to_string());
    } else {
      log_->warn("no applicable plan for {}; dropped", event.to_string());
    }
    return;
  }
  Intention intention;
  intention.stack.push_back(std::move(frame));
  if (active_) {
    queued_.push_back(std::move(intention));
  } else {
    active_ = std::move(intention);
  }
}

bool Engine::push_frame(Intention& intention, Frame frame) {
  if (intention.stack.size() >= config_.stack_bound) {
    log_->error("intention stack exceeded {} frames; intention dropped", config_.stack_bound);
    return false;
  }
  intention.stack.push_back(std::move(frame));
  return true;
}

void Engine::pop_finished_frames() {
  if (!active_) return;
  auto& stack = active_->stack;
  while (!stack.empty() &&
         stack.back().next_step >= program_.plans[stack.back().plan_index].body.size()) {
    stack.pop_back();
  }
  if (stack.empty() && active_->state != IntentionState::kAwaitingSubgoal) active_.reset();
}

void Engine::fail_frame(const std::string& why) {
  log_->debug("{}; frame abandoned", why);
  active_->stack.pop_back();
  active_->state = IntentionState::kReady;
  pop_finished_frames();
}

void Engine::execute_step(CycleReport& report) {
  Frame& frame = active_->stack.back();
  const asl::Plan& plan = program_.plans[frame.plan_index];
  const asl::BodyStep& step = plan.body[frame.next_step++];
  const bool last = frame.next_step == plan.body.size();
  const asl::Term literal = frame.substitution.apply(step.literal.with_scope(frame.scope));

  switch (step.kind) {
    case asl::BodyStep::Kind::kAction: {
      if (!literal.is_ground()) return fail_frame("action " + literal.to_string() + " is not ground");
      if (config_.action_repertoire && !config_.action_repertoire(literal)) {
        return fail_frame("action " + literal.to_string() + " is outside the repertoire");
      }
      const std::string text = literal.to_string();
      sync_.actions.push(text);
      report.actions_emitted.push_back(text);
      active_->state = IntentionState::kAwaitingPercept;
      break;
    }
    case asl::BodyStep::Kind::kAddBelief:
      if (!literal.is_ground()) return fail_frame("belief " + literal.to_string() + " is not ground");
      if (beliefs_.add_mental(literal)) {
        emit_belief_changes({{asl::TriggerOp::kAdd, literal}}, EventOrigin::kPlanBody);
      }
      break;
    case asl::BodyStep::Kind::kDelBelief: {
      std::vector<BeliefChange> changes;
      for (asl::Term& removed : beliefs_.remove_mental(literal)) {
        changes.push_back({asl::TriggerOp::kDelete, std::move(removed)});
      }
      emit_belief_changes(changes, EventOrigin::kPlanBody);
      break;
    }
    case asl::BodyStep::Kind::kAchieve:
      events_.push_back(Event{asl::Trigger{asl::TriggerOp::kAdd, asl::TriggerKind::kAchieve, literal},
                              EventOrigin::kPlanBody, true});
      if (last) active_->stack.pop_back();
      active_->state = IntentionState::kAwaitingSubgoal;
      break;
    case asl::BodyStep::Kind::kTest: {
      std::optional<asl::Substitution> solution;
      try {
        solution = asl::solve_first(asl::Formula({asl::Literal{false, literal}}), beliefs_, rules_,
                                    frame.substitution, solve_options_);
      } catch (const std::exception& e) {
        return fail_frame("test goal ?" + literal.to_string() + " raised: " + e.what());
      }
      if (!solution) return fail_frame("test goal ?" + literal.to_string() + " failed");
      frame.substitution = std::move(*solution);
      break;
    }
  }
  pop_finished_frames();
}

std::size_t Engine::unfinished_intentions() const { return (active_ ? 1 : 0) + queued_.size(); }

std::size_t Engine::active_depth() const { return active_ ? active_->stack.size() : 0; }

bool Engine::quiescent() const {
  if (!events_.empty() || !sync_.perceptions.empty() || !sync_.inbox.empty()) return false;
  if (!active_) return queued_.empty();
  return active_->state != IntentionState::kReady;
}

RunReport Engine::run(std::uint64_t budget, const std::atomic<bool>* stop) {
  RunReport out;
  while (out.cycles < budget && !(stop && stop->load())) {
    step();
    ++out.cycles;
    if (quiescent()) sync_.perceptions.wait_nonempty(std::chrono::milliseconds(1));
  }
  out.unfinished_intentions = unfinished_intentions();
  return out;
}

}  // namespace tunnelmail::engine

/*
 * Copyright 2026 The tutharness Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "tut/runtime.hpp"

#include <chrono>
#include <ctime>
#include <deque>

#include <fmt/format.h>

namespace tut {

CommonMemory::CommonMemory(std::vector<CmSlot> slots) : slots_(std::move(slots)) {}

const CmSlot& CommonMemory::slot_or_throw(std::string_view slot) const {
  for (const auto& s : slots_) {
    if (s.name == slot) return s;
  }
  throw Error(ErrorCode::kUndeclaredSlot, fmt::format("Common Memory slot {} is not declared", slot));
}

CommonMemory& CommonMemory::write(std::string_view slot, Payload payload) {
  const CmSlot& decl = slot_or_throw(slot);
  if (payload.size() > decl.max_len) {
    throw Error(ErrorCode::kCmOverflow, fmt::format("{} bytes written to slot {} (max {})", payload.size(),
                                                    slot, decl.max_len));
  }
  contents_.insert_or_assign(std::string(slot), std::move(payload));
  return *this;
}

std::optional<Payload> CommonMemory::read(std::string_view slot) const {
  slot_or_throw(slot);
  auto it = contents_.find(slot);
  if (it == contents_.end()) return std::nullopt;
  return it->second;
}

CommonMemory cm_write(CommonMemory cm, std::string_view slot, Payload payload) {
  cm.write(slot, std::move(payload));
  return cm;
}

std::optional<Payload> cm_read(const CommonMemory& cm, std::string_view slot) { return cm.read(slot); }

CallbackBehavior::CallbackBehavior(MessageHandler on_message, TimerHandler on_timer, std::uint64_t period_ms)
    : on_message_(std::move(on_message)), on_timer_(std::move(on_timer)), period_ms_(period_ms) {
  if (period_ms_ == 0) throw Error(ErrorCode::kUsage, "timer period must be positive");
}

void CallbackBehavior::on_message(const Message& message, TaskContext& ctx) {
  if (on_message_) on_message_(message, ctx);
}

void CallbackBehavior::on_timer(std::uint64_t tick_ms, TaskContext& ctx) {
  if (on_timer_) on_timer_(tick_ms, ctx);
}

const Stub* Environment::find_stub(std::string_view endpoint) const {
  for (const auto& s : stubs_) {
    if (s.endpoint.name == endpoint) return &s;
  }
  return nullptr;
}

Environment generate_environment(const InterfaceSpec& spec) {
  validate_interface(spec);
  Environment env;
  env.spec_ = spec;
  auto stub_for = [&](std::string_view name) -> Stub& {
    for (auto& s : env.stubs_) {
      if (s.endpoint.name == name) return s;
    }
    env.stubs_.push_back(Stub{Endpoint::named(name), false, false});
    return env.stubs_.back();
  };
  for (const auto& c : spec.inbound) stub_for(c.endpoint).injects = true;
  for (const auto& c : spec.outbound) stub_for(c.endpoint).receives = true;
  if (!spec.cm_slots.empty()) stub_for(kCommonMemoryName).receives = true;
  return env;
}

namespace {

class SimulationRun final : public TaskContext {
 public:
  SimulationRun(const Environment& env, const RunOptions& options)
      : env_(env), options_(options), cm_(env.spec().cm_slots) {}

  Trace run(const Scenario& scenario, TaskBehavior& behavior) {
    for (const auto& inj : scenario.injections) {
      if (!env_.spec().find_inbound(inj.target.name, inj.name)) {
        throw Error(ErrorCode::kUnknownTarget,
                    fmt::format("injection at tick {} targets undeclared inbound channel ({}, {})", inj.tick_ms,
                                inj.target.name, inj.name));
      }
    }
    std::uint64_t period = options_.timer_period_ms.value_or(scenario.effective_period(behavior.timer_period_ms()));
    if (period == 0) throw Error(ErrorCode::kUsage, "timer period must be positive");

    behavior.reset();
    std::size_t next = 0;
    for (now_ = 0; now_ <= scenario.duration_ms; ++now_) {
      activations_ = 0;
      while (next < scenario.injections.size() && scenario.injections[next].tick_ms <= now_) {
        deliver(scenario.injections[next++]);
      }
      if (now_ > 0 && now_ % period == 0) {
        activate();
        behavior.on_timer(now_, *this);
      }
      while (!queue_.empty()) {
        Message m = std::move(queue_.front());
        queue_.pop_front();
        activate();
        behavior.on_message(m, *this);
      }
    }
    Trace trace;
    trace.records = std::move(records_);
    trace.final_cm = std::move(cm_);
    trace.duration_ms = scenario.duration_ms;
    return trace;
  }

  std::uint64_t now_ms() const override { return now_; }

  void send(std::string_view endpoint, std::string_view name, std::string_view type_tag, Payload payload) override {
    if (endpoint == kCommonMemoryName && env_.spec().find_slot(name)) {
      cm_write(name, std::move(payload));
      return;
    }
    const Channel* c = env_.spec().find_outbound(endpoint, name);
    if (!c) {
      throw Error(ErrorCode::kUnknownTarget,
                  fmt::format("tick {}: send to undeclared outbound channel ({}, {})", now_, endpoint, name));
    }
    record(Endpoint::named(endpoint), Direction::kOut, c->name, type_tag.empty() ? c->type_tag : std::string(type_tag),
           std::move(payload), std::nullopt);
  }

  void cm_write(std::string_view slot, Payload payload) override {
    cm_.write(slot, payload);
    auto type = env_.spec().type_of(kCommonMemoryName, Direction::kOut, slot);
    record(Endpoint::named(kCommonMemoryName), Direction::kOut, std::string(slot), type.value_or(std::string(slot)),
           std::move(payload), std::nullopt);
  }

  std::optional<Payload> cm_read(std::string_view slot) const override { return cm_.read(slot); }

  void post_self(Message message) override {
    message.tick_ms = now_;
    message.direction = Direction::kIn;
    queue_.push_back(std::move(message));
  }

 private:
  void activate() {
    if (++activations_ > options_.livelock_cap) {
      throw Error(ErrorCode::kLivelockDetected,
                  fmt::format("more than {} handler activations at tick {}", options_.livelock_cap, now_));
    }
  }

  void deliver(const Injection& inj) {
    Message m;
    m.name = inj.name;
    m.type_tag = inj.type_tag;
    m.payload = inj.payload;
    m.source = inj.target;
    m.direction = Direction::kIn;
    m.tick_ms = now_;
    record(inj.target, Direction::kIn, inj.name, inj.type_tag, inj.payload, RecordStatus::kOk);
    queue_.push_back(std::move(m));
  }

  void record(Endpoint source, Direction direction, std::string name, std::string type_tag, Payload payload,
              std::optional<RecordStatus> status) {
    LogRecord r;
    r.log_cnt = records_.size() + 1;
    r.time = options_.run_stamp;
    r.tick_ms = now_;
    r.source = std::move(source);
    r.direction = direction;
    r.name = std::move(name);
    r.type_tag = std::move(type_tag);
    r.relevance = 0;
    r.tolerance = 0;
    r.actual = std::move(payload);
    r.status = status;
    records_.push_back(std::move(r));
  }

  const Environment& env_;
  const RunOptions& options_;
  CommonMemory cm_;
  std::deque<Message> queue_;
  std::vector<LogRecord> records_;
  std::uint64_t now_ = 0;
  std::size_t activations_ = 0;
};

}  // namespace

Trace run_simulation(const Scenario& scenario, TaskBehavior& behavior, const Environment& env,
                     const RunOptions& options) {
  if (!is_valid_time_stamp(options.run_stamp)) {
    throw Error(ErrorCode::kUsage, fmt::format("run stamp '{}' is not YYYY.MM.DD_HH:MM:SS", options.run_stamp));
  }
  return SimulationRun(env, options).run(scenario, behavior);
}

std::string current_time_stamp() {
  std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  localtime_r(&now, &tm);
  return fmt::format("{:04}.{:02}.{:02}_{:02}:{:02}:{:02}", tm.tm_year + 1900, tm.tm_mon + 1, tm.tm_mday, tm.tm_hour,
                     tm.tm_min, tm.tm_sec);
}

}  // namespace tut

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

#pragma once

// Discrete-time host for a task under test (TUT).
//
// Time advances in 1 ms ticks from 0 to the scenario duration inclusive.
// Each tick runs three phases in a fixed order:
//   1. scenario injections scheduled for the tick are delivered to the TUT
//      inbound queue, in script order;
//   2. the TUT timer handler fires when tick > 0 and tick % period == 0;
//   3. the inbound queue is drained FIFO, one on_message per message.
// Every message the TUT sends and every Common Memory write is recorded at
// the current tick. Injections are recorded as IN records when delivered.

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tut/interface.hpp"
#include "tut/scenario.hpp"
#include "tut/trace.hpp"

namespace tut {

inline constexpr std::size_t kDefaultLivelockCap = 10'000;

/// Slot store shared between the TUT and its readers. Only declared slots
/// can be written, and never with more than their declared length.
class CommonMemory {
 public:
  CommonMemory() = default;
  explicit CommonMemory(std::vector<CmSlot> slots);

  /// Throws Error(kUndeclaredSlot) or Error(kCmOverflow).
  CommonMemory& write(std::string_view slot, Payload payload);
  /// Throws Error(kUndeclaredSlot); absent when never written.
  std::optional<Payload> read(std::string_view slot) const;

  const std::vector<CmSlot>& slots() const noexcept { return slots_; }
  const std::map<std::string, Payload, std::less<>>& contents() const noexcept { return contents_; }

  friend bool operator==(const CommonMemory&, const CommonMemory&) = default;

 private:
  const CmSlot& slot_or_throw(std::string_view slot) const;

  std::vector<CmSlot> slots_;
  std::map<std::string, Payload, std::less<>> contents_;
};

CommonMemory cm_write(CommonMemory cm, std::string_view slot, Payload payload);
std::optional<Payload> cm_read(const CommonMemory& cm, std::string_view slot);

/// What a behaviour can do while handling an activation.
class TaskContext {
 public:
  virtual ~TaskContext() = default;

  virtual std::uint64_t now_ms() const = 0;
  /// Sends to a declared outbound channel. An empty `type_tag` uses the
  /// declared one. Sending to endpoint CM is a Common Memory write of the
  /// slot named `name`. Throws Error(kUnknownTarget) for undeclared channels.
  virtual void send(std::string_view endpoint, std::string_view name, std::string_view type_tag,
                    Payload payload) = 0;
  virtual void cm_write(std::string_view slot, Payload payload) = 0;
  /// Passive; never recorded.
  virtual std::optional<Payload> cm_read(std::string_view slot) const = 0;
  /// Queues a message to the TUT itself, drained later in the same tick.
  /// Not interface traffic, so not recorded.
  virtual void post_self(Message message) = 0;
};

/// The task under test. Handlers must be deterministic in (input, own
/// state); reset() is called at the start of every run.
class TaskBehavior {
 public:
  virtual ~TaskBehavior() = default;

  virtual void reset() {}
  virtual void on_message(const Message& message, TaskContext& ctx) = 0;
  virtual void on_timer(std::uint64_t /*tick_ms*/, TaskContext& /*ctx*/) {}
  virtual std::uint64_t timer_period_ms() const { return kDefaultTimerPeriodMs; }
};

/// Behaviour assembled from a pair of callables.
class CallbackBehavior : public TaskBehavior {
 public:
  using MessageHandler = std::function<void(const Message&, TaskContext&)>;
  using TimerHandler = std::function<void(std::uint64_t, TaskContext&)>;

  CallbackBehavior(MessageHandler on_message, TimerHandler on_timer,
                   std::uint64_t period_ms = kDefaultTimerPeriodMs);

  void on_message(const Message& message, TaskContext& ctx) override;
  void on_timer(std::uint64_t tick_ms, TaskContext& ctx) override;
  std::uint64_t timer_period_ms() const override { return period_ms_; }

 private:
  MessageHandler on_message_;
  TimerHandler on_timer_;
  std::uint64_t period_ms_;
};

/// Stand-in for one neighbour of the TUT.
struct Stub {
  Endpoint endpoint;
  bool injects = false;   // originates inbound traffic
  bool receives = false;  // sink for outbound traffic

  friend bool operator==(const Stub&, const Stub&) = default;
};

/// The generated task environment: one stub per neighbouring endpoint.
class Environment {
 public:
  const InterfaceSpec& spec() const noexcept { return spec_; }
  const std::vector<Stub>& stubs() const noexcept { return stubs_; }
  const Stub* find_stub(std::string_view endpoint) const;

 private:
  friend Environment generate_environment(const InterfaceSpec& spec);

  InterfaceSpec spec_;
  std::vector<Stub> stubs_;
};

/// Throws what validate_interface throws.
Environment generate_environment(const InterfaceSpec& spec);

struct RunOptions {
  /// TIME value for every record of the run.
  std::string run_stamp = "1970.01.01_00:00:00";
  /// Highest precedence timer period; then Scenario::tick_period_ms, then
  /// TaskBehavior::timer_period_ms().
  std::optional<std::uint64_t> timer_period_ms;
  std::size_t livelock_cap = kDefaultLivelockCap;
};

struct Trace {
  std::vector<LogRecord> records;
  CommonMemory final_cm;
  std::uint64_t duration_ms = 0;
};

/// Throws Error(kUnknownTarget), Error(kLivelockDetected),
/// Error(kCmOverflow) or Error(kUndeclaredSlot).
Trace run_simulation(const Scenario& scenario, TaskBehavior& behavior, const Environment& env,
                     const RunOptions& options = {});

/// Local wall-clock time in the TIME format.
std::string current_time_stamp();

}  // namespace tut

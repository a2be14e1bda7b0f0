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

// Built-in tasks under test, selectable by id from the command line.

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "tut/interface.hpp"
#include "tut/runtime.hpp"
#include "tut/statechart.hpp"

namespace tut {

/// Writes every inbound message to the Common Memory slot of the same name.
class EchoToCmBehavior : public TaskBehavior {
 public:
  void on_message(const Message& message, TaskContext& ctx) override;
};

/// Sends one message per timer period on a fixed channel; the payload is
/// the activation count as a little-endian uint32, starting at 1.
class HeartbeatBehavior : public TaskBehavior {
 public:
  HeartbeatBehavior(Channel channel, std::uint64_t period_ms = kDefaultTimerPeriodMs);

  void reset() override { count_ = 0; }
  void on_message(const Message&, TaskContext&) override {}
  void on_timer(std::uint64_t tick_ms, TaskContext& ctx) override;
  std::uint64_t timer_period_ms() const override { return period_ms_; }

 private:
  Channel channel_;
  std::uint64_t period_ms_;
  std::uint32_t count_ = 0;
};

/// Executes an LTS as the implementation: each inbound message that labels
/// an edge from the current node emits that edge's outputs and moves on.
/// Messages with no matching edge are ignored.
class ModelBehavior : public TaskBehavior {
 public:
  explicit ModelBehavior(Lts lts);

  void reset() override { current_ = lts_.initial; }
  void on_message(const Message& message, TaskContext& ctx) override;

  std::size_t current() const noexcept { return current_; }

 private:
  Lts lts_;
  std::size_t current_;
};

inline constexpr std::string_view kEchoBehaviorId = "echo-to-cm";
inline constexpr std::string_view kHeartbeatBehaviorId = "timer-heartbeat";
inline constexpr std::string_view kModelBehaviorId = "model";

std::vector<std::string_view> behavior_ids();

/// `model` must be non-null for the model behaviour. The heartbeat uses the
/// first outbound channel, or the first CM slot when there is none. Throws
/// Error(kUsage) for unknown ids or missing inputs.
std::unique_ptr<TaskBehavior> make_behavior(std::string_view id, const InterfaceSpec& spec, const Lts* model);

}  // namespace tut

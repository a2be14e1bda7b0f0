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

#include "tut/behaviors.hpp"

#include <fmt/format.h>

namespace tut {

void EchoToCmBehavior::on_message(const Message& message, TaskContext& ctx) {
  ctx.cm_write(message.name, message.payload);
}

HeartbeatBehavior::HeartbeatBehavior(Channel channel, std::uint64_t period_ms)
    : channel_(std::move(channel)), period_ms_(period_ms) {
  if (period_ms_ == 0) throw Error(ErrorCode::kUsage, "heartbeat period must be positive");
}

void HeartbeatBehavior::on_timer(std::uint64_t, TaskContext& ctx) {
  ++count_;
  ctx.send(channel_.endpoint, channel_.name, channel_.type_tag, payload_from_u32(count_));
}

ModelBehavior::ModelBehavior(Lts lts) : lts_(std::move(lts)), current_(lts_.initial) { validate_lts(lts_); }

void ModelBehavior::on_message(const Message& message, TaskContext& ctx) {
  Trigger t{message.source, message.name, message.type_tag, message.payload};
  auto edge = lts_.step(current_, t);
  if (!edge) return;
  const LtsEdge& e = lts_.edges[*edge];
  for (const auto& o : e.outputs) ctx.send(o.source.name, o.name, o.type_tag, o.payload);
  current_ = e.to;
}

std::vector<std::string_view> behavior_ids() { return {kEchoBehaviorId, kHeartbeatBehaviorId, kModelBehaviorId}; }

std::unique_ptr<TaskBehavior> make_behavior(std::string_view id, const InterfaceSpec& spec, const Lts* model) {
  if (id == kEchoBehaviorId) return std::make_unique<EchoToCmBehavior>();
  if (id == kHeartbeatBehaviorId) {
    if (!spec.outbound.empty()) return std::make_unique<HeartbeatBehavior>(spec.outbound.front());
    if (!spec.cm_slots.empty()) {
      const auto& slot = spec.cm_slots.front();
      return std::make_unique<HeartbeatBehavior>(Channel{std::string(kCommonMemoryName), slot.name, slot.name});
    }
    throw Error(ErrorCode::kUsage, "timer-heartbeat needs an outbound channel or a CM slot");
  }
  if (id == kModelBehaviorId) {
    if (!model) throw Error(ErrorCode::kUsage, "the model behavior needs a state chart (--model)");
    return std::make_unique<ModelBehavior>(*model);
  }
  throw Error(ErrorCode::kUsage, fmt::format("unknown behavior '{}'", id));
}

}  // namespace tut

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

#include <gtest/gtest.h>

#include <set>

#include "support/generators.hpp"
#include "support/oracles.hpp"
#include "tut/behaviors.hpp"

namespace tut {
namespace {

using testing::Rng;
using testing::uniform;

InterfaceSpec keypad_spec() {
  InterfaceSpec s;
  s.tut_name = "DSS";
  s.inbound = {{"KEYPAD", "D_CHANGE_BTN", "D_CHANGE_BTN"}, {"KEYPAD", "D_PREP_PREV_BTN", "D_PREP_PREV_BTN"}};
  s.outbound = {{"GUI_PROXY", "HEARTBEAT", "U32"}};
  s.cm_slots = {{"D_CHANGE_BTN", 4}, {"D_PREP_PREV_BTN", 9}};
  return s;
}

Injection inject(std::uint64_t tick, std::string name, Payload p) {
  Injection i;
  i.tick_ms = tick;
  i.target = Endpoint::named("KEYPAD");
  i.type_tag = name;
  i.name = std::move(name);
  i.payload = std::move(p);
  return i;
}

std::vector<LogRecord> out_records(const Trace& t) {
  std::vector<LogRecord> out;
  for (const auto& r : t.records) {
    if (r.direction == Direction::kOut) out.push_back(r);
  }
  return out;
}

TEST(GenerateEnvironment, OneStubPerEndpoint) {
  InterfaceSpec s;
  s.inbound = {{"KEYPAD", "D_CHANGE_BTN", "D_CHANGE_BTN"}};
  s.outbound = {{"CM", "D_CHANGE_BTN", "D_CHANGE_BTN"}};
  Environment env = generate_environment(s);
  ASSERT_EQ(env.stubs().size(), 2u);
  EXPECT_TRUE(env.find_stub("KEYPAD")->injects);
  EXPECT_TRUE(env.find_stub("CM")->receives);
  EXPECT_EQ(env.find_stub("CM")->endpoint.kind, EndpointKind::kCommonMemory);
}

TEST(GenerateEnvironment, EmptyInterface) {
  try {
    generate_environment(InterfaceSpec{});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kEmptyInterface);
  }
}

TEST(GenerateEnvironment, DuplicateEndpoint) {
  InterfaceSpec s = keypad_spec();
  s.inbound.push_back(s.inbound.front());
  try {
    generate_environment(s);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDuplicateEndpoint);
  }
}

TEST(GenerateEnvironment, SampleEndpointsAreTheRecordedSources) {
  InterfaceSpec s;
  s.inbound = {{"DUMP_MERIT_SENDER", "SEND", "T_MERIT_APPSTOSC"}};
  s.cm_slots = {{"D_CHANGE_BTN", 4}};
  Environment env = generate_environment(s);
  CallbackBehavior b([](const Message&, TaskContext& ctx) { ctx.cm_write("D_CHANGE_BTN", Payload{2, 0, 0, 0}); },
                     nullptr);
  Scenario sc;
  sc.duration_ms = 20;
  Injection i;
  i.tick_ms = 3;
  i.target = Endpoint::named("DUMP_MERIT_SENDER");
  i.name = "SEND";
  i.type_tag = "T_MERIT_APPSTOSC";
  i.payload = Payload(std::vector<std::uint8_t>(16, 0));
  sc.injections = {i};
  Trace t = run_simulation(sc, b, env);
  std::set<std::string> sources;
  for (const auto& r : t.records) sources.insert(r.source.name);
  EXPECT_EQ(sources, (std::set<std::string>{"CM", "DUMP_MERIT_SENDER"}));
}

TEST(CommonMemoryOps, ReadAfterWrite) {
  CommonMemory cm({{"D_CHANGE_BTN", 4}});
  EXPECT_FALSE(cm_read(cm, "D_CHANGE_BTN").has_value());
  cm = cm_write(cm, "D_CHANGE_BTN", Payload{2, 0, 0, 0});
  EXPECT_EQ(cm_read(cm, "D_CHANGE_BTN"), (Payload{2, 0, 0, 0}));
}

TEST(CommonMemoryOps, UndeclaredAndOverflow) {
  CommonMemory cm({{"D_CHANGE_BTN", 4}});
  try {
    cm_write(cm, "OTHER", Payload{1});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kUndeclaredSlot);
  }
  try {
    cm_write(cm, "D_CHANGE_BTN", Payload{1, 2, 3, 4, 5});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kCmOverflow);
  }
  EXPECT_THROW(cm_read(cm, "OTHER"), Error);
}

TEST(CommonMemoryProperty, LastWriterWinsReplay) {
  Rng rng(31);
  std::vector<CmSlot> slots = {{"A", 4}, {"B", 8}, {"C", 1}};
  for (int round = 0; round < 100; ++round) {
    CommonMemory cm(slots);
    std::map<std::string, Payload> replay;
    std::size_t n = uniform(rng, 0, 30);
    for (std::size_t i = 0; i < n; ++i) {
      const CmSlot& s = testing::pick(rng, slots);
      Payload p = testing::random_payload(rng, s.max_len);
      cm = cm_write(cm, s.name, p);
      replay[s.name] = p;
    }
    for (const auto& s : slots) {
      auto it = replay.find(s.name);
      ASSERT_EQ(cm_read(cm, s.name), it == replay.end() ? std::nullopt : std::optional<Payload>(it->second));
    }
  }
}

TEST(RunSimulation, EmptyScenarioNoRecords) {
  Environment env = generate_environment(keypad_spec());
  EchoToCmBehavior echo;
  Scenario sc;
  sc.duration_ms = 0;
  EXPECT_TRUE(run_simulation(sc, echo, env).records.empty());
}

TEST(RunSimulation, EchoToCommonMemory) {
  Environment env = generate_environment(keypad_spec());
  EchoToCmBehavior echo;
  Scenario sc;
  sc.duration_ms = 10;
  sc.injections = {inject(5, "D_CHANGE_BTN", Payload{2, 0, 0, 0})};
  Trace t = run_simulation(sc, echo, env);
  auto outs = out_records(t);
  ASSERT_EQ(outs.size(), 1u);
  EXPECT_EQ(outs[0].source.name, "CM");
  EXPECT_EQ(outs[0].actual, (Payload{2, 0, 0, 0}));
  EXPECT_EQ(outs[0].tick_ms, 5u);
  EXPECT_EQ(outs[0].type_tag, "D_CHANGE_BTN");
  EXPECT_EQ(t.final_cm.read("D_CHANGE_BTN"), (Payload{2, 0, 0, 0}));
  // The injection itself is logged first, as stimulus.
  ASSERT_EQ(t.records.size(), 2u);
  EXPECT_EQ(t.records[0].direction, Direction::kIn);
  EXPECT_EQ(t.records[0].status, RecordStatus::kOk);
}

TEST(RunSimulation, HeartbeatEveryQuarterSecond) {
  Environment env = generate_environment(keypad_spec());
  HeartbeatBehavior hb({"GUI_PROXY", "HEARTBEAT", "U32"}, 250);
  Scenario sc;
  sc.duration_ms = 1000;
  Trace t = run_simulation(sc, hb, env);
  ASSERT_EQ(t.records.size(), 4u);
  std::vector<std::uint64_t> ticks;
  for (const auto& r : t.records) ticks.push_back(*r.tick_ms);
  EXPECT_EQ(ticks, (std::vector<std::uint64_t>{250, 500, 750, 1000}));
  EXPECT_EQ(t.records[3].actual, payload_from_u32(4));
  EXPECT_EQ(oracle::timer_activations(1000, 250), 4u);
}

TEST(RunSimulation, TimerPeriodPrecedence) {
  Environment env = generate_environment(keypad_spec());
  HeartbeatBehavior hb({"GUI_PROXY", "HEARTBEAT", "U32"}, 250);
  Scenario sc;
  sc.duration_ms = 1000;
  sc.tick_period_ms = 100;
  EXPECT_EQ(run_simulation(sc, hb, env).records.size(), 10u);
  RunOptions opts;
  opts.timer_period_ms = 500;
  EXPECT_EQ(run_simulation(sc, hb, env, opts).records.size(), 2u);
}

TEST(RunSimulation, PhaseOrderInjectTimerDrain) {
  Environment env = generate_environment(keypad_spec());
  CallbackBehavior b([](const Message&, TaskContext& ctx) { ctx.cm_write("D_CHANGE_BTN", Payload{1}); },
                     [](std::uint64_t, TaskContext& ctx) { ctx.send("GUI_PROXY", "HEARTBEAT", "", Payload{}); }, 250);
  Scenario sc;
  sc.duration_ms = 250;
  sc.injections = {inject(250, "D_CHANGE_BTN", Payload{9})};
  Trace t = run_simulation(sc, b, env);
  ASSERT_EQ(t.records.size(), 3u);
  EXPECT_EQ(t.records[0].direction, Direction::kIn);
  EXPECT_EQ(t.records[1].name, "HEARTBEAT");
  EXPECT_EQ(t.records[1].type_tag, "U32");
  EXPECT_EQ(t.records[2].source.name, "CM");
}

TEST(RunSimulation, PostSelfDrainsSameTickUnrecorded) {
  Environment env = generate_environment(keypad_spec());
  CallbackBehavior b(
      [](const Message& m, TaskContext& ctx) {
        if (m.name == "D_CHANGE_BTN") {
          Message self;
          self.name = "INTERNAL";
          self.type_tag = "INTERNAL";
          ctx.post_self(self);
        } else {
          ctx.cm_write("D_CHANGE_BTN", Payload{7});
        }
      },
      nullptr);
  Scenario sc;
  sc.duration_ms = 5;
  sc.injections = {inject(2, "D_CHANGE_BTN", Payload{})};
  Trace t = run_simulation(sc, b, env);
  ASSERT_EQ(t.records.size(), 2u);
  EXPECT_EQ(t.records[1].tick_ms, 2u);
  EXPECT_EQ(t.records[1].actual, Payload{7});
}

TEST(RunSimulation, CmReadIsPassive) {
  Environment env = generate_environment(keypad_spec());
  CallbackBehavior b([](const Message&, TaskContext& ctx) { (void)ctx.cm_read("D_CHANGE_BTN"); }, nullptr);
  Scenario sc;
  sc.duration_ms = 5;
  sc.injections = {inject(1, "D_CHANGE_BTN", Payload{})};
  EXPECT_TRUE(out_records(run_simulation(sc, b, env)).empty());
}

TEST(RunSimulation, LivelockDetected) {
  Environment env = generate_environment(keypad_spec());
  CallbackBehavior b([](const Message& m, TaskContext& ctx) { ctx.post_self(m); }, nullptr);
  Scenario sc;
  sc.duration_ms = 5;
  sc.injections = {inject(1, "D_CHANGE_BTN", Payload{})};
  RunOptions opts;
  opts.livelock_cap = 50;
  try {
    run_simulation(sc, b, env, opts);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kLivelockDetected);
  }
}

TEST(RunSimulation, BoundedBurstStaysUnderCap) {
  Environment env = generate_environment(keypad_spec());
  CallbackBehavior b(
      [](const Message& m, TaskContext& ctx) {
        if (m.name != "D_CHANGE_BTN") return;
        Message self;
        self.name = "INTERNAL";
        for (int i = 0; i < 49; ++i) ctx.post_self(self);
      },
      nullptr);
  Scenario sc;
  sc.duration_ms = 2;
  sc.injections = {inject(1, "D_CHANGE_BTN", Payload{})};
  RunOptions opts;
  opts.livelock_cap = 50;
  EXPECT_NO_THROW(run_simulation(sc, b, env, opts));
}

TEST(RunSimulation, UnknownTargets) {
  Environment env = generate_environment(keypad_spec());
  EchoToCmBehavior echo;
  Scenario sc;
  sc.duration_ms = 5;
  Injection bad = inject(1, "D_CHANGE_BTN", Payload{});
  bad.target = Endpoint::named("FOO");
  sc.injections = {bad};
  try {
    run_simulation(sc, echo, env);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kUnknownTarget);
  }
  CallbackBehavior sender([](const Message&, TaskContext& ctx) { ctx.send("NOWHERE", "X", "", Payload{}); }, nullptr);
  sc.injections = {inject(1, "D_CHANGE_BTN", Payload{})};
  try {
    run_simulation(sc, sender, env);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kUnknownTarget);
  }
}

TEST(RunSimulation, CmOverflowDuringRun) {
  Environment env = generate_environment(keypad_spec());
  EchoToCmBehavior echo;
  Scenario sc;
  sc.duration_ms = 5;
  sc.injections = {inject(1, "D_CHANGE_BTN", Payload{1, 2, 3, 4, 5})};
  try {
    run_simulation(sc, echo, env);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kCmOverflow);
  }
}

TEST(RunSimulation, RunStampHeldConstant) {
  Environment env = generate_environment(keypad_spec());
  HeartbeatBehavior hb({"GUI_PROXY", "HEARTBEAT", "U32"}, 10);
  Scenario sc;
  sc.duration_ms = 100;
  RunOptions opts;
  opts.run_stamp = "2013.09.02_12:28:39";
  for (const auto& r : run_simulation(sc, hb, env, opts).records) EXPECT_EQ(r.time, opts.run_stamp);
  opts.run_stamp = "yesterday";
  EXPECT_THROW(run_simulation(sc, hb, env, opts), Error);
}

/// Echo plus a timer that reports the CM slot it last saw, so both phases
/// contribute records.
class MixedBehavior : public TaskBehavior {
 public:
  void reset() override { seen_ = 0; }
  void on_message(const Message& m, TaskContext& ctx) override {
    ++seen_;
    ctx.cm_write(m.name, m.payload);
    if (m.payload.size() % 3 == 0) ctx.send("GUI_PROXY", "HEARTBEAT", "", payload_from_u32(seen_));
  }
  void on_timer(std::uint64_t, TaskContext& ctx) override {
    auto v = ctx.cm_read("D_CHANGE_BTN");
    ctx.send("GUI_PROXY", "HEARTBEAT", "", v.value_or(Payload{}));
  }
  std::uint64_t timer_period_ms() const override { return 50; }

 private:
  std::uint32_t seen_ = 0;
};

Scenario random_runtime_scenario(Rng& rng) {
  Scenario sc;
  sc.duration_ms = uniform(rng, 0, 600);
  std::size_t n = uniform(rng, 0, 10);
  std::vector<std::uint64_t> ticks;
  for (std::size_t i = 0; i < n; ++i) ticks.push_back(uniform(rng, 0, sc.duration_ms));
  std::sort(ticks.begin(), ticks.end());
  for (auto t : ticks) {
    bool change = testing::coin(rng);
    sc.injections.push_back(inject(t, change ? "D_CHANGE_BTN" : "D_PREP_PREV_BTN",
                                   testing::random_payload(rng, change ? 4 : 9)));
  }
  return sc;
}

TEST(RuntimeProperty, OrderingGaplessAndCausal) {
  Rng rng(32);
  Environment env = generate_environment(keypad_spec());
  for (int i = 0; i < 100; ++i) {
    Scenario sc = random_runtime_scenario(rng);
    MixedBehavior b;
    Trace t = run_simulation(sc, b, env);
    for (std::size_t k = 0; k < t.records.size(); ++k) {
      ASSERT_EQ(t.records[k].log_cnt, k + 1);
      if (k) ASSERT_LE(*t.records[k - 1].tick_ms, *t.records[k].tick_ms);
    }
    // Each CM write answers one injection delivered at or before its tick.
    std::size_t writes = 0;
    for (const auto& r : t.records) {
      if (r.source.name != "CM") continue;
      ++writes;
      ASSERT_LT(writes - 1, sc.injections.size());
      ASSERT_GE(*r.tick_ms, sc.injections[writes - 1].tick_ms);
    }
    ASSERT_EQ(writes, sc.injections.size());
  }
}

TEST(RuntimeProperty, DeterministicSerializedTrace) {
  Rng rng(33);
  Environment env = generate_environment(keypad_spec());
  for (int i = 0; i < 50; ++i) {
    Scenario sc = random_runtime_scenario(rng);
    MixedBehavior a, b;
    ASSERT_EQ(serialize_log(run_simulation(sc, a, env).records), serialize_log(run_simulation(sc, b, env).records));
    // Reusing one behaviour object is also deterministic thanks to reset().
    ASSERT_EQ(serialize_log(run_simulation(sc, a, env).records), serialize_log(run_simulation(sc, b, env).records));
  }
}

TEST(RuntimeProperty, TimerCountMatchesLoopOracle) {
  Rng rng(34);
  Environment env = generate_environment(keypad_spec());
  for (int i = 0; i < 100; ++i) {
    std::uint64_t d = uniform(rng, 0, 3000);
    std::uint64_t p = uniform(rng, 1, 400);
    HeartbeatBehavior hb({"GUI_PROXY", "HEARTBEAT", "U32"}, p);
    Scenario sc;
    sc.duration_ms = d;
    ASSERT_EQ(run_simulation(sc, hb, env).records.size(), oracle::timer_activations(d, p)) << d << "/" << p;
  }
}

}  // namespace
}  // namespace tut

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

// Random instance generators shared by the unit and acceptance suites.

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "tut/analyzer.hpp"
#include "tut/report.hpp"
#include "tut/scenario.hpp"
#include "tut/statechart.hpp"
#include "tut/trace.hpp"

namespace tut::testing {

using Rng = std::mt19937_64;

inline std::size_t uniform(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

inline bool coin(Rng& rng, double p = 0.5) { return std::bernoulli_distribution(p)(rng); }

template <typename T>
const T& pick(Rng& rng, const std::vector<T>& items) {
  return items[uniform(rng, 0, items.size() - 1)];
}

inline Payload random_payload(Rng& rng, std::size_t max_len = 64) {
  Payload p;
  p.bytes.resize(uniform(rng, 0, max_len));
  for (auto& b : p.bytes) b = static_cast<std::uint8_t>(uniform(rng, 0, 255));
  return p;
}

inline std::string random_identifier(Rng& rng) {
  static const std::vector<std::string> stems = {"D_CHANGE_BTN", "D_PREP_PREV_BTN", "T_MERIT_APPSTOSC", "SEND",
                                                 "STATUS",       "PUMP_RATE",       "ALARM",            "X"};
  std::string s = pick(rng, stems);
  if (coin(rng)) s += "_" + std::to_string(uniform(rng, 0, 99));
  return s;
}

inline std::string random_endpoint_name(Rng& rng) {
  static const std::vector<std::string> names = {"CM", "DUMP_MERIT_SENDER", "KEYPAD", "CSS", "PSS", "GUI_PROXY"};
  return pick(rng, names);
}

inline std::string random_time(Rng& rng) {
  return fmt::format("{:04}.{:02}.{:02}_{:02}:{:02}:{:02}", uniform(rng, 1990, 2099), uniform(rng, 1, 12),
                     uniform(rng, 1, 28), uniform(rng, 0, 23), uniform(rng, 0, 59), uniform(rng, 0, 59));
}

inline std::string random_info(Rng& rng) {
  static const std::vector<std::string> words = {"OK",     "ok",     "sent",   "retry=3", "queue", "FOO:",
                                                 "a:b",    "12:30",  "x_y",    "(late)",  "NOTE:", "Done."};
  std::string s;
  std::size_t n = uniform(rng, 0, 4);
  for (std::size_t i = 0; i < n; ++i) {
    if (i) s += coin(rng, 0.8) ? " " : "  ";
    s += pick(rng, words);
  }
  return s;
}

inline LogRecord random_record(Rng& rng, std::uint64_t log_cnt) {
  LogRecord r;
  r.log_cnt = log_cnt;
  r.time = random_time(rng);
  if (coin(rng)) r.tick_ms = uniform(rng, 0, 100000);
  r.source = Endpoint::named(random_endpoint_name(rng));
  r.direction = coin(rng) ? Direction::kIn : Direction::kOut;
  r.name = random_identifier(rng);
  r.type_tag = random_identifier(rng);
  r.relevance = static_cast<int>(uniform(rng, 0, 1));
  r.tolerance = coin(rng) ? 0 : uniform(rng, 0, 1000);
  int which = static_cast<int>(uniform(rng, 0, 2));
  if (which != 1) r.expected = random_payload(rng, 16);
  if (which != 0) r.actual = random_payload(rng, 16);
  if (coin(rng)) r.status = static_cast<RecordStatus>(uniform(rng, 0, 2));
  if (coin(rng)) r.info = random_info(rng);
  return r;
}

inline std::vector<LogRecord> random_log(Rng& rng, std::size_t max_records) {
  std::vector<LogRecord> out;
  std::uint64_t cnt = 0;
  std::size_t n = uniform(rng, 0, max_records);
  for (std::size_t i = 0; i < n; ++i) {
    cnt += uniform(rng, 1, 3);
    out.push_back(random_record(rng, cnt));
  }
  return out;
}

inline Expectation random_expectation(Rng& rng) {
  Expectation e;
  e.source = Endpoint::named(random_endpoint_name(rng));
  e.direction = coin(rng, 0.8) ? Direction::kOut : Direction::kIn;
  e.name = random_identifier(rng);
  e.type_tag = random_identifier(rng);
  e.relevance = static_cast<int>(uniform(rng, 0, 1));
  e.tolerance = coin(rng) ? 0 : uniform(rng, 0, 500);
  e.expected = random_payload(rng, 12);
  return e;
}

inline Scenario random_scenario(Rng& rng) {
  static const std::vector<std::string> titles = {"", "Keypad smoke", "change button echo", "x", "Heartbeat 250ms"};
  Scenario s;
  s.title = pick(rng, titles);
  s.duration_ms = uniform(rng, 1, 5000);
  if (coin(rng)) s.tick_period_ms = uniform(rng, 1, 1000);
  std::size_t n = uniform(rng, 0, 6);
  std::vector<std::uint64_t> ticks;
  for (std::size_t i = 0; i < n; ++i) ticks.push_back(uniform(rng, 0, s.duration_ms));
  std::sort(ticks.begin(), ticks.end());
  for (auto t : ticks) {
    Injection inj;
    inj.tick_ms = t;
    inj.target = Endpoint::named(random_endpoint_name(rng));
    inj.name = random_identifier(rng);
    inj.type_tag = random_identifier(rng);
    inj.payload = random_payload(rng, 12);
    s.injections.push_back(std::move(inj));
  }
  std::size_t m = uniform(rng, 0, 6);
  for (std::size_t i = 0; i < m; ++i) s.expectations.push_back(random_expectation(rng));
  return s;
}

/// Triggers drawn from a small alphabet so that charts hit repeated
/// triggers, and so nondeterminism, often.
inline Trigger random_trigger(Rng& rng) {
  static const std::vector<std::string> sources = {"ENV", "KEYPAD"};
  static const std::vector<std::string> names = {"EV_A", "EV_B", "EV_C", "EV_D"};
  Trigger t;
  t.source = Endpoint::named(pick(rng, sources));
  t.name = pick(rng, names);
  t.type_tag = t.name + "_T";
  if (coin(rng, 0.3)) t.payload = Payload{static_cast<std::uint8_t>(uniform(rng, 0, 1))};
  return t;
}

inline Output random_output(Rng& rng) {
  static const std::vector<std::string> sources = {"CM", "GUI_PROXY", "PSS"};
  static const std::vector<std::string> names = {"OUT_X", "OUT_Y", "OUT_Z"};
  Output o;
  o.source = Endpoint::named(pick(rng, sources));
  o.name = pick(rng, names);
  o.type_tag = o.source.name == "CM" ? o.name : o.name + "_T";
  o.payload = random_payload(rng, 4);
  return o;
}

/// Random OR-hierarchy: each state's parent is an earlier state or none.
/// May be nondeterministic after expansion; callers that need a valid LTS
/// should retry while flatten throws.
inline StateChart random_chart(Rng& rng, std::size_t max_states, std::size_t max_transitions) {
  StateChart c;
  std::size_t n = uniform(rng, 1, max_states);
  for (std::size_t i = 0; i < n; ++i) {
    ChartState s;
    s.name = "S" + std::to_string(i);
    if (i > 0 && coin(rng, 0.5)) s.parent = "S" + std::to_string(uniform(rng, 0, i - 1));
    c.states.push_back(std::move(s));
  }
  // One initial per scope: the first state declared in it.
  std::vector<std::string> scopes_done;
  for (auto& s : c.states) {
    std::string scope = s.parent.value_or("");
    if (std::find(scopes_done.begin(), scopes_done.end(), scope) == scopes_done.end()) {
      s.initial = true;
      scopes_done.push_back(scope);
    }
  }
  c.initial = c.states.front().name;
  std::size_t m = uniform(rng, 0, max_transitions);
  for (std::size_t i = 0; i < m; ++i) {
    Transition t;
    t.from = pick(rng, c.states).name;
    t.to = pick(rng, c.states).name;
    t.trigger = random_trigger(rng);
    std::size_t outs = uniform(rng, 0, 2);
    for (std::size_t k = 0; k < outs; ++k) t.outputs.push_back(random_output(rng));
    bool duplicate = std::any_of(c.transitions.begin(), c.transitions.end(), [&](const Transition& u) {
      return u.from == t.from && u.trigger == t.trigger;
    });
    if (!duplicate) c.transitions.push_back(std::move(t));
  }
  return c;
}

/// Chart that is valid and flattens without conflicts.
inline StateChart random_valid_chart(Rng& rng, std::size_t max_states, std::size_t max_transitions) {
  for (;;) {
    StateChart c = random_chart(rng, max_states, max_transitions);
    try {
      flatten(c);
      return c;
    } catch (const Error&) {
    }
  }
}

/// Deterministic LTS with up to `max_nodes` nodes; reachability arbitrary.
inline Lts random_lts(Rng& rng, std::size_t max_nodes, std::size_t max_edges) {
  Lts lts;
  std::size_t n = uniform(rng, 1, max_nodes);
  for (std::size_t i = 0; i < n; ++i) lts.nodes.push_back("N" + std::to_string(i));
  lts.initial = uniform(rng, 0, n - 1);
  std::size_t m = uniform(rng, 0, max_edges);
  for (std::size_t i = 0; i < m; ++i) {
    LtsEdge e;
    e.from = uniform(rng, 0, n - 1);
    e.to = uniform(rng, 0, n - 1);
    e.trigger = random_trigger(rng);
    if (lts.step(e.from, e.trigger)) continue;
    lts.edges.push_back(std::move(e));
  }
  return lts;
}

/// Every node reachable from node 0: a random spanning tree plus extra
/// random edges, all with outputs.
inline Lts random_reachable_lts(Rng& rng, std::size_t max_nodes, std::size_t extra_edges) {
  Lts lts;
  std::size_t n = uniform(rng, 1, max_nodes);
  for (std::size_t i = 0; i < n; ++i) lts.nodes.push_back("N" + std::to_string(i));
  lts.initial = 0;
  auto add = [&](std::size_t from, std::size_t to, bool must) {
    for (int attempt = 0; attempt < 64; ++attempt) {
      LtsEdge e;
      e.from = from;
      e.to = to;
      e.trigger = random_trigger(rng);
      if (lts.step(from, e.trigger)) continue;
      std::size_t outs = uniform(rng, 0, 2);
      for (std::size_t k = 0; k < outs; ++k) e.outputs.push_back(random_output(rng));
      lts.edges.push_back(std::move(e));
      return;
    }
    if (must) throw std::runtime_error("trigger alphabet exhausted");
  };
  for (std::size_t i = 1; i < n; ++i) add(uniform(rng, 0, i - 1), i, true);
  std::size_t extra = uniform(rng, 0, extra_edges);
  for (std::size_t i = 0; i < extra; ++i) add(uniform(rng, 0, n - 1), uniform(rng, 0, n - 1), false);
  return lts;
}

inline CheckResult random_check(Rng& rng, std::size_t index) {
  CheckResult c;
  c.expectation_index = index;
  c.expectation = random_expectation(rng);
  if (c.expectation.relevance == 0) {
    c.outcome = Outcome::kInfo;
  } else {
    c.outcome = static_cast<Outcome>(uniform(rng, 0, 2));
  }
  if (c.outcome != Outcome::kMissing && coin(rng, 0.8)) {
    LogRecord r = random_record(rng, index + 1);
    r.info.reset();
    c.matched_record = r;
  }
  static const std::vector<std::string> details = {"", "byte 0: expected 02, actual 03", "no matching record",
                                                   "a <b> & \"c\""};
  c.detail = pick(rng, details);
  return c;
}

inline ReportBundle random_bundle(Rng& rng) {
  ReportBundle b;
  std::size_t n = uniform(rng, 0, 10);
  std::vector<CheckResult> checks;
  for (std::size_t i = 0; i < n; ++i) checks.push_back(random_check(rng, i));
  std::vector<LogRecord> unexpected;
  std::size_t u = uniform(rng, 0, 3);
  for (std::size_t i = 0; i < u; ++i) unexpected.push_back(random_record(rng, 100 + i));
  b.verdict = compute_verdict(std::move(checks), std::move(unexpected), coin(rng));
  b.coverage.fail_rate = static_cast<double>(uniform(rng, 0, 4)) / 4.0;
  b.coverage.expectation_coverage = static_cast<double>(uniform(rng, 0, 8)) / 8.0;
  b.coverage.channel_coverage = static_cast<double>(uniform(rng, 0, 3)) / 3.0;
  static const std::vector<std::string> titles = {"", "suite <one>", "model_001", "A & B"};
  b.scenario_title = pick(rng, titles);
  b.run_stamp = random_time(rng);
  return b;
}

}  // namespace tut::testing

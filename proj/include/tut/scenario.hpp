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

// Test scripts (.tutsc). Blank-line separated blocks; the first line of a
// block names its kind:
//
//   CONFIG   TITLE, DURATION_MS, TICK_PERIOD_MS
//   INJECT   TICK_MS, TARGET, NAME, TYPE, PAYLOAD
//   EXPECT   SOURCE, DIRECTION, NAME, TYPE, RELEVANCE, TOLERANCE, EXPECTED
//
// Expectations keep script order; the analyzer consumes them per channel in
// that order.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tut/interface.hpp"
#include "tut/payload.hpp"
#include "tut/trace.hpp"

namespace tut {

inline constexpr std::uint64_t kDefaultTimerPeriodMs = 250;

struct Injection {
  std::uint64_t tick_ms = 0;
  Endpoint target;
  std::string name;
  std::string type_tag;
  Payload payload;

  friend bool operator==(const Injection&, const Injection&) = default;
};

struct Expectation {
  Endpoint source;
  Direction direction = Direction::kOut;
  std::string name;
  std::string type_tag;
  int relevance = 1;
  std::uint64_t tolerance = 0;
  Payload expected;

  friend bool operator==(const Expectation&, const Expectation&) = default;
};

struct Scenario {
  std::string title;
  std::uint64_t duration_ms = 0;
  /// Overrides the behaviour's own timer period when set.
  std::optional<std::uint64_t> tick_period_ms;
  std::vector<Injection> injections;
  std::vector<Expectation> expectations;

  std::uint64_t effective_period(std::uint64_t behavior_period) const {
    return tick_period_ms.value_or(behavior_period);
  }

  friend bool operator==(const Scenario&, const Scenario&) = default;
};

struct ScenarioParseResult {
  Scenario scenario;
  std::vector<Diagnostic> warnings;
};

/// Strict mode rejects out-of-order injections with
/// Error(kUnsortedInjections); lenient mode stable-sorts them and warns.
/// Other problems throw the matching ErrorCode with every located
/// diagnostic attached.
ScenarioParseResult parse_scenario(std::string_view text, ParseMode mode = ParseMode::kLenient);

std::string serialize_scenario(const Scenario& s);

struct ScenarioIssue {
  /// Block position in canonical order: 1 = CONFIG, then injections, then
  /// expectations.
  std::size_t block = 0;
  std::string reason;
};

std::vector<ScenarioIssue> validate_scenario(const Scenario& s, const InterfaceSpec& spec);

}  // namespace tut

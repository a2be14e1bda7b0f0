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

// Messages and the .tutlog record format.
//
// A record is a block of KEY: VALUE pairs. The canonical writer emits one
// pair per line in the fixed order
//   LOG_CNT TIME [TICK_MS] SOURCE DIRECTION NAME [STATUS] [INFO]
//   TYPE RELEVANCE TOLERANCE [EXPECTED] [ACTUAL]
// and separates records with a single blank line. The reader also accepts
// many pairs per line in any order, which is how hand-copied logs tend to
// look; a second LOG_CNT always starts a new record.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tut/error.hpp"
#include "tut/payload.hpp"

namespace tut {

enum class EndpointKind { kTask, kCommonMemory, kEnvironmentStub };

/// Name reserved for the Common Memory pseudo-endpoint.
inline constexpr std::string_view kCommonMemoryName = "CM";

struct Endpoint {
  std::string name;
  EndpointKind kind = EndpointKind::kEnvironmentStub;

  /// "CM" maps to kCommonMemory, anything else to kEnvironmentStub. Throws
  /// Error(kInvalidIdentifier) for names outside [A-Z0-9_]+.
  static Endpoint named(std::string_view name);

  friend bool operator==(const Endpoint&, const Endpoint&) = default;
};

/// Orientation relative to the task under test.
enum class Direction { kIn, kOut };

std::string_view to_string(Direction d);
std::optional<Direction> parse_direction(std::string_view s);

enum class RecordStatus { kOk, kFail, kMissing };

std::string_view to_string(RecordStatus s);
std::optional<RecordStatus> parse_status(std::string_view s);

struct Message {
  std::string name;
  std::string type_tag;
  Payload payload;
  Endpoint source;
  Direction direction = Direction::kIn;
  std::uint64_t tick_ms = 0;

  friend bool operator==(const Message&, const Message&) = default;
};

struct LogRecord {
  std::uint64_t log_cnt = 1;
  std::string time;  // YYYY.MM.DD_HH:MM:SS
  std::optional<std::uint64_t> tick_ms;
  Endpoint source;
  Direction direction = Direction::kOut;
  std::string name;
  std::string type_tag;
  int relevance = 0;
  std::uint64_t tolerance = 0;
  std::optional<Payload> expected;
  std::optional<Payload> actual;
  std::optional<RecordStatus> status;
  std::optional<std::string> info;

  friend bool operator==(const LogRecord&, const LogRecord&) = default;
};

/// Wall-clock stamp check for the TIME field.
bool is_valid_time_stamp(std::string_view s);

/// Keys with a fixed meaning in a log record, in canonical order.
const std::vector<std::string_view>& log_record_keys();

/// Empty if `r` satisfies the record invariants, otherwise the first
/// violated rule. INFO must be a single line and must not contain a
/// reserved key token, or it would not survive a round trip.
std::optional<std::string> check_record(const LogRecord& r);

std::string serialize_record(const LogRecord& r);

/// Records joined by one blank line; empty list gives "".
std::string serialize_log(const std::vector<LogRecord>& records);

enum class ParseMode { kLenient, kStrict };

struct LogParseResult {
  std::vector<LogRecord> records;
  std::vector<Diagnostic> diagnostics;
};

/// Strict mode throws Error(kMalformedRecord) or Error(kNonMonotonicLogCnt)
/// on the first problem. Lenient mode skips malformed records and reports
/// them as diagnostics. In both modes the token "ID" in DIRECTION is read
/// as IN and noted as a diagnostic, and unknown KEY: VALUE pairs are folded
/// into INFO.
LogParseResult parse_log(std::string_view text, ParseMode mode = ParseMode::kLenient);

}  // namespace tut

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

// Expected-vs-actual evaluation of a recorded trace.
//
// Records and expectations are grouped into channels keyed by
// (source, direction, name). Within a channel the k-th expectation in
// script order is paired with the k-th record in trace order. Surplus
// expectations are MISSING (or INFO at relevance 0); surplus OUT records
// are reported as unexpected. IN records are stimulus and are never
// reported as unexpected.
//
// TOLERANCE 0 means byte equality. A positive tolerance reads both
// payloads as consecutive little-endian uint32 fields and allows each
// field to differ by at most the tolerance; lengths must match and a
// trailing group shorter than four bytes must match exactly.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tut/interface.hpp"
#include "tut/scenario.hpp"
#include "tut/trace.hpp"

namespace tut {

struct PayloadComparison {
  bool match = true;
  /// Byte offset of the first violation (start of the offending field when
  /// tolerance > 0).
  std::optional<std::size_t> index;
  /// |expected - actual| of the first violating field, when numeric.
  std::optional<std::uint64_t> delta;
  std::string detail;
};

PayloadComparison compare_payloads(const Payload& expected, const Payload& actual, std::uint64_t tolerance);

enum class Outcome { kPass, kFail, kMissing, kInfo };

std::string_view to_string(Outcome o);
std::optional<Outcome> parse_outcome(std::string_view s);

struct CheckResult {
  std::size_t expectation_index = 0;
  Expectation expectation;
  std::optional<LogRecord> matched_record;
  Outcome outcome = Outcome::kMissing;
  std::string detail;

  bool relevant() const { return expectation.relevance == 1; }

  friend bool operator==(const CheckResult&, const CheckResult&) = default;
};

struct MatchResult {
  std::vector<CheckResult> checks;  // one per expectation, in script order
  std::vector<LogRecord> unexpected;
};

/// With `spec`, throws Error(kSpecMismatch) when the trace contains a
/// record on a stream the interface does not declare.
MatchResult match_trace(const std::vector<LogRecord>& records, const Scenario& scenario,
                        const InterfaceSpec* spec = nullptr);

enum class Overall { kPass, kFail };

std::string_view to_string(Overall o);

struct Verdict {
  std::vector<CheckResult> checks;
  std::vector<LogRecord> unexpected;
  Overall overall = Overall::kPass;
  bool strict = false;

  friend bool operator==(const Verdict&, const Verdict&) = default;
};

/// PASS iff every relevance-1 check passed; in strict mode unexpected
/// records also fail the verdict.
Verdict compute_verdict(std::vector<CheckResult> checks, std::vector<LogRecord> unexpected, bool strict = false);

struct CoverageMetrics {
  double expectation_coverage = 1.0;
  double channel_coverage = 1.0;
  double fail_rate = 0.0;

  friend bool operator==(const CoverageMetrics&, const CoverageMetrics&) = default;
};

/// Empty universes give 1.0 coverage and 0.0 fail rate. `spec` may be null,
/// in which case channel coverage is 1.0.
CoverageMetrics compute_coverage(const std::vector<CheckResult>& checks, const std::vector<LogRecord>& records,
                                 const InterfaceSpec* spec);

/// Copy of `records` with matched records annotated from their
/// expectation (RELEVANCE, TOLERANCE, EXPECTED, STATUS), plus a MISSING
/// record per unmatched relevant expectation. LOG_CNT is renumbered.
std::vector<LogRecord> annotate_log(const std::vector<LogRecord>& records, const std::vector<CheckResult>& checks,
                                    const std::string& run_stamp);

}  // namespace tut

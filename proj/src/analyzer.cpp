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

#include "tut/analyzer.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <tuple>

#include <fmt/format.h>

namespace tut {

namespace {

std::uint32_t read_le32(const Payload& p, std::size_t offset) {
  return static_cast<std::uint32_t>(p.bytes[offset]) | (static_cast<std::uint32_t>(p.bytes[offset + 1]) << 8) |
         (static_cast<std::uint32_t>(p.bytes[offset + 2]) << 16) |
         (static_cast<std::uint32_t>(p.bytes[offset + 3]) << 24);
}

PayloadComparison length_mismatch(const Payload& expected, const Payload& actual) {
  PayloadComparison c;
  c.match = false;
  c.index = std::min(expected.size(), actual.size());
  c.detail = fmt::format("length differs: expected {} bytes, actual {}", expected.size(), actual.size());
  return c;
}

PayloadComparison byte_mismatch(const Payload& expected, const Payload& actual, std::size_t i) {
  PayloadComparison c;
  c.match = false;
  c.index = i;
  std::uint8_t e = expected.bytes[i];
  std::uint8_t a = actual.bytes[i];
  c.delta = e > a ? e - a : a - e;
  c.detail = fmt::format("byte {}: expected {:02X}, actual {:02X}", i, e, a);
  return c;
}

using ChannelKey = std::tuple<std::string, Direction, std::string>;

ChannelKey key_of(const LogRecord& r) { return {r.source.name, r.direction, r.name}; }
ChannelKey key_of(const Expectation& e) { return {e.source.name, e.direction, e.name}; }

}  // namespace

PayloadComparison compare_payloads(const Payload& expected, const Payload& actual, std::uint64_t tolerance) {
  if (tolerance == 0) {
    std::size_t common = std::min(expected.size(), actual.size());
    for (std::size_t i = 0; i < common; ++i) {
      if (expected.bytes[i] != actual.bytes[i]) return byte_mismatch(expected, actual, i);
    }
    if (expected.size() != actual.size()) return length_mismatch(expected, actual);
    return {};
  }
  if (expected.size() != actual.size()) return length_mismatch(expected, actual);
  std::size_t whole = expected.size() / 4 * 4;
  for (std::size_t off = 0; off < whole; off += 4) {
    std::uint32_t e = read_le32(expected, off);
    std::uint32_t a = read_le32(actual, off);
    std::uint64_t delta = e > a ? e - a : a - e;
    if (delta > tolerance) {
      PayloadComparison c;
      c.match = false;
      c.index = off;
      c.delta = delta;
      c.detail = fmt::format("field at byte {}: expected {}, actual {}, delta {} exceeds tolerance {}", off, e, a,
                             delta, tolerance);
      return c;
    }
  }
  for (std::size_t i = whole; i < expected.size(); ++i) {
    if (expected.bytes[i] != actual.bytes[i]) return byte_mismatch(expected, actual, i);
  }
  return {};
}

std::string_view to_string(Outcome o) {
  switch (o) {
    case Outcome::kPass: return "PASS";
    case Outcome::kFail: return "FAIL";
    case Outcome::kMissing: return "MISSING";
    case Outcome::kInfo: return "INFO";
  }
  return "PASS";
}

std::optional<Outcome> parse_outcome(std::string_view s) {
  if (s == "PASS") return Outcome::kPass;
  if (s == "FAIL") return Outcome::kFail;
  if (s == "MISSING") return Outcome::kMissing;
  if (s == "INFO") return Outcome::kInfo;
  return std::nullopt;
}

std::string_view to_string(Overall o) { return o == Overall::kPass ? "PASS" : "FAIL"; }

MatchResult match_trace(const std::vector<LogRecord>& records, const Scenario& scenario, const InterfaceSpec* spec) {
  if (spec) {
    for (const auto& r : records) {
      if (!spec->declares(r.source.name, r.direction, r.name)) {
        throw Error(ErrorCode::kSpecMismatch,
                    fmt::format("record LOG_CNT {} is on undeclared stream ({}, {}, {})", r.log_cnt, r.source.name,
                                to_string(r.direction), r.name));
      }
    }
  }

  std::map<ChannelKey, std::vector<std::size_t>> by_channel;
  for (std::size_t i = 0; i < records.size(); ++i) by_channel[key_of(records[i])].push_back(i);
  std::map<ChannelKey, std::size_t> consumed;
  std::vector<bool> used(records.size(), false);

  MatchResult result;
  result.checks.reserve(scenario.expectations.size());
  for (std::size_t k = 0; k < scenario.expectations.size(); ++k) {
    const Expectation& e = scenario.expectations[k];
    CheckResult check;
    check.expectation_index = k;
    check.expectation = e;
    auto key = key_of(e);
    std::size_t& next = consumed[key];
    const auto& candidates = by_channel[key];
    if (next < candidates.size()) {
      std::size_t idx = candidates[next++];
      used[idx] = true;
      const LogRecord& r = records[idx];
      check.matched_record = r;
      const Payload empty;
      const Payload& actual = r.actual ? *r.actual : empty;
      if (e.relevance == 0) {
        check.outcome = Outcome::kInfo;
        check.detail = "informational";
      } else if (!r.actual) {
        check.outcome = Outcome::kFail;
        check.detail = "record carries no ACTUAL payload";
      } else {
        auto cmp = compare_payloads(e.expected, actual, e.tolerance);
        check.outcome = cmp.match ? Outcome::kPass : Outcome::kFail;
        check.detail = cmp.detail;
      }
    } else {
      check.outcome = e.relevance == 0 ? Outcome::kInfo : Outcome::kMissing;
      check.detail = "no matching record";
    }
    result.checks.push_back(std::move(check));
  }
  for (std::size_t i = 0; i < records.size(); ++i) {
    if (!used[i] && records[i].direction == Direction::kOut) result.unexpected.push_back(records[i]);
  }
  return result;
}

Verdict compute_verdict(std::vector<CheckResult> checks, std::vector<LogRecord> unexpected, bool strict) {
  Verdict v;
  v.strict = strict;
  bool ok = std::all_of(checks.begin(), checks.end(),
                        [](const CheckResult& c) { return !c.relevant() || c.outcome == Outcome::kPass; });
  if (strict && !unexpected.empty()) ok = false;
  v.overall = ok ? Overall::kPass : Overall::kFail;
  v.checks = std::move(checks);
  v.unexpected = std::move(unexpected);
  return v;
}

CoverageMetrics compute_coverage(const std::vector<CheckResult>& checks, const std::vector<LogRecord>& records,
                                 const InterfaceSpec* spec) {
  CoverageMetrics m;
  if (!checks.empty()) {
    auto consumed = std::count_if(checks.begin(), checks.end(), [](const auto& c) { return c.matched_record.has_value(); });
    m.expectation_coverage = static_cast<double>(consumed) / static_cast<double>(checks.size());
  }
  auto relevant = std::count_if(checks.begin(), checks.end(), [](const auto& c) { return c.relevant(); });
  if (relevant > 0) {
    auto failed = std::count_if(checks.begin(), checks.end(),
                                [](const auto& c) { return c.relevant() && c.outcome != Outcome::kPass; });
    m.fail_rate = static_cast<double>(failed) / static_cast<double>(relevant);
  }
  if (spec && !spec->outbound.empty()) {
    std::set<std::pair<std::string, std::string>> seen;
    for (const auto& r : records) {
      if (r.direction == Direction::kOut) seen.emplace(r.source.name, r.name);
    }
    auto observed = std::count_if(spec->outbound.begin(), spec->outbound.end(), [&](const Channel& c) {
      return seen.count({c.endpoint, c.name}) != 0;
    });
    m.channel_coverage = static_cast<double>(observed) / static_cast<double>(spec->outbound.size());
  }
  return m;
}

std::vector<LogRecord> annotate_log(const std::vector<LogRecord>& records, const std::vector<CheckResult>& checks,
                                    const std::string& run_stamp) {
  std::vector<LogRecord> out = records;
  std::map<std::uint64_t, std::size_t> by_cnt;
  for (std::size_t i = 0; i < out.size(); ++i) by_cnt.emplace(out[i].log_cnt, i);

  std::vector<LogRecord> missing;
  for (const auto& c : checks) {
    const Expectation& e = c.expectation;
    if (c.matched_record) {
      auto it = by_cnt.find(c.matched_record->log_cnt);
      if (it == by_cnt.end()) continue;
      LogRecord& r = out[it->second];
      r.relevance = e.relevance;
      r.tolerance = e.tolerance;
      r.expected = e.expected;
      if (c.outcome == Outcome::kPass) r.status = RecordStatus::kOk;
      if (c.outcome == Outcome::kFail) r.status = RecordStatus::kFail;
      continue;
    }
    if (!c.relevant()) continue;
    LogRecord r;
    r.time = run_stamp;
    r.source = e.source;
    r.direction = e.direction;
    r.name = e.name;
    r.type_tag = e.type_tag;
    r.relevance = e.relevance;
    r.tolerance = e.tolerance;
    r.expected = e.expected;
    r.status = RecordStatus::kMissing;
    missing.push_back(std::move(r));
  }
  out.insert(out.end(), missing.begin(), missing.end());
  for (std::size_t i = 0; i < out.size(); ++i) out[i].log_cnt = i + 1;
  return out;
}

}  // namespace tut

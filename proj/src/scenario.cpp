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

#include "tut/scenario.hpp"

#include <algorithm>

#include <fmt/format.h>

#include "tut/text.hpp"

namespace tut {

namespace {

class ScenarioReader {
 public:
  explicit ScenarioReader(ParseMode mode) : mode_(mode) {}

  ScenarioParseResult read(std::string_view input) {
    std::vector<Diagnostic> line_diags;
    auto blocks = text::read_typed_blocks(input, line_diags);
    for (auto& d : line_diags) fail(ErrorCode::kMalformedBlock, std::move(d));

    bool saw_config = false;
    bool saw_duration = false;
    for (const auto& b : blocks) {
      if (b.kind == "CONFIG") {
        if (saw_config) fail(ErrorCode::kMalformedBlock, {b.line, b.index, "more than one CONFIG block"});
        saw_config = true;
        saw_duration = read_config(b) || saw_duration;
      } else if (b.kind == "INJECT") {
        read_inject(b);
      } else if (b.kind == "EXPECT") {
        read_expect(b);
      } else {
        fail(ErrorCode::kUnknownBlockType, {b.line, b.index, fmt::format("unknown block type '{}'", b.kind)});
      }
    }
    if (!saw_duration) {
      fail(ErrorCode::kDurationMissing, {0, 0, "CONFIG block with a positive DURATION_MS is required"});
    }

    auto& inj = result_.scenario.injections;
    for (std::size_t i = 0; i < inj.size(); ++i) {
      if (inj[i].tick_ms > result_.scenario.duration_ms && saw_duration) {
        fail(ErrorCode::kMalformedBlock,
             {inject_lines_[i], 0,
              fmt::format("injection at tick {} is after DURATION_MS {}", inj[i].tick_ms,
                          result_.scenario.duration_ms)});
      }
    }
    bool sorted = std::is_sorted(inj.begin(), inj.end(),
                                 [](const Injection& a, const Injection& b) { return a.tick_ms < b.tick_ms; });
    if (!sorted) {
      if (mode_ == ParseMode::kStrict) {
        fail(ErrorCode::kUnsortedInjections, {0, 0, "INJECT blocks are not in tick order"});
      } else {
        std::stable_sort(inj.begin(), inj.end(),
                         [](const Injection& a, const Injection& b) { return a.tick_ms < b.tick_ms; });
        result_.warnings.push_back({0, 0, "INJECT blocks were not in tick order; sorted"});
      }
    }

    if (!errors_.empty()) throw Error(first_code_, "invalid scenario", std::move(errors_));
    return std::move(result_);
  }

 private:
  void fail(ErrorCode code, Diagnostic d) {
    if (errors_.empty()) first_code_ = code;
    errors_.push_back(std::move(d));
  }

  void check_keys(const text::TypedBlock& b, std::initializer_list<std::string_view> allowed) {
    std::vector<std::string_view> seen;
    for (const auto& f : b.fields) {
      if (std::find(allowed.begin(), allowed.end(), f.key) == allowed.end()) {
        fail(ErrorCode::kMalformedBlock, {f.line, b.index, fmt::format("unexpected key {} in {} block", f.key, b.kind)});
      } else if (std::find(seen.begin(), seen.end(), f.key) != seen.end()) {
        fail(ErrorCode::kMalformedBlock, {f.line, b.index, fmt::format("duplicate key {}", f.key)});
      }
      seen.push_back(f.key);
    }
  }

  const text::Field* require(const text::TypedBlock& b, std::string_view key) {
    const auto* f = b.find(key);
    if (!f) fail(ErrorCode::kMalformedBlock, {b.line, b.index, fmt::format("{} block missing {}", b.kind, key)});
    return f;
  }

  std::uint64_t read_uint(const text::TypedBlock& b, const text::Field* f) {
    if (!f) return 0;
    auto n = text::parse_uint(f->value);
    if (!n) {
      fail(ErrorCode::kMalformedBlock, {f->line, b.index, fmt::format("{} '{}' is not an integer", f->key, f->value)});
      return 0;
    }
    return *n;
  }

  std::string read_ident(const text::TypedBlock& b, const text::Field* f) {
    if (!f) return {};
    if (!text::is_identifier(f->value)) {
      fail(ErrorCode::kMalformedBlock, {f->line, b.index, fmt::format("{} '{}' is not an identifier", f->key, f->value)});
      return {};
    }
    return f->value;
  }

  Payload read_payload(const text::TypedBlock& b, const text::Field* f) {
    if (!f) return {};
    try {
      return decode_payload(f->value);
    } catch (const Error& e) {
      fail(ErrorCode::kMalformedBlock, {f->line, b.index, fmt::format("bad {}: {}", f->key, e.what())});
      return {};
    }
  }

  bool read_config(const text::TypedBlock& b) {
    check_keys(b, {"TITLE", "DURATION_MS", "TICK_PERIOD_MS"});
    auto& s = result_.scenario;
    if (const auto* t = b.find("TITLE")) s.title = t->value;
    bool has_duration = false;
    if (const auto* d = b.find("DURATION_MS")) {
      auto n = text::parse_uint(d->value);
      if (!n || *n == 0) {
        fail(ErrorCode::kDurationMissing, {d->line, b.index, fmt::format("DURATION_MS '{}' must be a positive integer", d->value)});
      } else {
        s.duration_ms = *n;
        has_duration = true;
      }
    }
    if (const auto* p = b.find("TICK_PERIOD_MS")) {
      auto n = text::parse_uint(p->value);
      if (!n || *n == 0) {
        fail(ErrorCode::kMalformedBlock, {p->line, b.index, fmt::format("TICK_PERIOD_MS '{}' must be a positive integer", p->value)});
      } else {
        s.tick_period_ms = *n;
      }
    }
    return has_duration;
  }

  void read_inject(const text::TypedBlock& b) {
    check_keys(b, {"TICK_MS", "TARGET", "NAME", "TYPE", "PAYLOAD"});
    Injection inj;
    inj.tick_ms = read_uint(b, require(b, "TICK_MS"));
    auto target = read_ident(b, require(b, "TARGET"));
    if (!target.empty()) inj.target = Endpoint::named(target);
    inj.name = read_ident(b, require(b, "NAME"));
    inj.type_tag = read_ident(b, require(b, "TYPE"));
    inj.payload = read_payload(b, b.find("PAYLOAD"));
    result_.scenario.injections.push_back(std::move(inj));
    inject_lines_.push_back(b.line);
  }

  void read_expect(const text::TypedBlock& b) {
    check_keys(b, {"SOURCE", "DIRECTION", "NAME", "TYPE", "RELEVANCE", "TOLERANCE", "EXPECTED"});
    Expectation e;
    auto source = read_ident(b, require(b, "SOURCE"));
    if (!source.empty()) e.source = Endpoint::named(source);
    if (const auto* d = b.find("DIRECTION")) {
      if (auto dir = parse_direction(d->value)) {
        e.direction = *dir;
      } else {
        fail(ErrorCode::kMalformedBlock, {d->line, b.index, fmt::format("bad DIRECTION '{}'", d->value)});
      }
    }
    e.name = read_ident(b, require(b, "NAME"));
    e.type_tag = read_ident(b, require(b, "TYPE"));
    if (const auto* r = b.find("RELEVANCE")) {
      auto n = read_uint(b, r);
      if (n > 1) fail(ErrorCode::kMalformedBlock, {r->line, b.index, "RELEVANCE must be 0 or 1"});
      e.relevance = static_cast<int>(n > 1 ? 1 : n);
    }
    if (const auto* t = b.find("TOLERANCE")) e.tolerance = read_uint(b, t);
    e.expected = read_payload(b, b.find("EXPECTED"));
    result_.scenario.expectations.push_back(std::move(e));
  }

  ParseMode mode_;
  ScenarioParseResult result_;
  std::vector<std::size_t> inject_lines_;
  std::vector<Diagnostic> errors_;
  ErrorCode first_code_ = ErrorCode::kMalformedBlock;
};

}  // namespace

ScenarioParseResult parse_scenario(std::string_view text, ParseMode mode) { return ScenarioReader(mode).read(text); }

std::string serialize_scenario(const Scenario& s) {
  std::string out = "CONFIG\n";
  if (!s.title.empty()) text::append_pair(out, "TITLE", s.title);
  text::append_pair(out, "DURATION_MS", std::to_string(s.duration_ms));
  if (s.tick_period_ms) text::append_pair(out, "TICK_PERIOD_MS", std::to_string(*s.tick_period_ms));
  for (const auto& inj : s.injections) {
    out += "\nINJECT\n";
    text::append_pair(out, "TICK_MS", std::to_string(inj.tick_ms));
    text::append_pair(out, "TARGET", inj.target.name);
    text::append_pair(out, "NAME", inj.name);
    text::append_pair(out, "TYPE", inj.type_tag);
    text::append_pair(out, "PAYLOAD", encode_payload(inj.payload));
  }
  for (const auto& e : s.expectations) {
    out += "\nEXPECT\n";
    text::append_pair(out, "SOURCE", e.source.name);
    text::append_pair(out, "DIRECTION", to_string(e.direction));
    text::append_pair(out, "NAME", e.name);
    text::append_pair(out, "TYPE", e.type_tag);
    text::append_pair(out, "RELEVANCE", std::to_string(e.relevance));
    text::append_pair(out, "TOLERANCE", std::to_string(e.tolerance));
    text::append_pair(out, "EXPECTED", encode_payload(e.expected));
  }
  return out;
}

std::vector<ScenarioIssue> validate_scenario(const Scenario& s, const InterfaceSpec& spec) {
  std::vector<ScenarioIssue> issues;
  if (s.duration_ms == 0) issues.push_back({1, "duration must be positive"});
  if (s.tick_period_ms && *s.tick_period_ms == 0) issues.push_back({1, "tick period must be positive"});
  if (s.title.find_first_of("\r\n") != std::string::npos || text::trim(s.title) != s.title) {
    issues.push_back({1, "title must be a single trimmed line"});
  }

  std::size_t block = 1;
  std::uint64_t previous_tick = 0;
  for (const auto& inj : s.injections) {
    ++block;
    if (!text::is_identifier(inj.target.name) || !text::is_identifier(inj.name) ||
        !text::is_identifier(inj.type_tag)) {
      issues.push_back({block, "injection has a malformed identifier"});
    } else if (!spec.has_inbound_endpoint(inj.target.name)) {
      issues.push_back({block, fmt::format("injection target {} is not a declared inbound endpoint", inj.target.name)});
    } else if (const auto* c = spec.find_inbound(inj.target.name, inj.name); c == nullptr) {
      issues.push_back({block, fmt::format("inbound channel ({}, {}) is not declared", inj.target.name, inj.name)});
    } else if (c->type_tag != inj.type_tag) {
      issues.push_back({block, fmt::format("type {} does not match declared type {}", inj.type_tag, c->type_tag)});
    }
    if (inj.tick_ms > s.duration_ms) {
      issues.push_back({block, fmt::format("tick {} is after the scenario duration {}", inj.tick_ms, s.duration_ms)});
    }
    if (inj.tick_ms < previous_tick) {
      issues.push_back({block, fmt::format("tick {} precedes the previous injection at {}", inj.tick_ms, previous_tick)});
    }
    previous_tick = std::max(previous_tick, inj.tick_ms);
  }

  for (const auto& e : s.expectations) {
    ++block;
    bool in = e.direction == Direction::kIn;
    if (!text::is_identifier(e.source.name) || !text::is_identifier(e.name) || !text::is_identifier(e.type_tag)) {
      issues.push_back({block, "expectation has a malformed identifier"});
    } else if (in ? !spec.has_inbound_endpoint(e.source.name) : !spec.has_outbound_endpoint(e.source.name)) {
      issues.push_back({block, fmt::format("expectation source {} is not a declared {} endpoint", e.source.name,
                                           in ? "inbound" : "outbound")});
    } else if (auto type = spec.type_of(e.source.name, e.direction, e.name); !type) {
      issues.push_back({block, fmt::format("channel ({}, {}, {}) is not declared", e.source.name,
                                           to_string(e.direction), e.name)});
    } else if (*type != e.type_tag) {
      issues.push_back({block, fmt::format("type {} does not match declared type {}", e.type_tag, *type)});
    }
    if (e.relevance != 0 && e.relevance != 1) issues.push_back({block, "relevance must be 0 or 1"});
  }
  return issues;
}

}  // namespace tut

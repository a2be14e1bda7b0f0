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

#include "tut/trace.hpp"

#include <algorithm>

#include <fmt/format.h>

#include "tut/text.hpp"

namespace tut {

Endpoint Endpoint::named(std::string_view name) {
  if (!text::is_identifier(name)) {
    throw Error(ErrorCode::kInvalidIdentifier, fmt::format("invalid endpoint name '{}'", name));
  }
  Endpoint e;
  e.name = std::string(name);
  e.kind = name == kCommonMemoryName ? EndpointKind::kCommonMemory : EndpointKind::kEnvironmentStub;
  return e;
}

std::string_view to_string(Direction d) { return d == Direction::kIn ? "IN" : "OUT"; }

std::optional<Direction> parse_direction(std::string_view s) {
  if (s == "IN") return Direction::kIn;
  if (s == "OUT") return Direction::kOut;
  return std::nullopt;
}

std::string_view to_string(RecordStatus s) {
  switch (s) {
    case RecordStatus::kOk: return "OK";
    case RecordStatus::kFail: return "FAIL";
    case RecordStatus::kMissing: return "MISSING";
  }
  return "OK";
}

std::optional<RecordStatus> parse_status(std::string_view s) {
  if (s == "OK") return RecordStatus::kOk;
  if (s == "FAIL") return RecordStatus::kFail;
  if (s == "MISSING") return RecordStatus::kMissing;
  return std::nullopt;
}

bool is_valid_time_stamp(std::string_view s) {
  // YYYY.MM.DD_HH:MM:SS
  static constexpr std::string_view kShape = "dddd.dd.dd_dd:dd:dd";
  if (s.size() != kShape.size()) return false;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (kShape[i] == 'd') {
      if (s[i] < '0' || s[i] > '9') return false;
    } else if (s[i] != kShape[i]) {
      return false;
    }
  }
  auto field = [&](std::size_t at) { return (s[at] - '0') * 10 + (s[at + 1] - '0'); };
  int month = field(5), day = field(8);
  return month >= 1 && month <= 12 && day >= 1 && day <= 31 && field(11) < 24 && field(14) < 60 && field(17) < 60;
}

const std::vector<std::string_view>& log_record_keys() {
  static const std::vector<std::string_view> keys = {
      "LOG_CNT", "TIME", "TICK_MS",   "SOURCE",    "DIRECTION", "NAME",   "STATUS",
      "INFO",    "TYPE", "RELEVANCE", "TOLERANCE", "EXPECTED",  "ACTUAL"};
  return keys;
}

namespace {

bool is_record_key(std::string_view key) {
  const auto& keys = log_record_keys();
  return std::find(keys.begin(), keys.end(), key) != keys.end();
}

bool is_ws(char c) { return c == ' ' || c == '\t'; }

struct Token {
  std::size_t begin;
  std::size_t end;
};

std::vector<Token> tokenize(std::string_view line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && is_ws(line[i])) ++i;
    if (i >= line.size()) break;
    std::size_t b = i;
    while (i < line.size() && !is_ws(line[i])) ++i;
    out.push_back({b, i});
  }
  return out;
}

bool is_reserved_key_token(std::string_view tok) {
  return text::is_key_token(tok) && is_record_key(tok.substr(0, tok.size() - 1));
}

/// Splits one physical line into pairs. The first token must be a key;
/// later tokens only start a new pair when they are reserved record keys.
bool split_line(const text::Line& line, std::vector<text::Field>& out) {
  std::string_view s = line.content;
  auto tokens = tokenize(s);
  if (tokens.empty()) return true;
  auto tok = [&](const Token& t) { return s.substr(t.begin, t.end - t.begin); };
  if (!text::is_key_token(tok(tokens.front()))) return false;

  std::vector<std::size_t> starts{0};
  for (std::size_t i = 1; i < tokens.size(); ++i) {
    if (is_reserved_key_token(tok(tokens[i]))) starts.push_back(i);
  }
  for (std::size_t k = 0; k < starts.size(); ++k) {
    const Token& key_tok = tokens[starts[k]];
    std::size_t value_begin = key_tok.end;
    std::size_t value_end = k + 1 < starts.size() ? tokens[starts[k + 1]].begin : s.size();
    std::string_view key = tok(key_tok);
    key.remove_suffix(1);
    out.push_back({std::string(key), std::string(text::trim(s.substr(value_begin, value_end - value_begin))),
                   line.number});
  }
  return true;
}

struct PendingRecord {
  std::size_t ordinal = 0;
  std::size_t first_line = 0;
  std::vector<text::Field> fields;
  std::vector<std::string> problems;

  bool has(std::string_view key) const {
    return std::any_of(fields.begin(), fields.end(), [&](const auto& f) { return f.key == key; });
  }
};

class LogReader {
 public:
  explicit LogReader(ParseMode mode) : mode_(mode) {}

  LogParseResult read(std::string_view text) {
    for (const auto& block : text::split_blocks(text)) {
      for (const auto& line : block) {
        std::vector<text::Field> pairs;
        bool ok = split_line(line, pairs);
        if (!ok) {
          ensure_pending(line.number);
          pending_->problems.push_back(
              fmt::format("line {}: expected 'KEY: VALUE', got '{}'", line.number, text::trim(line.content)));
          continue;
        }
        for (auto& p : pairs) {
          if (p.key == "LOG_CNT" && pending_ && pending_->has("LOG_CNT")) flush();
          ensure_pending(p.line);
          pending_->fields.push_back(std::move(p));
        }
      }
      flush();
    }
    return std::move(result_);
  }

 private:
  void ensure_pending(std::size_t line) {
    if (pending_) return;
    pending_ = PendingRecord{};
    pending_->ordinal = ++ordinal_;
    pending_->first_line = line;
  }

  void flush() {
    if (!pending_) return;
    PendingRecord p = std::move(*pending_);
    pending_.reset();
    auto record = build(p);
    if (!p.problems.empty()) {
      std::string msg = fmt::format("record {}: {}", p.ordinal, p.problems.front());
      if (mode_ == ParseMode::kStrict) {
        throw Error(ErrorCode::kMalformedRecord, msg, {Diagnostic{p.first_line, p.ordinal, msg}});
      }
      result_.diagnostics.push_back({p.first_line, p.ordinal, msg + " (record skipped)"});
      return;
    }
    if (last_cnt_ && record.log_cnt <= *last_cnt_) {
      std::string msg = fmt::format("record {}: LOG_CNT {} does not follow {}", p.ordinal, record.log_cnt,
                                    *last_cnt_);
      if (mode_ == ParseMode::kStrict) {
        throw Error(ErrorCode::kNonMonotonicLogCnt, msg, {Diagnostic{p.first_line, p.ordinal, msg}});
      }
      result_.diagnostics.push_back({p.first_line, p.ordinal, msg});
    }
    last_cnt_ = record.log_cnt;
    result_.records.push_back(std::move(record));
  }

  LogRecord build(PendingRecord& p) {
    LogRecord r;
    std::vector<std::string> extras;
    std::vector<std::string_view> seen;
    auto problem = [&](std::string s) { p.problems.push_back(std::move(s)); };

    for (const auto& f : p.fields) {
      if (!is_record_key(f.key)) {
        extras.push_back(f.value.empty() ? f.key + ":" : f.key + ": " + f.value);
        continue;
      }
      if (std::find(seen.begin(), seen.end(), f.key) != seen.end()) {
        problem(fmt::format("line {}: duplicate key {}", f.line, f.key));
        continue;
      }
      seen.push_back(f.key);
      const std::string& v = f.value;
      if (f.key == "LOG_CNT") {
        auto n = text::parse_uint(v);
        if (!n || *n == 0) problem(fmt::format("line {}: LOG_CNT must be a positive integer", f.line));
        else r.log_cnt = *n;
      } else if (f.key == "TIME") {
        if (!is_valid_time_stamp(v)) problem(fmt::format("line {}: TIME '{}' is not YYYY.MM.DD_HH:MM:SS", f.line, v));
        else r.time = v;
      } else if (f.key == "TICK_MS") {
        auto n = text::parse_uint(v);
        if (!n) problem(fmt::format("line {}: bad TICK_MS '{}'", f.line, v));
        else r.tick_ms = *n;
      } else if (f.key == "SOURCE") {
        if (!text::is_identifier(v)) problem(fmt::format("line {}: bad SOURCE '{}'", f.line, v));
        else r.source = Endpoint::named(v);
      } else if (f.key == "DIRECTION") {
        if (auto d = parse_direction(v)) {
          r.direction = *d;
        } else if (v == "ID") {
          r.direction = Direction::kIn;
          result_.diagnostics.push_back(
              {f.line, p.ordinal, fmt::format("record {}: DIRECTION 'ID' read as IN", p.ordinal)});
        } else {
          problem(fmt::format("line {}: bad DIRECTION '{}'", f.line, v));
        }
      } else if (f.key == "NAME") {
        if (!text::is_identifier(v)) problem(fmt::format("line {}: bad NAME '{}'", f.line, v));
        else r.name = v;
      } else if (f.key == "TYPE") {
        if (!text::is_identifier(v)) problem(fmt::format("line {}: bad TYPE '{}'", f.line, v));
        else r.type_tag = v;
      } else if (f.key == "STATUS") {
        if (auto s = parse_status(v)) r.status = *s;
        else problem(fmt::format("line {}: bad STATUS '{}'", f.line, v));
      } else if (f.key == "INFO") {
        r.info = v;
      } else if (f.key == "RELEVANCE") {
        auto n = text::parse_uint(v);
        if (!n || *n > 1) problem(fmt::format("line {}: RELEVANCE must be 0 or 1", f.line));
        else r.relevance = static_cast<int>(*n);
      } else if (f.key == "TOLERANCE") {
        auto n = text::parse_uint(v);
        if (!n) problem(fmt::format("line {}: bad TOLERANCE '{}'", f.line, v));
        else r.tolerance = *n;
      } else if (f.key == "EXPECTED" || f.key == "ACTUAL") {
        try {
          (f.key == "EXPECTED" ? r.expected : r.actual) = decode_payload(v);
        } catch (const Error& e) {
          problem(fmt::format("line {}: bad {} payload: {}", f.line, f.key, e.what()));
        }
      }
    }

    for (std::string_view key : {"LOG_CNT", "TIME", "SOURCE", "DIRECTION", "NAME", "TYPE", "RELEVANCE"}) {
      if (std::find(seen.begin(), seen.end(), key) == seen.end()) {
        problem(fmt::format("missing {}", key));
      }
    }
    if (!r.expected && !r.actual) problem("needs EXPECTED or ACTUAL");

    if (!extras.empty()) {
      std::string info = r.info.value_or("");
      for (const auto& e : extras) {
        if (!info.empty()) info.push_back(' ');
        info += e;
      }
      r.info = info;
    }
    return r;
  }

  ParseMode mode_;
  std::optional<PendingRecord> pending_;
  std::size_t ordinal_ = 0;
  std::optional<std::uint64_t> last_cnt_;
  LogParseResult result_;
};

}  // namespace

std::optional<std::string> check_record(const LogRecord& r) {
  if (r.log_cnt == 0) return "LOG_CNT must be positive";
  if (!is_valid_time_stamp(r.time)) return "TIME must be YYYY.MM.DD_HH:MM:SS";
  if (!text::is_identifier(r.source.name)) return "SOURCE must be an identifier";
  if (!text::is_identifier(r.name)) return "NAME must be an identifier";
  if (!text::is_identifier(r.type_tag)) return "TYPE must be an identifier";
  if (r.relevance != 0 && r.relevance != 1) return "RELEVANCE must be 0 or 1";
  if (!r.expected && !r.actual) return "needs EXPECTED or ACTUAL";
  if (r.info) {
    const std::string& info = *r.info;
    if (info.find_first_of("\r\n") != std::string::npos) return "INFO must be a single line";
    if (text::trim(info) != info) return "INFO must not have surrounding whitespace";
    for (const auto& t : tokenize(info)) {
      if (is_reserved_key_token(std::string_view(info).substr(t.begin, t.end - t.begin))) {
        return "INFO must not contain a reserved key token";
      }
    }
  }
  return std::nullopt;
}

std::string serialize_record(const LogRecord& r) {
  std::string out;
  text::append_pair(out, "LOG_CNT", std::to_string(r.log_cnt));
  text::append_pair(out, "TIME", r.time);
  if (r.tick_ms) text::append_pair(out, "TICK_MS", std::to_string(*r.tick_ms));
  text::append_pair(out, "SOURCE", r.source.name);
  text::append_pair(out, "DIRECTION", to_string(r.direction));
  text::append_pair(out, "NAME", r.name);
  if (r.status) text::append_pair(out, "STATUS", to_string(*r.status));
  if (r.info) text::append_pair(out, "INFO", *r.info);
  text::append_pair(out, "TYPE", r.type_tag);
  text::append_pair(out, "RELEVANCE", std::to_string(r.relevance));
  text::append_pair(out, "TOLERANCE", std::to_string(r.tolerance));
  if (r.expected) text::append_pair(out, "EXPECTED", encode_payload(*r.expected));
  if (r.actual) text::append_pair(out, "ACTUAL", encode_payload(*r.actual));
  return out;
}

std::string serialize_log(const std::vector<LogRecord>& records) {
  std::string out;
  for (std::size_t i = 0; i < records.size(); ++i) {
    if (i != 0) out.push_back('\n');
    out += serialize_record(records[i]);
  }
  return out;
}

LogParseResult parse_log(std::string_view text, ParseMode mode) { return LogReader(mode).read(text); }

}  // namespace tut

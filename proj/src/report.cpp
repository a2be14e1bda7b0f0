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

#include "tut/report.hpp"

#include <cstdlib>

#include <fmt/format.h>

#include "tut/text.hpp"

namespace tut {

std::string html_escape(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&#39;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

std::string percent(double ratio) { return fmt::format("{:.1f}%", ratio * 100.0); }

std::string channel_label(const Expectation& e) {
  return fmt::format("{}/{}/{}", e.source.name, to_string(e.direction), e.name);
}

constexpr std::string_view kStyle =
    "body{font-family:sans-serif;margin:2em;color:#222}"
    "table{border-collapse:collapse;width:100%;margin-top:1em}"
    "th,td{border:1px solid #bbb;padding:4px 8px;text-align:left;font-size:14px}"
    "td.hex{font-family:monospace}"
    ".verdict-pass{color:#1a7f37}.verdict-fail{color:#cf222e}"
    "tr.outcome-pass td.outcome{background:#dafbe1}"
    "tr.outcome-fail td.outcome,tr.outcome-missing td.outcome{background:#ffebe9}"
    "tr.outcome-info td.outcome{background:#eaeef2}";

}  // namespace

std::string render_html(const ReportBundle& bundle) {
  const Verdict& v = bundle.verdict;
  std::string out;
  out += "<!DOCTYPE html>\n<html>\n<head>\n<meta charset=\"utf-8\">\n";
  out += fmt::format("<title>{}</title>\n", html_escape(bundle.scenario_title.empty() ? "Unit test report" : bundle.scenario_title));
  out += fmt::format("<style>{}</style>\n</head>\n<body>\n", kStyle);
  out += fmt::format("<h1>{}</h1>\n", html_escape(bundle.scenario_title.empty() ? "Unit test report" : bundle.scenario_title));
  out += "<table class=\"summary\">\n";
  out += fmt::format("<tr><th>Verdict</th><td class=\"verdict-{}\">{}</td></tr>\n", lower(to_string(v.overall)),
                     to_string(v.overall));
  out += fmt::format("<tr><th>Fail rate</th><td>{}</td></tr>\n", percent(bundle.coverage.fail_rate));
  out += fmt::format("<tr><th>Expectation coverage</th><td>{}</td></tr>\n",
                     percent(bundle.coverage.expectation_coverage));
  out += fmt::format("<tr><th>Channel coverage</th><td>{}</td></tr>\n", percent(bundle.coverage.channel_coverage));
  out += fmt::format("<tr><th>Checks</th><td>{}</td></tr>\n", v.checks.size());
  out += fmt::format("<tr><th>Unexpected messages</th><td>{}{}</td></tr>\n", v.unexpected.size(),
                     v.strict ? " (strict)" : "");
  out += fmt::format("<tr><th>Run</th><td>{}</td></tr>\n", html_escape(bundle.run_stamp));
  out += fmt::format("<tr><th>Tool version</th><td>{}</td></tr>\n", html_escape(bundle.tool_version));
  out += "</table>\n";

  out += "<h2>Checks</h2>\n<table class=\"checks\">\n";
  out += "<tr><th>#</th><th>Outcome</th><th>Channel</th><th>Type</th><th>Relevance</th><th>Tolerance</th>"
         "<th>Expected</th><th>Actual</th><th>LOG_CNT</th><th>Detail</th></tr>\n";
  for (const auto& c : v.checks) {
    const Expectation& e = c.expectation;
    std::string actual = "-";
    std::string log_cnt = "-";
    if (c.matched_record) {
      if (c.matched_record->actual) actual = encode_payload(*c.matched_record->actual);
      log_cnt = std::to_string(c.matched_record->log_cnt);
    }
    out += fmt::format(
        "<tr class=\"check outcome-{}\"><td>{}</td><td class=\"outcome\">{}</td><td>{}</td><td>{}</td><td>{}</td>"
        "<td>{}</td><td class=\"hex\">{}</td><td class=\"hex\">{}</td><td>{}</td><td>{}</td></tr>\n",
        lower(to_string(c.outcome)), c.expectation_index, to_string(c.outcome), html_escape(channel_label(e)),
        html_escape(e.type_tag), e.relevance, e.tolerance, html_escape(encode_payload(e.expected)),
        html_escape(actual), log_cnt, html_escape(c.detail));
  }
  out += "</table>\n";

  if (!v.unexpected.empty()) {
    out += "<h2>Unexpected messages</h2>\n<table class=\"unexpected\">\n";
    out += "<tr><th>LOG_CNT</th><th>TICK_MS</th><th>Channel</th><th>Type</th><th>Actual</th></tr>\n";
    for (const auto& r : v.unexpected) {
      out += fmt::format(
          "<tr class=\"unexpected-row\"><td>{}</td><td>{}</td><td>{}/{}/{}</td><td>{}</td><td class=\"hex\">{}</td></tr>\n",
          r.log_cnt, r.tick_ms ? std::to_string(*r.tick_ms) : "-", html_escape(r.source.name), to_string(r.direction),
          html_escape(r.name), html_escape(r.type_tag), r.actual ? encode_payload(*r.actual) : "-");
    }
    out += "</table>\n";
  }
  out += "</body>\n</html>\n";
  return out;
}

namespace {

struct SuiteCounts {
  std::size_t tests = 0;
  std::size_t failures = 0;
  std::size_t skipped = 0;
};

bool unexpected_fails(const Verdict& v) { return v.strict && !v.unexpected.empty(); }

SuiteCounts count(const ReportBundle& b) {
  SuiteCounts c;
  for (const auto& check : b.verdict.checks) {
    ++c.tests;
    if (!check.relevant()) ++c.skipped;
    else if (check.outcome != Outcome::kPass) ++c.failures;
  }
  if (unexpected_fails(b.verdict)) {
    ++c.tests;
    ++c.failures;
  }
  return c;
}

std::string suite_name(const ReportBundle& b, std::size_t i) {
  return b.scenario_title.empty() ? fmt::format("scenario {}", i + 1) : b.scenario_title;
}

}  // namespace

std::string render_junit(std::span<const ReportBundle> bundles) {
  SuiteCounts total;
  for (const auto& b : bundles) {
    auto c = count(b);
    total.tests += c.tests;
    total.failures += c.failures;
    total.skipped += c.skipped;
  }
  std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += fmt::format("<testsuites tests=\"{}\" failures=\"{}\" errors=\"0\" skipped=\"{}\">\n", total.tests,
                     total.failures, total.skipped);
  for (std::size_t i = 0; i < bundles.size(); ++i) {
    const ReportBundle& b = bundles[i];
    const Verdict& v = b.verdict;
    auto c = count(b);
    std::string name = html_escape(suite_name(b, i));
    out += fmt::format(
        "  <testsuite name=\"{}\" tests=\"{}\" failures=\"{}\" errors=\"0\" skipped=\"{}\" timestamp=\"{}\">\n", name,
        c.tests, c.failures, c.skipped, html_escape(b.run_stamp));
    out += "    <properties>\n";
    out += fmt::format("      <property name=\"fail_rate\" value=\"{}\"/>\n", b.coverage.fail_rate);
    out += fmt::format("      <property name=\"expectation_coverage\" value=\"{}\"/>\n", b.coverage.expectation_coverage);
    out += fmt::format("      <property name=\"channel_coverage\" value=\"{}\"/>\n", b.coverage.channel_coverage);
    out += fmt::format("      <property name=\"tool_version\" value=\"{}\"/>\n", html_escape(b.tool_version));
    out += "    </properties>\n";
    for (const auto& check : v.checks) {
      std::string case_name =
          html_escape(fmt::format("check {} {}", check.expectation_index, channel_label(check.expectation)));
      out += fmt::format("    <testcase classname=\"{}\" name=\"{}\">", name, case_name);
      if (!check.relevant()) {
        out += "<skipped message=\"informational\"/>";
      } else if (check.outcome != Outcome::kPass) {
        out += fmt::format("<failure type=\"{}\" message=\"{}\">{}</failure>", to_string(check.outcome),
                           html_escape(check.detail), html_escape(check.detail));
      }
      out += "</testcase>\n";
    }
    if (unexpected_fails(v)) {
      std::string detail;
      for (const auto& r : v.unexpected) {
        if (!detail.empty()) detail += "; ";
        detail += fmt::format("LOG_CNT {} {}/{}/{}", r.log_cnt, r.source.name, to_string(r.direction), r.name);
      }
      out += fmt::format(
          "    <testcase classname=\"{}\" name=\"unexpected messages\"><failure type=\"UNEXPECTED\" "
          "message=\"{} unexpected message(s)\">{}</failure></testcase>\n",
          name, v.unexpected.size(), html_escape(detail));
    }
    out += "  </testsuite>\n";
  }
  out += "</testsuites>\n";
  return out;
}

std::string render_junit(const ReportBundle& bundle) { return render_junit(std::span<const ReportBundle>(&bundle, 1)); }

namespace {

void append_prefixed_record(std::string& out, const LogRecord& r, std::string_view prefix) {
  std::string body = serialize_record(r);
  std::size_t pos = 0;
  while (pos < body.size()) {
    auto end = body.find('\n', pos);
    out.append(prefix);
    out.append(body, pos, end - pos + 1);
    pos = end + 1;
  }
}

LogRecord record_from_fields(const std::vector<const text::Field*>& fields, std::size_t prefix_len,
                             std::size_t block) {
  std::string body;
  for (const auto* f : fields) text::append_pair(body, std::string_view(f->key).substr(prefix_len), f->value);
  try {
    auto parsed = parse_log(body, ParseMode::kStrict);
    if (parsed.records.size() != 1) throw Error(ErrorCode::kMalformedBlock, "expected one record");
    return parsed.records.front();
  } catch (const Error& e) {
    throw Error(ErrorCode::kMalformedBlock, fmt::format("block {}: embedded record: {}", block, e.what()));
  }
}

double parse_ratio(const text::Field* f, std::size_t block) {
  if (!f) throw Error(ErrorCode::kMalformedBlock, fmt::format("block {}: SUMMARY missing a ratio", block));
  char* end = nullptr;
  double v = std::strtod(f->value.c_str(), &end);
  if (f->value.empty() || end != f->value.c_str() + f->value.size() || v < 0.0 || v > 1.0) {
    throw Error(ErrorCode::kMalformedBlock, fmt::format("line {}: bad ratio '{}'", f->line, f->value));
  }
  return v;
}

}  // namespace

std::string serialize_results(const ReportBundle& bundle) {
  const Verdict& v = bundle.verdict;
  std::string out = "SUMMARY\n";
  text::append_pair(out, "TITLE", bundle.scenario_title);
  text::append_pair(out, "RUN_STAMP", bundle.run_stamp);
  text::append_pair(out, "TOOL_VERSION", bundle.tool_version);
  text::append_pair(out, "OVERALL", to_string(v.overall));
  text::append_pair(out, "STRICT", v.strict ? "1" : "0");
  text::append_pair(out, "FAIL_RATE", fmt::format("{}", bundle.coverage.fail_rate));
  text::append_pair(out, "EXPECTATION_COVERAGE", fmt::format("{}", bundle.coverage.expectation_coverage));
  text::append_pair(out, "CHANNEL_COVERAGE", fmt::format("{}", bundle.coverage.channel_coverage));
  for (const auto& c : v.checks) {
    const Expectation& e = c.expectation;
    out += "\nCHECK\n";
    text::append_pair(out, "INDEX", std::to_string(c.expectation_index));
    text::append_pair(out, "OUTCOME", to_string(c.outcome));
    text::append_pair(out, "SOURCE", e.source.name);
    text::append_pair(out, "DIRECTION", to_string(e.direction));
    text::append_pair(out, "NAME", e.name);
    text::append_pair(out, "TYPE", e.type_tag);
    text::append_pair(out, "RELEVANCE", std::to_string(e.relevance));
    text::append_pair(out, "TOLERANCE", std::to_string(e.tolerance));
    text::append_pair(out, "EXPECTED", encode_payload(e.expected));
    text::append_pair(out, "DETAIL", c.detail);
    if (c.matched_record) append_prefixed_record(out, *c.matched_record, "MATCHED_");
  }
  for (const auto& r : v.unexpected) {
    out += "\nUNEXPECTED\n";
    append_prefixed_record(out, r, "");
  }
  return out;
}

ReportBundle parse_results(std::string_view input) {
  std::vector<Diagnostic> diags;
  auto blocks = text::read_typed_blocks(input, diags);
  if (!diags.empty()) throw Error(ErrorCode::kMalformedBlock, "invalid results file", std::move(diags));
  ReportBundle b;
  bool saw_summary = false;
  auto need = [](const text::TypedBlock& blk, std::string_view key) -> const text::Field& {
    const auto* f = blk.find(key);
    if (!f) throw Error(ErrorCode::kMalformedBlock, fmt::format("block {}: {} missing {}", blk.index, blk.kind, key));
    return *f;
  };
  for (const auto& blk : blocks) {
    if (blk.kind == "SUMMARY") {
      saw_summary = true;
      b.scenario_title = need(blk, "TITLE").value;
      b.run_stamp = need(blk, "RUN_STAMP").value;
      b.tool_version = need(blk, "TOOL_VERSION").value;
      const auto& overall = need(blk, "OVERALL").value;
      if (overall != "PASS" && overall != "FAIL") {
        throw Error(ErrorCode::kMalformedBlock, fmt::format("block {}: bad OVERALL '{}'", blk.index, overall));
      }
      b.verdict.overall = overall == "PASS" ? Overall::kPass : Overall::kFail;
      b.verdict.strict = need(blk, "STRICT").value == "1";
      b.coverage.fail_rate = parse_ratio(blk.find("FAIL_RATE"), blk.index);
      b.coverage.expectation_coverage = parse_ratio(blk.find("EXPECTATION_COVERAGE"), blk.index);
      b.coverage.channel_coverage = parse_ratio(blk.find("CHANNEL_COVERAGE"), blk.index);
    } else if (blk.kind == "CHECK") {
      CheckResult c;
      auto index = text::parse_uint(need(blk, "INDEX").value);
      auto outcome = parse_outcome(need(blk, "OUTCOME").value);
      auto direction = parse_direction(need(blk, "DIRECTION").value);
      auto relevance = text::parse_uint(need(blk, "RELEVANCE").value);
      auto tolerance = text::parse_uint(need(blk, "TOLERANCE").value);
      if (!index || !outcome || !direction || !relevance || *relevance > 1 || !tolerance) {
        throw Error(ErrorCode::kMalformedBlock, fmt::format("block {}: malformed CHECK", blk.index));
      }
      c.expectation_index = *index;
      c.outcome = *outcome;
      c.expectation.source = Endpoint::named(need(blk, "SOURCE").value);
      c.expectation.direction = *direction;
      c.expectation.name = need(blk, "NAME").value;
      c.expectation.type_tag = need(blk, "TYPE").value;
      c.expectation.relevance = static_cast<int>(*relevance);
      c.expectation.tolerance = *tolerance;
      c.expectation.expected = decode_payload(need(blk, "EXPECTED").value);
      c.detail = need(blk, "DETAIL").value;
      std::vector<const text::Field*> matched;
      for (const auto& f : blk.fields) {
        if (f.key.rfind("MATCHED_", 0) == 0) matched.push_back(&f);
      }
      if (!matched.empty()) c.matched_record = record_from_fields(matched, 8, blk.index);
      b.verdict.checks.push_back(std::move(c));
    } else if (blk.kind == "UNEXPECTED") {
      std::vector<const text::Field*> fields;
      for (const auto& f : blk.fields) fields.push_back(&f);
      b.verdict.unexpected.push_back(record_from_fields(fields, 0, blk.index));
    } else {
      throw Error(ErrorCode::kUnknownBlockType, fmt::format("block {}: unknown block type '{}'", blk.index, blk.kind));
    }
  }
  if (!saw_summary) throw Error(ErrorCode::kMalformedBlock, "results file has no SUMMARY block");
  return b;
}

}  // namespace tut

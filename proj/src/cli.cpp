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

#include "tut/cli.hpp"

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <fmt/format.h>
#include <fmt/ostream.h>

#include "tut/analyzer.hpp"
#include "tut/behaviors.hpp"
#include "tut/report.hpp"
#include "tut/runtime.hpp"
#include "tut/scenario.hpp"
#include "tut/statechart.hpp"
#include "tut/testgen.hpp"

namespace tut {

namespace fs = std::filesystem;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, fmt::format("cannot open {}", path));
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// Writes next to the destination, then renames over it.
void write_file_atomic(const fs::path& path, const std::string& content) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::kIo, fmt::format("cannot write {}", tmp.string()));
    out << content;
    if (!out.flush()) throw Error(ErrorCode::kIo, fmt::format("write to {} failed", tmp.string()));
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) throw Error(ErrorCode::kIo, fmt::format("cannot rename {} to {}: {}", tmp.string(), path.string(), ec.message()));
}

/// Prefixes parser failures with the file they came from.
template <typename F>
auto with_file(const std::string& path, F&& f) {
  try {
    return f(read_file(path));
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kIo) throw;
    throw Error(e.code(), fmt::format("{}: {}", path, e.message()), e.diagnostics());
  }
}

Scenario load_scenario(const std::string& path, std::ostream& err) {
  auto parsed = with_file(path, [](const std::string& t) { return parse_scenario(t); });
  for (const auto& w : parsed.warnings) fmt::print(err, "warning: {}: {}\n", path, w.str());
  return parsed.scenario;
}

InterfaceSpec load_interface(const std::string& path) {
  return with_file(path, [](const std::string& t) { return parse_interface(t); });
}

StateChart load_chart(const std::string& path) {
  return with_file(path, [](const std::string& t) { return parse_statechart(t); });
}

enum class Format { kHtml, kJunit, kBoth };

bool wants_html(Format f) { return f != Format::kJunit; }
bool wants_junit(Format f) { return f != Format::kHtml; }

std::string stem_of(const std::string& path) { return fs::path(path).stem().string(); }

struct Analysis {
  ReportBundle bundle;
  std::vector<LogRecord> annotated;
};

Analysis analyze(const std::vector<LogRecord>& records, const Scenario& scenario, const InterfaceSpec* spec,
                 bool strict, const std::string& stamp) {
  auto matched = match_trace(records, scenario, spec);
  Analysis a;
  a.bundle.coverage = compute_coverage(matched.checks, records, spec);
  a.annotated = annotate_log(records, matched.checks, stamp);
  a.bundle.verdict = compute_verdict(std::move(matched.checks), std::move(matched.unexpected), strict);
  a.bundle.scenario_title = scenario.title;
  a.bundle.run_stamp = stamp;
  return a;
}

void write_reports(const fs::path& dir, const std::string& stem, const ReportBundle& bundle, Format format) {
  if (wants_html(format)) write_file_atomic(dir / (stem + ".html"), render_html(bundle));
  if (wants_junit(format)) write_file_atomic(dir / (stem + ".junit.xml"), render_junit(bundle));
}

void print_summary(std::ostream& out, std::string_view label, const ReportBundle& b) {
  std::size_t pass = 0;
  std::size_t fail = 0;
  std::size_t missing = 0;
  std::size_t info = 0;
  for (const auto& c : b.verdict.checks) {
    switch (c.outcome) {
      case Outcome::kPass: ++pass; break;
      case Outcome::kFail: ++fail; break;
      case Outcome::kMissing: ++missing; break;
      case Outcome::kInfo: ++info; break;
    }
  }
  fmt::print(out,
             "{}: {} (pass {}, fail {}, missing {}, info {}, unexpected {}; fail rate {:.3f}, expectation coverage "
             "{:.3f}, channel coverage {:.3f})\n",
             label, to_string(b.verdict.overall), pass, fail, missing, info, b.verdict.unexpected.size(),
             b.coverage.fail_rate, b.coverage.expectation_coverage, b.coverage.channel_coverage);
}

struct CommonFlags {
  std::string out_dir = ".";
  std::string format = "both";
  std::string stamp;
  bool strict = false;
  std::uint64_t tick_period_ms = 0;

  Format parsed_format() const {
    if (format == "html") return Format::kHtml;
    if (format == "junit") return Format::kJunit;
    return Format::kBoth;
  }
  std::string effective_stamp() const {
    if (stamp.empty()) return current_time_stamp();
    if (!is_valid_time_stamp(stamp)) {
      throw Error(ErrorCode::kUsage, fmt::format("--stamp '{}' is not YYYY.MM.DD_HH:MM:SS", stamp));
    }
    return stamp;
  }
  std::optional<std::uint64_t> period() const {
    if (tick_period_ms == 0) return std::nullopt;
    return tick_period_ms;
  }
};

void add_format(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("--format", f.format, "Report formats to write")
      ->check(CLI::IsMember({"html", "junit", "both"}))
      ->capture_default_str();
}

void add_stamp(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("--stamp", f.stamp, "TIME value for records (YYYY.MM.DD_HH:MM:SS); default: now");
}

void add_period(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("--tick-period-ms", f.tick_period_ms, "Timer period in ms (overrides scenario and behavior)")
      ->check(CLI::PositiveNumber);
}

int run_simulate(const std::string& scenario_path, const std::string& spec_path, const std::string& behavior_id,
                 const std::string& model_path, const std::string& output, std::size_t livelock_cap,
                 const CommonFlags& flags, std::ostream& out, std::ostream& err) {
  Scenario scenario = load_scenario(scenario_path, err);
  InterfaceSpec spec = load_interface(spec_path);
  auto issues = validate_scenario(scenario, spec);
  if (!issues.empty()) {
    throw Error(ErrorCode::kSpecMismatch, fmt::format("{}: block {}: {}", scenario_path, issues.front().block,
                                                      issues.front().reason));
  }
  std::optional<Lts> model;
  if (!model_path.empty()) model = flatten(load_chart(model_path));
  auto behavior = make_behavior(behavior_id, spec, model ? &*model : nullptr);
  Environment env = generate_environment(spec);
  RunOptions opts;
  opts.run_stamp = flags.effective_stamp();
  opts.timer_period_ms = flags.period();
  opts.livelock_cap = livelock_cap;
  Trace trace = run_simulation(scenario, *behavior, env, opts);

  fs::path dest = output.empty() ? fs::path(flags.out_dir) / (stem_of(scenario_path) + ".tutlog") : fs::path(output);
  write_file_atomic(dest, serialize_log(trace.records));
  fmt::print(out, "{}: {} records, {} ms simulated\n", dest.string(), trace.records.size(), trace.duration_ms);
  return kExitPass;
}

int run_analyze(const std::string& log_path, const std::string& scenario_path, const std::string& spec_path,
                const CommonFlags& flags, std::ostream& out, std::ostream& err) {
  auto parsed = with_file(log_path, [](const std::string& t) { return parse_log(t, ParseMode::kLenient); });
  for (const auto& d : parsed.diagnostics) fmt::print(err, "warning: {}: {}\n", log_path, d.str());
  Scenario scenario = load_scenario(scenario_path, err);
  std::optional<InterfaceSpec> spec;
  if (!spec_path.empty()) spec = load_interface(spec_path);

  auto analysis = analyze(parsed.records, scenario, spec ? &*spec : nullptr, flags.strict, flags.effective_stamp());
  fs::path dir(flags.out_dir);
  std::string stem = stem_of(log_path);
  write_file_atomic(dir / (stem + ".tutres"), serialize_results(analysis.bundle));
  write_file_atomic(dir / (stem + ".annotated.tutlog"), serialize_log(analysis.annotated));
  write_reports(dir, stem, analysis.bundle, flags.parsed_format());
  print_summary(out, stem, analysis.bundle);
  return analysis.bundle.verdict.overall == Overall::kPass ? kExitPass : kExitVerdictFail;
}

InterfaceSpec interface_for(const Lts& lts, const std::string& spec_path) {
  if (!spec_path.empty()) return load_interface(spec_path);
  return derive_interface(lts);
}

int run_testgen(const std::string& model_path, const std::string& spec_path, const CommonFlags& flags,
                std::ostream& out) {
  Lts lts = flatten(load_chart(model_path));
  InterfaceSpec spec = interface_for(lts, spec_path);
  TestGenOptions opts;
  if (flags.tick_period_ms) opts.tick_period_ms = flags.tick_period_ms;
  opts.title_prefix = stem_of(model_path);
  auto suite = generate_tests(lts, spec, opts);
  fs::path dir(flags.out_dir);
  for (std::size_t i = 0; i < suite.scenarios.size(); ++i) {
    write_file_atomic(dir / fmt::format("{}_{:03}.tutsc", stem_of(model_path), i + 1),
                      serialize_scenario(suite.scenarios[i]));
  }
  if (spec_path.empty()) write_file_atomic(dir / (stem_of(model_path) + ".tutif"), serialize_interface(spec));
  fmt::print(out, "{} scenario(s), model coverage {:.3f}, {} uncoverable edge(s)\n", suite.scenarios.size(),
             model_coverage(suite.scenarios, lts), suite.uncoverable_edges.size());
  for (auto e : suite.uncoverable_edges) {
    fmt::print(out, "uncoverable: {} -> {} on {}\n", lts.nodes[lts.edges[e].from], lts.nodes[lts.edges[e].to],
               lts.edges[e].trigger.name);
  }
  return kExitPass;
}

int run_explore(const std::string& model_path, std::ostream& out) {
  Lts lts = flatten(load_chart(model_path));
  auto report = explore(lts);
  auto names = [&](const std::vector<std::size_t>& ids) {
    std::string s;
    for (auto id : ids) {
      if (!s.empty()) s += ' ';
      s += lts.nodes[id];
    }
    return s.empty() ? std::string("-") : s;
  };
  fmt::print(out, "states: {}\n", lts.nodes.size());
  fmt::print(out, "edges: {}\n", lts.edges.size());
  fmt::print(out, "initial: {}\n", lts.nodes[lts.initial]);
  fmt::print(out, "reachable: {}\n", names(report.reachable));
  fmt::print(out, "unreachable: {}\n", names(report.unreachable));
  fmt::print(out, "deadlocks: {}\n", names(report.deadlocks));
  fmt::print(out, "explored edges: {}\n", report.edge_count);
  return kExitPass;
}

int run_report(const std::string& results_path, const CommonFlags& flags, std::ostream& out) {
  ReportBundle bundle = with_file(results_path, [](const std::string& t) { return parse_results(t); });
  write_reports(fs::path(flags.out_dir), stem_of(results_path), bundle, flags.parsed_format());
  print_summary(out, stem_of(results_path), bundle);
  return bundle.verdict.overall == Overall::kPass ? kExitPass : kExitVerdictFail;
}

int run_pipeline(const std::string& model_path, const std::string& spec_path, const CommonFlags& flags,
                 std::ostream& out) {
  Lts lts = flatten(load_chart(model_path));
  InterfaceSpec spec = interface_for(lts, spec_path);
  TestGenOptions gen;
  if (flags.tick_period_ms) gen.tick_period_ms = flags.tick_period_ms;
  std::string stem = stem_of(model_path);
  gen.title_prefix = stem;
  auto suite = generate_tests(lts, spec, gen);
  Environment env = generate_environment(spec);
  RunOptions run;
  run.run_stamp = flags.effective_stamp();

  fs::path dir(flags.out_dir);
  std::vector<ReportBundle> bundles;
  bool all_pass = true;
  for (std::size_t i = 0; i < suite.scenarios.size(); ++i) {
    const Scenario& sc = suite.scenarios[i];
    std::string name = fmt::format("{}_{:03}", stem, i + 1);
    ModelBehavior behavior(lts);
    Trace trace = run_simulation(sc, behavior, env, run);
    auto analysis = analyze(trace.records, sc, &spec, flags.strict, run.run_stamp);
    write_file_atomic(dir / (name + ".tutsc"), serialize_scenario(sc));
    write_file_atomic(dir / (name + ".tutlog"), serialize_log(trace.records));
    write_file_atomic(dir / (name + ".tutres"), serialize_results(analysis.bundle));
    if (wants_html(flags.parsed_format())) write_file_atomic(dir / (name + ".html"), render_html(analysis.bundle));
    print_summary(out, name, analysis.bundle);
    all_pass = all_pass && analysis.bundle.verdict.overall == Overall::kPass;
    bundles.push_back(std::move(analysis.bundle));
  }
  if (wants_junit(flags.parsed_format())) write_file_atomic(dir / (stem + ".junit.xml"), render_junit(bundles));
  fmt::print(out, "model coverage {:.3f} over {} scenario(s); overall {}\n", model_coverage(suite.scenarios, lts),
             suite.scenarios.size(), all_pass ? "PASS" : "FAIL");
  return all_pass ? kExitPass : kExitVerdictFail;
}

}  // namespace

int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Unit verification harness for message-passing tasks", "tutctl"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kToolVersion));

  CommonFlags flags;
  std::string scenario_path, spec_path, behavior_id, model_path, output, log_path, results_path;
  std::size_t livelock_cap = kDefaultLivelockCap;

  auto* simulate = app.add_subcommand("simulate", "Run a scenario against a built-in behavior and write a .tutlog");
  simulate->add_option("scenario", scenario_path, "Scenario file (.tutsc)")->required()->check(CLI::ExistingFile);
  simulate->add_option("--spec", spec_path, "Interface file (.tutif)")->required()->check(CLI::ExistingFile);
  simulate->add_option("--behavior", behavior_id, "Behavior id")
      ->required()
      ->check(CLI::IsMember(std::vector<std::string>{"echo-to-cm", "timer-heartbeat", "model"}));
  simulate->add_option("--model", model_path, "State chart for the model behavior (.tutsm)")->check(CLI::ExistingFile);
  simulate->add_option("-o,--output", output, "Output log path (default: <out-dir>/<scenario>.tutlog)");
  simulate->add_option("--out-dir", flags.out_dir, "Output directory")->capture_default_str();
  simulate->add_option("--livelock-cap", livelock_cap, "Handler activations allowed per tick")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  add_period(simulate, flags);
  add_stamp(simulate, flags);

  auto* analyze_cmd = app.add_subcommand("analyze", "Check a .tutlog against a scenario's expectations");
  analyze_cmd->add_option("log", log_path, "Log file (.tutlog)")->required()->check(CLI::ExistingFile);
  analyze_cmd->add_option("scenario", scenario_path, "Scenario file (.tutsc)")->required()->check(CLI::ExistingFile);
  analyze_cmd->add_option("--spec", spec_path, "Interface file (.tutif)")->check(CLI::ExistingFile);
  analyze_cmd->add_flag("--strict", flags.strict, "Unexpected messages fail the verdict");
  analyze_cmd->add_option("--out-dir", flags.out_dir, "Output directory")->capture_default_str();
  add_format(analyze_cmd, flags);
  add_stamp(analyze_cmd, flags);

  auto* testgen = app.add_subcommand("testgen", "Generate all-transitions scenarios from a state chart");
  testgen->add_option("model", model_path, "State chart (.tutsm)")->required()->check(CLI::ExistingFile);
  testgen->add_option("--spec", spec_path, "Interface file (.tutif); derived from the model when absent")
      ->check(CLI::ExistingFile);
  testgen->add_option("--out-dir", flags.out_dir, "Output directory")->capture_default_str();
  add_period(testgen, flags);

  auto* explore_cmd = app.add_subcommand("explore", "Report reachable, unreachable and deadlock states");
  explore_cmd->add_option("model", model_path, "State chart (.tutsm)")->required()->check(CLI::ExistingFile);

  auto* report = app.add_subcommand("report", "Render HTML and/or JUnit XML from a .tutres file");
  report->add_option("results", results_path, "Results file (.tutres)")->required()->check(CLI::ExistingFile);
  report->add_option("--out-dir", flags.out_dir, "Output directory")->capture_default_str();
  add_format(report, flags);

  auto* run = app.add_subcommand("run", "testgen, then simulate and analyze each scenario against the model");
  run->add_option("model", model_path, "State chart (.tutsm)")->required()->check(CLI::ExistingFile);
  run->add_option("--spec", spec_path, "Interface file (.tutif); derived from the model when absent")
      ->check(CLI::ExistingFile);
  run->add_flag("--strict", flags.strict, "Unexpected messages fail the verdict");
  run->add_option("--out-dir", flags.out_dir, "Output directory")->capture_default_str();
  add_format(run, flags);
  add_period(run, flags);
  add_stamp(run, flags);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitPass : kExitError;
  }

  try {
    if (*simulate) {
      return run_simulate(scenario_path, spec_path, behavior_id, model_path, output, livelock_cap, flags, out, err);
    }
    if (*analyze_cmd) return run_analyze(log_path, scenario_path, spec_path, flags, out, err);
    if (*testgen) return run_testgen(model_path, spec_path, flags, out);
    if (*explore_cmd) return run_explore(model_path, out);
    if (*report) return run_report(results_path, flags, out);
    if (*run) return run_pipeline(model_path, spec_path, flags, out);
  } catch (const Error& e) {
    fmt::print(err, "error: {}\n", e.what());
    return kExitError;
  } catch (const std::exception& e) {
    fmt::print(err, "error: {}\n", e.what());
    return kExitError;
  }
  return kExitError;
}

}  // namespace tut

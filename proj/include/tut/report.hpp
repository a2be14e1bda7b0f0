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

// Report artifacts: a self-contained HTML page, JUnit-style XML for CI
// runners, and the .tutres results file that carries a bundle between the
// `analyze` and `report` commands.

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tut/analyzer.hpp"

namespace tut {

inline constexpr std::string_view kToolVersion = "0.3.0";

struct ReportBundle {
  Verdict verdict;
  CoverageMetrics coverage;
  std::string scenario_title;
  std::string run_stamp;  // TIME format
  std::string tool_version{kToolVersion};

  friend bool operator==(const ReportBundle&, const ReportBundle&) = default;
};

/// Single document, inline CSS, no scripts or external assets. One
/// `<tr class="check ...">` row per CheckResult.
std::string render_html(const ReportBundle& bundle);

/// One <testsuite> per bundle inside a <testsuites> root. Every check is a
/// testcase; relevance-0 checks are skipped, FAIL and MISSING carry a
/// <failure>. In strict mode, unexpected traffic adds one failing testcase.
std::string render_junit(std::span<const ReportBundle> bundles);
std::string render_junit(const ReportBundle& bundle);

std::string serialize_results(const ReportBundle& bundle);
ReportBundle parse_results(std::string_view text);

std::string html_escape(std::string_view s);

}  // namespace tut

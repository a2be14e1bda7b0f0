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

// All-transitions test generation over a flattened model.

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "tut/interface.hpp"
#include "tut/scenario.hpp"
#include "tut/statechart.hpp"

namespace tut {

struct TestGenOptions {
  std::uint64_t tick_period_ms = kDefaultTimerPeriodMs;
  /// Longest path per scenario before a new one is started.
  std::size_t max_steps = 1000;
  std::string title_prefix = "generated";
};

struct GeneratedSuite {
  std::vector<Scenario> scenarios;
  /// Edge indices walked by each scenario, in path order.
  std::vector<std::vector<std::size_t>> paths;
  /// Edges that leave unreachable nodes and so cannot be covered.
  std::vector<std::size_t> uncoverable_edges;
};

/// Every trigger must name a declared inbound channel and every output a
/// declared outbound stream, with matching type tags; otherwise throws
/// Error(kUndeclaredChannel).
void check_model_against(const Lts& lts, const InterfaceSpec& spec);

/// Each scenario starts at the initial node and repeatedly walks the
/// shortest path to the nearest still-uncovered edge, taking it, until no
/// uncovered edge is reachable from where it stands. Trigger i of a path is
/// injected at tick (i + 1) * tick_period_ms and every output of every
/// walked edge becomes a relevance-1, tolerance-0 expectation in path order.
GeneratedSuite generate_tests(const Lts& lts, const InterfaceSpec& spec, const TestGenOptions& options = {});

/// Reachable edges exercised by replaying the scenarios' injections on the
/// model, over all reachable edges. 1.0 when there are no reachable edges.
double model_coverage(const std::vector<Scenario>& scenarios, const Lts& lts);

/// Smallest interface under which `lts` is well formed: one inbound channel
/// per trigger stream, one outbound channel per output stream, and a CM
/// slot sized to the largest payload for every output to CM.
InterfaceSpec derive_interface(const Lts& lts, const std::string& tut_name = "TUT");

}  // namespace tut

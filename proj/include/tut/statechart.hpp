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

// Hierarchical state charts (.tutsm) and their flat labelled transition
// systems.
//
// Only OR-composition is supported: a state may have a parent, and every
// composite state names exactly one initial child. Triggers match on
// (source, name, type, payload) exactly; there are no guards or variables.
//
//   STATE
//   NAME: IDLE
//   INITIAL: yes
//
//   STATE
//   NAME: IDLE_WAIT
//   PARENT: IDLE
//   INITIAL: yes
//
//   TRANSITION
//   FROM: IDLE
//   TO: RUNNING
//   TRIGGER_SOURCE: KEYPAD
//   TRIGGER_NAME: START_BTN
//   TRIGGER_TYPE: D_BTN
//   TRIGGER_PAYLOAD: 01000000
//   OUTPUT_SOURCE: CM
//   OUTPUT_DIRECTION: OUT
//   OUTPUT_NAME: D_STATE
//   OUTPUT_TYPE: D_STATE
//   OUTPUT_PAYLOAD: 02000000
//
// OUTPUT_* keys repeat, one group per output, each group opened by
// OUTPUT_SOURCE. TRIGGER_SOURCE defaults to ENV, OUTPUT_DIRECTION to OUT.

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tut/payload.hpp"
#include "tut/trace.hpp"

namespace tut {

inline constexpr std::string_view kDefaultTriggerSource = "ENV";

struct Trigger {
  Endpoint source;
  std::string name;
  std::string type_tag;
  Payload payload;

  friend bool operator==(const Trigger&, const Trigger&) = default;
};

/// Expected outbound message produced by taking a transition.
struct Output {
  Endpoint source;
  Direction direction = Direction::kOut;
  std::string name;
  std::string type_tag;
  Payload payload;

  friend bool operator==(const Output&, const Output&) = default;
};

struct ChartState {
  std::string name;
  std::optional<std::string> parent;
  bool initial = false;

  friend bool operator==(const ChartState&, const ChartState&) = default;
};

struct Transition {
  std::string from;
  std::string to;
  Trigger trigger;
  std::vector<Output> outputs;

  friend bool operator==(const Transition&, const Transition&) = default;
};

struct StateChart {
  std::vector<ChartState> states;
  /// The root-level state marked initial.
  std::string initial;
  std::vector<Transition> transitions;

  const ChartState* find(std::string_view name) const;
  std::vector<std::string> children(std::string_view name) const;
  bool is_leaf(std::string_view name) const;
  /// Follows initial children down to a leaf.
  std::string initial_leaf(std::string_view name) const;
  /// Leaf states under `name`, or `name` itself when it is a leaf, in
  /// declaration order.
  std::vector<std::string> leaves_under(std::string_view name) const;
  /// `name` followed by its ancestors, innermost first.
  std::vector<std::string> ancestry(std::string_view name) const;

  friend bool operator==(const StateChart&, const StateChart&) = default;
};

/// Throws Error with kUnknownState, kMultipleInitial, kMissingInitial,
/// kCyclicParent, kNondeterministicTrigger or kMalformedBlock. Sets nothing;
/// `chart.initial` must already agree with the INITIAL markers.
void validate_chart(const StateChart& chart);

StateChart parse_statechart(std::string_view text);
std::string serialize_statechart(const StateChart& chart);

/// Canonical text key for trigger equality.
std::string trigger_key(const Trigger& t);

struct LtsEdge {
  std::size_t from = 0;
  std::size_t to = 0;
  Trigger trigger;
  std::vector<Output> outputs;

  friend bool operator==(const LtsEdge&, const LtsEdge&) = default;
};

struct Lts {
  std::vector<std::string> nodes;
  std::vector<LtsEdge> edges;
  std::size_t initial = 0;

  /// Index of the edge leaving `node` on `trigger`, if any.
  std::optional<std::size_t> step(std::size_t node, const Trigger& trigger) const;
  std::optional<std::size_t> node_index(std::string_view name) const;

  friend bool operator==(const Lts&, const Lts&) = default;
};

/// Throws Error(kNondeterministicTrigger) for two edges on one
/// (node, trigger) pair and Error(kUnknownState) for dangling indices.
void validate_lts(const Lts& lts);

/// Nodes are the leaf states in declaration order. A transition leaving a
/// composite state becomes one edge per leaf below it; entering a composite
/// lands on its initial leaf. Throws Error(kNondeterministicTrigger) when
/// the expansion gives a leaf two edges on the same trigger.
Lts flatten(const StateChart& chart);

struct ExplorationReport {
  std::vector<std::size_t> reachable;    // sorted node indices
  std::vector<std::size_t> unreachable;  // sorted
  std::vector<std::size_t> deadlocks;    // reachable, no outgoing edge; sorted
  /// Edges leaving reachable nodes.
  std::size_t edge_count = 0;

  friend bool operator==(const ExplorationReport&, const ExplorationReport&) = default;
};

/// Breadth-first reachability from the initial node.
ExplorationReport explore(const Lts& lts);

}  // namespace tut

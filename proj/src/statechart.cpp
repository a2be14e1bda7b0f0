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

#include "tut/statechart.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

#include <fmt/format.h>

#include "tut/text.hpp"

namespace tut {

const ChartState* StateChart::find(std::string_view name) const {
  for (const auto& s : states) {
    if (s.name == name) return &s;
  }
  return nullptr;
}

std::vector<std::string> StateChart::children(std::string_view name) const {
  std::vector<std::string> out;
  for (const auto& s : states) {
    if (s.parent && *s.parent == name) out.push_back(s.name);
  }
  return out;
}

bool StateChart::is_leaf(std::string_view name) const {
  return std::none_of(states.begin(), states.end(), [&](const ChartState& s) { return s.parent && *s.parent == name; });
}

std::string StateChart::initial_leaf(std::string_view name) const {
  std::string current(name);
  // Bounded by the state count so malformed charts cannot spin.
  for (std::size_t guard = 0; guard <= states.size(); ++guard) {
    std::optional<std::string> next;
    for (const auto& s : states) {
      if (s.parent && *s.parent == current && s.initial) {
        next = s.name;
        break;
      }
    }
    if (!next) return current;
    current = *next;
  }
  return current;
}

std::vector<std::string> StateChart::leaves_under(std::string_view name) const {
  std::vector<std::string> out;
  for (const auto& s : states) {
    if (!is_leaf(s.name)) continue;
    auto chain = ancestry(s.name);
    if (std::find(chain.begin(), chain.end(), name) != chain.end()) out.push_back(s.name);
  }
  return out;
}

std::vector<std::string> StateChart::ancestry(std::string_view name) const {
  std::vector<std::string> out;
  const ChartState* s = find(name);
  while (s && out.size() <= states.size()) {
    out.push_back(s->name);
    s = s->parent ? find(*s->parent) : nullptr;
  }
  return out;
}

std::string trigger_key(const Trigger& t) {
  return fmt::format("{}|{}|{}|{}", t.source.name, t.name, t.type_tag, encode_payload(t.payload));
}

void validate_chart(const StateChart& chart) {
  std::set<std::string> names;
  for (const auto& s : chart.states) {
    if (!text::is_identifier(s.name)) {
      throw Error(ErrorCode::kMalformedBlock, fmt::format("bad state name '{}'", s.name));
    }
    if (!names.insert(s.name).second) {
      throw Error(ErrorCode::kMalformedBlock, fmt::format("state {} declared twice", s.name));
    }
  }
  if (chart.states.empty()) throw Error(ErrorCode::kMissingInitial, "chart declares no states");
  for (const auto& s : chart.states) {
    if (s.parent && !names.count(*s.parent)) {
      throw Error(ErrorCode::kUnknownState, fmt::format("state {} has unknown parent {}", s.name, *s.parent));
    }
  }
  for (const auto& s : chart.states) {
    std::set<std::string> visited{s.name};
    const ChartState* cur = &s;
    while (cur->parent) {
      if (!visited.insert(*cur->parent).second) {
        throw Error(ErrorCode::kCyclicParent, fmt::format("parent chain of {} is cyclic", s.name));
      }
      cur = chart.find(*cur->parent);
    }
  }

  std::map<std::string, std::vector<std::string>> initial_children;  // "" = root
  for (const auto& s : chart.states) {
    if (s.initial) initial_children[s.parent.value_or("")].push_back(s.name);
  }
  auto check_initial = [&](const std::string& scope, std::string_view what) {
    const auto& list = initial_children[scope];
    if (list.empty()) throw Error(ErrorCode::kMissingInitial, fmt::format("{} has no initial state", what));
    if (list.size() > 1) {
      throw Error(ErrorCode::kMultipleInitial,
                  fmt::format("{} has {} initial states ({}, {})", what, list.size(), list[0], list[1]));
    }
  };
  check_initial("", "the chart root");
  for (const auto& s : chart.states) {
    if (!chart.is_leaf(s.name)) check_initial(s.name, fmt::format("composite state {}", s.name));
  }
  if (chart.initial != initial_children[""].front()) {
    throw Error(ErrorCode::kMultipleInitial,
                fmt::format("chart initial {} disagrees with INITIAL marker on {}", chart.initial,
                            initial_children[""].front()));
  }

  std::set<std::pair<std::string, std::string>> seen;
  for (const auto& t : chart.transitions) {
    if (!names.count(t.from)) throw Error(ErrorCode::kUnknownState, fmt::format("transition from unknown state {}", t.from));
    if (!names.count(t.to)) throw Error(ErrorCode::kUnknownState, fmt::format("transition to unknown state {}", t.to));
    if (!text::is_identifier(t.trigger.name) || !text::is_identifier(t.trigger.type_tag) ||
        !text::is_identifier(t.trigger.source.name)) {
      throw Error(ErrorCode::kMalformedBlock, fmt::format("transition {} -> {} has a malformed trigger", t.from, t.to));
    }
    for (const auto& o : t.outputs) {
      if (o.direction != Direction::kOut) {
        throw Error(ErrorCode::kMalformedBlock,
                    fmt::format("transition {} -> {}: outputs must be OUT messages", t.from, t.to));
      }
      if (!text::is_identifier(o.name) || !text::is_identifier(o.type_tag) || !text::is_identifier(o.source.name)) {
        throw Error(ErrorCode::kMalformedBlock, fmt::format("transition {} -> {} has a malformed output", t.from, t.to));
      }
    }
    if (!seen.emplace(t.from, trigger_key(t.trigger)).second) {
      throw Error(ErrorCode::kNondeterministicTrigger,
                  fmt::format("state {} has two transitions on trigger {}", t.from, t.trigger.name));
    }
  }
}

namespace {

class ChartReader {
 public:
  StateChart read(std::string_view input) {
    auto blocks = text::read_typed_blocks(input, diags_);
    for (const auto& b : blocks) {
      if (b.kind == "STATE") {
        read_state(b);
      } else if (b.kind == "TRANSITION") {
        read_transition(b);
      } else {
        if (diags_.empty()) code_ = ErrorCode::kUnknownBlockType;
        diags_.push_back({b.line, b.index, fmt::format("unknown block type '{}'", b.kind)});
      }
    }
    if (!diags_.empty()) throw Error(code_, "invalid state chart", std::move(diags_));
    for (const auto& s : chart_.states) {
      if (s.initial && !s.parent) {
        if (!chart_.initial.empty()) {
          throw Error(ErrorCode::kMultipleInitial,
                      fmt::format("root states {} and {} are both initial", chart_.initial, s.name));
        }
        chart_.initial = s.name;
      }
    }
    if (chart_.initial.empty()) throw Error(ErrorCode::kMissingInitial, "no root state is marked INITIAL: yes");
    validate_chart(chart_);
    return std::move(chart_);
  }

 private:
  std::string value_of(const text::TypedBlock& b, std::string_view key, bool required) {
    const auto* f = b.find(key);
    if (!f) {
      if (required) diags_.push_back({b.line, b.index, fmt::format("{} block missing {}", b.kind, key)});
      return {};
    }
    return f->value;
  }

  Payload payload_of(const text::Field& f, std::size_t block) {
    try {
      return decode_payload(f.value);
    } catch (const Error& e) {
      diags_.push_back({f.line, block, fmt::format("bad {}: {}", f.key, e.what())});
      return {};
    }
  }

  Endpoint endpoint_of(const text::Field& f, std::size_t block) {
    if (!text::is_identifier(f.value)) {
      diags_.push_back({f.line, block, fmt::format("bad {} '{}'", f.key, f.value)});
      return {};
    }
    return Endpoint::named(f.value);
  }

  void read_state(const text::TypedBlock& b) {
    ChartState s;
    std::set<std::string> seen;
    for (const auto& f : b.fields) {
      if (!seen.insert(f.key).second) diags_.push_back({f.line, b.index, fmt::format("duplicate key {}", f.key)});
      if (f.key == "NAME") {
        s.name = f.value;
      } else if (f.key == "PARENT") {
        if (!f.value.empty()) s.parent = f.value;
      } else if (f.key == "INITIAL") {
        if (f.value == "yes") s.initial = true;
        else if (f.value != "no") diags_.push_back({f.line, b.index, "INITIAL must be yes or no"});
      } else {
        diags_.push_back({f.line, b.index, fmt::format("unexpected key {} in STATE block", f.key)});
      }
    }
    if (s.name.empty()) diags_.push_back({b.line, b.index, "STATE block missing NAME"});
    chart_.states.push_back(std::move(s));
  }

  void read_transition(const text::TypedBlock& b) {
    Transition t;
    t.trigger.source = Endpoint::named(kDefaultTriggerSource);
    std::set<std::string> seen;
    std::set<std::string> group_keys;
    bool in_group = false;
    for (const auto& f : b.fields) {
      if (f.key.rfind("OUTPUT_", 0) == 0) {
        if (f.key == "OUTPUT_SOURCE") {
          t.outputs.emplace_back();
          t.outputs.back().source = endpoint_of(f, b.index);
          group_keys = {f.key};
          in_group = true;
          continue;
        }
        if (!in_group) {
          diags_.push_back({f.line, b.index, fmt::format("{} before OUTPUT_SOURCE", f.key)});
          continue;
        }
        if (!group_keys.insert(f.key).second) {
          diags_.push_back({f.line, b.index, fmt::format("duplicate {} in one output group", f.key)});
          continue;
        }
        Output& o = t.outputs.back();
        if (f.key == "OUTPUT_DIRECTION") {
          if (auto d = parse_direction(f.value)) o.direction = *d;
          else diags_.push_back({f.line, b.index, fmt::format("bad OUTPUT_DIRECTION '{}'", f.value)});
        } else if (f.key == "OUTPUT_NAME") {
          o.name = f.value;
        } else if (f.key == "OUTPUT_TYPE") {
          o.type_tag = f.value;
        } else if (f.key == "OUTPUT_PAYLOAD") {
          o.payload = payload_of(f, b.index);
        } else {
          diags_.push_back({f.line, b.index, fmt::format("unexpected key {}", f.key)});
        }
        continue;
      }
      if (!seen.insert(f.key).second) {
        diags_.push_back({f.line, b.index, fmt::format("duplicate key {}", f.key)});
        continue;
      }
      if (f.key == "FROM") t.from = f.value;
      else if (f.key == "TO") t.to = f.value;
      else if (f.key == "TRIGGER_SOURCE") t.trigger.source = endpoint_of(f, b.index);
      else if (f.key == "TRIGGER_NAME") t.trigger.name = f.value;
      else if (f.key == "TRIGGER_TYPE") t.trigger.type_tag = f.value;
      else if (f.key == "TRIGGER_PAYLOAD") t.trigger.payload = payload_of(f, b.index);
      else diags_.push_back({f.line, b.index, fmt::format("unexpected key {} in TRANSITION block", f.key)});
    }
    for (const char* key : {"FROM", "TO", "TRIGGER_NAME", "TRIGGER_TYPE"}) {
      if (!seen.count(key)) diags_.push_back({b.line, b.index, fmt::format("TRANSITION block missing {}", key)});
    }
    for (const auto& o : t.outputs) {
      if (o.name.empty() || o.type_tag.empty()) {
        diags_.push_back({b.line, b.index, "output group needs OUTPUT_NAME and OUTPUT_TYPE"});
        break;
      }
    }
    chart_.transitions.push_back(std::move(t));
  }

  StateChart chart_;
  std::vector<Diagnostic> diags_;
  ErrorCode code_ = ErrorCode::kMalformedBlock;
};

}  // namespace

StateChart parse_statechart(std::string_view text) { return ChartReader().read(text); }

std::string serialize_statechart(const StateChart& chart) {
  std::string out;
  bool first = true;
  auto begin = [&](std::string_view kind) {
    if (!first) out.push_back('\n');
    first = false;
    out.append(kind);
    out.push_back('\n');
  };
  for (const auto& s : chart.states) {
    begin("STATE");
    text::append_pair(out, "NAME", s.name);
    if (s.parent) text::append_pair(out, "PARENT", *s.parent);
    text::append_pair(out, "INITIAL", s.initial ? "yes" : "no");
  }
  for (const auto& t : chart.transitions) {
    begin("TRANSITION");
    text::append_pair(out, "FROM", t.from);
    text::append_pair(out, "TO", t.to);
    text::append_pair(out, "TRIGGER_SOURCE", t.trigger.source.name);
    text::append_pair(out, "TRIGGER_NAME", t.trigger.name);
    text::append_pair(out, "TRIGGER_TYPE", t.trigger.type_tag);
    text::append_pair(out, "TRIGGER_PAYLOAD", encode_payload(t.trigger.payload));
    for (const auto& o : t.outputs) {
      text::append_pair(out, "OUTPUT_SOURCE", o.source.name);
      text::append_pair(out, "OUTPUT_DIRECTION", to_string(o.direction));
      text::append_pair(out, "OUTPUT_NAME", o.name);
      text::append_pair(out, "OUTPUT_TYPE", o.type_tag);
      text::append_pair(out, "OUTPUT_PAYLOAD", encode_payload(o.payload));
    }
  }
  return out;
}

std::optional<std::size_t> Lts::step(std::size_t node, const Trigger& trigger) const {
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (edges[i].from == node && edges[i].trigger == trigger) return i;
  }
  return std::nullopt;
}

std::optional<std::size_t> Lts::node_index(std::string_view name) const {
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (nodes[i] == name) return i;
  }
  return std::nullopt;
}

void validate_lts(const Lts& lts) {
  if (lts.nodes.empty() || lts.initial >= lts.nodes.size()) {
    throw Error(ErrorCode::kUnknownState, "LTS initial node is out of range");
  }
  std::set<std::pair<std::size_t, std::string>> seen;
  for (const auto& e : lts.edges) {
    if (e.from >= lts.nodes.size() || e.to >= lts.nodes.size()) {
      throw Error(ErrorCode::kUnknownState, "LTS edge references a missing node");
    }
    if (!seen.emplace(e.from, trigger_key(e.trigger)).second) {
      throw Error(ErrorCode::kNondeterministicTrigger,
                  fmt::format("node {} has two edges on trigger {}", lts.nodes[e.from], trigger_key(e.trigger)));
    }
  }
}

Lts flatten(const StateChart& chart) {
  validate_chart(chart);
  Lts lts;
  std::map<std::string, std::size_t> index;
  for (const auto& s : chart.states) {
    if (chart.is_leaf(s.name)) {
      index.emplace(s.name, lts.nodes.size());
      lts.nodes.push_back(s.name);
    }
  }
  lts.initial = index.at(chart.initial_leaf(chart.initial));

  std::map<std::pair<std::size_t, std::string>, const Transition*> owner;
  for (const auto& t : chart.transitions) {
    std::size_t target = index.at(chart.initial_leaf(t.to));
    std::string key = trigger_key(t.trigger);
    for (const auto& leaf : chart.leaves_under(t.from)) {
      std::size_t from = index.at(leaf);
      auto [it, fresh] = owner.emplace(std::make_pair(from, key), &t);
      if (!fresh) {
        throw Error(ErrorCode::kNondeterministicTrigger,
                    fmt::format("leaf {} gets trigger {} from both {} and {}", leaf, t.trigger.name, it->second->from,
                                t.from));
      }
      lts.edges.push_back(LtsEdge{from, target, t.trigger, t.outputs});
    }
  }
  return lts;
}

ExplorationReport explore(const Lts& lts) {
  ExplorationReport report;
  if (lts.nodes.empty()) return report;
  std::vector<std::vector<std::size_t>> adjacency(lts.nodes.size());
  for (const auto& e : lts.edges) adjacency[e.from].push_back(e.to);

  std::vector<bool> seen(lts.nodes.size(), false);
  std::deque<std::size_t> frontier{lts.initial};
  seen[lts.initial] = true;
  while (!frontier.empty()) {
    std::size_t n = frontier.front();
    frontier.pop_front();
    for (std::size_t next : adjacency[n]) {
      if (!seen[next]) {
        seen[next] = true;
        frontier.push_back(next);
      }
    }
  }
  for (std::size_t n = 0; n < lts.nodes.size(); ++n) {
    if (seen[n]) {
      report.reachable.push_back(n);
      if (adjacency[n].empty()) report.deadlocks.push_back(n);
      report.edge_count += adjacency[n].size();
    } else {
      report.unreachable.push_back(n);
    }
  }
  return report;
}

}  // namespace tut

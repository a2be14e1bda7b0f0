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

#include "tut/testgen.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <set>

#include <fmt/format.h>

namespace tut {

void check_model_against(const Lts& lts, const InterfaceSpec& spec) {
  for (std::size_t i = 0; i < lts.edges.size(); ++i) {
    const auto& e = lts.edges[i];
    const Channel* in = spec.find_inbound(e.trigger.source.name, e.trigger.name);
    if (!in || in->type_tag != e.trigger.type_tag) {
      throw Error(ErrorCode::kUndeclaredChannel,
                  fmt::format("edge {} trigger ({}, {}, {}) is not a declared inbound channel", i,
                              e.trigger.source.name, e.trigger.name, e.trigger.type_tag));
    }
    for (const auto& o : e.outputs) {
      auto type = spec.type_of(o.source.name, o.direction, o.name);
      if (!type || *type != o.type_tag) {
        throw Error(ErrorCode::kUndeclaredChannel,
                    fmt::format("edge {} output ({}, {}, {}) is not a declared outbound stream", i, o.source.name,
                                o.name, o.type_tag));
      }
    }
  }
}

namespace {

constexpr std::size_t kUnreached = std::numeric_limits<std::size_t>::max();

/// BFS from `start`; returns per-node predecessor edge (kUnreached for the
/// start and for unreached nodes) and distance.
void bfs(const Lts& lts, std::size_t start, std::vector<std::size_t>& dist, std::vector<std::size_t>& via) {
  dist.assign(lts.nodes.size(), kUnreached);
  via.assign(lts.nodes.size(), kUnreached);
  dist[start] = 0;
  std::deque<std::size_t> q{start};
  while (!q.empty()) {
    std::size_t n = q.front();
    q.pop_front();
    for (std::size_t i = 0; i < lts.edges.size(); ++i) {
      const auto& e = lts.edges[i];
      if (e.from != n || dist[e.to] != kUnreached) continue;
      dist[e.to] = dist[n] + 1;
      via[e.to] = i;
      q.push_back(e.to);
    }
  }
}

Scenario scenario_for_path(const Lts& lts, const std::vector<std::size_t>& path, const TestGenOptions& options,
                           std::size_t ordinal) {
  Scenario s;
  s.title = fmt::format("{} {}", options.title_prefix, ordinal);
  s.tick_period_ms = options.tick_period_ms;
  s.duration_ms = options.tick_period_ms * path.size();
  for (std::size_t i = 0; i < path.size(); ++i) {
    const LtsEdge& e = lts.edges[path[i]];
    Injection inj;
    inj.tick_ms = options.tick_period_ms * (i + 1);
    inj.target = e.trigger.source;
    inj.name = e.trigger.name;
    inj.type_tag = e.trigger.type_tag;
    inj.payload = e.trigger.payload;
    s.injections.push_back(std::move(inj));
    for (const auto& o : e.outputs) {
      Expectation x;
      x.source = o.source;
      x.direction = o.direction;
      x.name = o.name;
      x.type_tag = o.type_tag;
      x.relevance = 1;
      x.tolerance = 0;
      x.expected = o.payload;
      s.expectations.push_back(std::move(x));
    }
  }
  return s;
}

}  // namespace

GeneratedSuite generate_tests(const Lts& lts, const InterfaceSpec& spec, const TestGenOptions& options) {
  validate_lts(lts);
  check_model_against(lts, spec);
  if (options.tick_period_ms == 0) throw Error(ErrorCode::kUsage, "tick period must be positive");
  if (options.max_steps == 0) throw Error(ErrorCode::kUsage, "max_steps must be positive");

  GeneratedSuite suite;
  auto report = explore(lts);
  std::vector<bool> reachable(lts.nodes.size(), false);
  for (auto n : report.reachable) reachable[n] = true;

  std::set<std::size_t> uncovered;
  for (std::size_t i = 0; i < lts.edges.size(); ++i) {
    if (reachable[lts.edges[i].from]) uncovered.insert(i);
    else suite.uncoverable_edges.push_back(i);
  }

  std::vector<std::size_t> dist;
  std::vector<std::size_t> via;
  while (!uncovered.empty()) {
    std::vector<std::size_t> path;
    std::size_t current = lts.initial;
    std::size_t before = uncovered.size();
    while (path.size() < options.max_steps) {
      bfs(lts, current, dist, via);
      std::size_t best = kUnreached;
      for (std::size_t edge : uncovered) {  // ascending, so ties go to the lowest index
        std::size_t d = dist[lts.edges[edge].from];
        if (d == kUnreached) continue;
        if (best == kUnreached || d < dist[lts.edges[best].from]) best = edge;
      }
      if (best == kUnreached) break;
      std::vector<std::size_t> approach;
      for (std::size_t n = lts.edges[best].from; n != current; n = lts.edges[via[n]].from) {
        approach.push_back(via[n]);
      }
      std::reverse(approach.begin(), approach.end());
      approach.push_back(best);
      for (std::size_t edge : approach) {
        if (path.size() == options.max_steps) break;
        path.push_back(edge);
        uncovered.erase(edge);
        current = lts.edges[edge].to;
      }
    }
    if (uncovered.size() == before) {
      throw Error(ErrorCode::kUsage,
                  fmt::format("max_steps {} is shorter than the path to an uncovered edge", options.max_steps));
    }
    suite.scenarios.push_back(scenario_for_path(lts, path, options, suite.scenarios.size() + 1));
    suite.paths.push_back(std::move(path));
  }
  return suite;
}

double model_coverage(const std::vector<Scenario>& scenarios, const Lts& lts) {
  auto report = explore(lts);
  std::vector<bool> reachable(lts.nodes.size(), false);
  for (auto n : report.reachable) reachable[n] = true;
  std::size_t total = 0;
  for (const auto& e : lts.edges) total += reachable[e.from] ? 1 : 0;
  if (total == 0) return 1.0;

  std::set<std::size_t> covered;
  for (const auto& s : scenarios) {
    std::size_t node = lts.initial;
    for (const auto& inj : s.injections) {
      Trigger t{inj.target, inj.name, inj.type_tag, inj.payload};
      if (auto edge = lts.step(node, t)) {
        covered.insert(*edge);
        node = lts.edges[*edge].to;
      }
    }
  }
  return static_cast<double>(covered.size()) / static_cast<double>(total);
}

InterfaceSpec derive_interface(const Lts& lts, const std::string& tut_name) {
  InterfaceSpec spec;
  spec.tut_name = tut_name;
  auto add = [](std::vector<Channel>& list, const std::string& endpoint, const std::string& name,
                const std::string& type) {
    for (const auto& c : list) {
      if (c.endpoint == endpoint && c.name == name) {
        if (c.type_tag != type) {
          throw Error(ErrorCode::kDuplicateEndpoint,
                      fmt::format("stream ({}, {}) is used with types {} and {}", endpoint, name, c.type_tag, type));
        }
        return;
      }
    }
    list.push_back(Channel{endpoint, name, type});
  };
  for (const auto& e : lts.edges) {
    add(spec.inbound, e.trigger.source.name, e.trigger.name, e.trigger.type_tag);
    for (const auto& o : e.outputs) {
      add(spec.outbound, o.source.name, o.name, o.type_tag);
      if (o.source.name == kCommonMemoryName) {
        auto it = std::find_if(spec.cm_slots.begin(), spec.cm_slots.end(),
                               [&](const CmSlot& s) { return s.name == o.name; });
        if (it == spec.cm_slots.end()) spec.cm_slots.push_back(CmSlot{o.name, o.payload.size()});
        else it->max_len = std::max(it->max_len, o.payload.size());
      }
    }
  }
  return spec;
}

}  // namespace tut

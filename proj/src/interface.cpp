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

#include "tut/interface.hpp"

#include <algorithm>
#include <set>
#include <utility>

#include <fmt/format.h>

#include "tut/text.hpp"

namespace tut {

namespace {

const Channel* find_channel(const std::vector<Channel>& list, std::string_view endpoint, std::string_view name) {
  for (const auto& c : list) {
    if (c.endpoint == endpoint && c.name == name) return &c;
  }
  return nullptr;
}

}  // namespace

const Channel* InterfaceSpec::find_inbound(std::string_view endpoint, std::string_view name) const {
  return find_channel(inbound, endpoint, name);
}

const Channel* InterfaceSpec::find_outbound(std::string_view endpoint, std::string_view name) const {
  return find_channel(outbound, endpoint, name);
}

const CmSlot* InterfaceSpec::find_slot(std::string_view name) const {
  for (const auto& s : cm_slots) {
    if (s.name == name) return &s;
  }
  return nullptr;
}

bool InterfaceSpec::has_inbound_endpoint(std::string_view endpoint) const {
  return std::any_of(inbound.begin(), inbound.end(), [&](const Channel& c) { return c.endpoint == endpoint; });
}

bool InterfaceSpec::has_outbound_endpoint(std::string_view endpoint) const {
  if (endpoint == kCommonMemoryName && !cm_slots.empty()) return true;
  return std::any_of(outbound.begin(), outbound.end(), [&](const Channel& c) { return c.endpoint == endpoint; });
}

bool InterfaceSpec::declares(std::string_view source, Direction direction, std::string_view name) const {
  return type_of(source, direction, name).has_value();
}

std::optional<std::string> InterfaceSpec::type_of(std::string_view source, Direction direction,
                                                  std::string_view name) const {
  if (direction == Direction::kIn) {
    if (const auto* c = find_inbound(source, name)) return c->type_tag;
    return std::nullopt;
  }
  if (const auto* c = find_outbound(source, name)) return c->type_tag;
  if (source == kCommonMemoryName) {
    if (const auto* s = find_slot(name)) return s->name;
  }
  return std::nullopt;
}

void validate_interface(const InterfaceSpec& spec) {
  if (spec.inbound.empty() && spec.outbound.empty() && spec.cm_slots.empty()) {
    throw Error(ErrorCode::kEmptyInterface, "interface declares no inbound or outbound channels");
  }
  if (!spec.tut_name.empty() && !text::is_identifier(spec.tut_name)) {
    throw Error(ErrorCode::kInvalidInterface, fmt::format("bad task name '{}'", spec.tut_name));
  }
  auto check_list = [](const std::vector<Channel>& list, std::string_view what) {
    std::set<std::pair<std::string, std::string>> seen;
    for (const auto& c : list) {
      if (!text::is_identifier(c.endpoint) || !text::is_identifier(c.name) || !text::is_identifier(c.type_tag)) {
        throw Error(ErrorCode::kInvalidInterface,
                    fmt::format("{} channel ({}, {}, {}) has a malformed identifier", what, c.endpoint, c.name,
                                c.type_tag));
      }
      if (!seen.emplace(c.endpoint, c.name).second) {
        throw Error(ErrorCode::kDuplicateEndpoint,
                    fmt::format("{} channel ({}, {}) declared twice", what, c.endpoint, c.name));
      }
    }
  };
  check_list(spec.inbound, "inbound");
  check_list(spec.outbound, "outbound");
  std::set<std::string> slots;
  for (const auto& s : spec.cm_slots) {
    if (!text::is_identifier(s.name)) {
      throw Error(ErrorCode::kInvalidInterface, fmt::format("bad CM slot name '{}'", s.name));
    }
    if (!slots.insert(s.name).second) {
      throw Error(ErrorCode::kDuplicateEndpoint, fmt::format("CM slot {} declared twice", s.name));
    }
  }
}

InterfaceSpec parse_interface(std::string_view text) {
  std::vector<Diagnostic> diags;
  auto blocks = text::read_typed_blocks(text, diags);
  InterfaceSpec spec;
  bool saw_task = false;

  auto require = [&](const text::TypedBlock& b, std::string_view key) -> std::string {
    const auto* f = b.find(key);
    if (!f) {
      diags.push_back({b.line, b.index, fmt::format("{} block missing {}", b.kind, key)});
      return {};
    }
    return f->value;
  };
  auto check_keys = [&](const text::TypedBlock& b, std::initializer_list<std::string_view> allowed) {
    for (const auto& f : b.fields) {
      if (std::find(allowed.begin(), allowed.end(), f.key) == allowed.end()) {
        diags.push_back({f.line, b.index, fmt::format("unexpected key {} in {} block", f.key, b.kind)});
      }
    }
  };

  for (const auto& b : blocks) {
    if (b.kind == "TASK") {
      check_keys(b, {"NAME"});
      if (saw_task) diags.push_back({b.line, b.index, "more than one TASK block"});
      saw_task = true;
      spec.tut_name = require(b, "NAME");
    } else if (b.kind == "INBOUND" || b.kind == "OUTBOUND") {
      check_keys(b, {"ENDPOINT", "NAME", "TYPE"});
      Channel c{require(b, "ENDPOINT"), require(b, "NAME"), require(b, "TYPE")};
      (b.kind == "INBOUND" ? spec.inbound : spec.outbound).push_back(std::move(c));
    } else if (b.kind == "CM_SLOT") {
      check_keys(b, {"NAME", "MAX_LEN"});
      CmSlot s{require(b, "NAME"), 0};
      if (const auto* f = b.find("MAX_LEN")) {
        if (auto n = text::parse_uint(f->value)) {
          s.max_len = static_cast<std::size_t>(*n);
        } else {
          diags.push_back({f->line, b.index, fmt::format("bad MAX_LEN '{}'", f->value)});
        }
      } else {
        diags.push_back({b.line, b.index, "CM_SLOT block missing MAX_LEN"});
      }
      spec.cm_slots.push_back(std::move(s));
    } else {
      diags.push_back({b.line, b.index, fmt::format("unknown block type '{}'", b.kind)});
    }
  }
  if (!diags.empty()) throw Error(ErrorCode::kMalformedBlock, "invalid interface file", std::move(diags));
  validate_interface(spec);
  return spec;
}

std::string serialize_interface(const InterfaceSpec& spec) {
  std::string out;
  bool first = true;
  auto begin = [&](std::string_view kind) {
    if (!first) out.push_back('\n');
    first = false;
    out.append(kind);
    out.push_back('\n');
  };
  begin("TASK");
  text::append_pair(out, "NAME", spec.tut_name);
  for (const auto& c : spec.inbound) {
    begin("INBOUND");
    text::append_pair(out, "ENDPOINT", c.endpoint);
    text::append_pair(out, "NAME", c.name);
    text::append_pair(out, "TYPE", c.type_tag);
  }
  for (const auto& c : spec.outbound) {
    begin("OUTBOUND");
    text::append_pair(out, "ENDPOINT", c.endpoint);
    text::append_pair(out, "NAME", c.name);
    text::append_pair(out, "TYPE", c.type_tag);
  }
  for (const auto& s : spec.cm_slots) {
    begin("CM_SLOT");
    text::append_pair(out, "NAME", s.name);
    text::append_pair(out, "MAX_LEN", std::to_string(s.max_len));
  }
  return out;
}

}  // namespace tut

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

// Declared interface of a task under test, plus its .tutif text form:
//
//   TASK
//   NAME: DSS
//
//   INBOUND
//   ENDPOINT: KEYPAD
//   NAME: D_CHANGE_BTN
//   TYPE: D_CHANGE_BTN
//
//   OUTBOUND
//   ENDPOINT: CM
//   NAME: D_CHANGE_BTN
//   TYPE: D_CHANGE_BTN
//
//   CM_SLOT
//   NAME: D_CHANGE_BTN
//   MAX_LEN: 4

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tut/trace.hpp"

namespace tut {

/// One message stream between the TUT and a neighbour.
struct Channel {
  std::string endpoint;
  std::string name;
  std::string type_tag;

  friend bool operator==(const Channel&, const Channel&) = default;
};

struct CmSlot {
  std::string name;
  std::size_t max_len = 0;

  friend bool operator==(const CmSlot&, const CmSlot&) = default;
};

struct InterfaceSpec {
  std::string tut_name;
  std::vector<Channel> inbound;
  std::vector<Channel> outbound;
  std::vector<CmSlot> cm_slots;

  const Channel* find_inbound(std::string_view endpoint, std::string_view name) const;
  const Channel* find_outbound(std::string_view endpoint, std::string_view name) const;
  const CmSlot* find_slot(std::string_view name) const;

  /// True if some inbound channel originates at `endpoint`.
  bool has_inbound_endpoint(std::string_view endpoint) const;
  /// True if some outbound channel targets `endpoint`, or `endpoint` is CM
  /// and slots are declared.
  bool has_outbound_endpoint(std::string_view endpoint) const;

  /// Whether (source, direction, name) names a declared stream. OUT records
  /// with SOURCE CM are Common Memory writes and are declared by a slot.
  bool declares(std::string_view source, Direction direction, std::string_view name) const;

  /// Type tag a record on that stream carries; CM slots without an explicit
  /// outbound channel use the slot name.
  std::optional<std::string> type_of(std::string_view source, Direction direction, std::string_view name) const;

  friend bool operator==(const InterfaceSpec&, const InterfaceSpec&) = default;
};

/// Throws Error(kDuplicateEndpoint) for repeated (endpoint, name) pairs or
/// slot names, Error(kEmptyInterface) when nothing is declared and
/// Error(kInvalidInterface) for malformed identifiers.
void validate_interface(const InterfaceSpec& spec);

InterfaceSpec parse_interface(std::string_view text);
std::string serialize_interface(const InterfaceSpec& spec);

}  // namespace tut

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

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace tut {

/// Raw message content. The canonical text form groups the bytes as
/// uppercase hex, four bytes per space-separated group.
struct Payload {
  std::vector<std::uint8_t> bytes;

  Payload() = default;
  explicit Payload(std::vector<std::uint8_t> b) : bytes(std::move(b)) {}
  Payload(std::initializer_list<std::uint8_t> b) : bytes(b) {}

  std::size_t size() const noexcept { return bytes.size(); }
  bool empty() const noexcept { return bytes.empty(); }
  std::span<const std::uint8_t> view() const noexcept { return bytes; }

  friend bool operator==(const Payload&, const Payload&) = default;
};

/// "02000000 00000000 00" style text; empty payload gives "".
std::string encode_payload(const Payload& p);

/// Inverse of encode_payload. Spaces and tabs are ignored anywhere, case is
/// ignored. Throws Error(kNonHexCharacter) with the 0-based character
/// position, or Error(kOddDigitCount).
Payload decode_payload(std::string_view text);

/// Little-endian uint32 payload, handy for counters and test fixtures.
Payload payload_from_u32(std::uint32_t value);

}  // namespace tut

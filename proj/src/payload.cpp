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

#include "tut/payload.hpp"

#include <fmt/format.h>

#include "tut/error.hpp"

namespace tut {

namespace {

constexpr char kHexDigits[] = "0123456789ABCDEF";

int hex_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  return -1;
}

}  // namespace

std::string encode_payload(const Payload& p) {
  std::string out;
  out.reserve(p.size() * 2 + p.size() / 4);
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i != 0 && i % 4 == 0) out.push_back(' ');
    out.push_back(kHexDigits[p.bytes[i] >> 4]);
    out.push_back(kHexDigits[p.bytes[i] & 0x0F]);
  }
  return out;
}

Payload decode_payload(std::string_view text) {
  Payload out;
  out.bytes.reserve(text.size() / 2);
  int high = -1;
  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (c == ' ' || c == '\t') continue;
    int v = hex_value(c);
    if (v < 0) {
      throw Error(ErrorCode::kNonHexCharacter,
                  fmt::format("invalid hex digit '{}' at position {}", c, i));
    }
    if (high < 0) {
      high = v;
    } else {
      out.bytes.push_back(static_cast<std::uint8_t>((high << 4) | v));
      high = -1;
    }
  }
  if (high >= 0) {
    throw Error(ErrorCode::kOddDigitCount, "odd number of hex digits; a byte needs two");
  }
  return out;
}

Payload payload_from_u32(std::uint32_t value) {
  return Payload{static_cast<std::uint8_t>(value & 0xFF), static_cast<std::uint8_t>((value >> 8) & 0xFF),
                 static_cast<std::uint8_t>((value >> 16) & 0xFF),
                 static_cast<std::uint8_t>((value >> 24) & 0xFF)};
}

}  // namespace tut

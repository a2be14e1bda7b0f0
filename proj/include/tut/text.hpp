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

// Shared reader for the KEY: VALUE block grammar used by every text format
// in the harness (.tutlog, .tutsc, .tutsm, .tutif, .tutres).

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tut/error.hpp"

namespace tut::text {

struct Line {
  std::size_t number = 0;  // 1-based
  std::string_view content;
};

/// Lines of one blank-line-delimited block, in file order.
using RawBlock = std::vector<Line>;

struct Field {
  std::string key;
  std::string value;
  std::size_t line = 0;
};

/// A block whose first line names its kind (CONFIG, INJECT, STATE, ...).
struct TypedBlock {
  std::string kind;
  std::size_t line = 0;   // line of the kind header
  std::size_t index = 0;  // 1-based position in the file
  std::vector<Field> fields;

  /// First value for `key`, if present.
  const Field* find(std::string_view key) const;
};

std::string_view trim(std::string_view s);

/// Splits on blank (whitespace-only) lines. Handles CRLF input.
std::vector<RawBlock> split_blocks(std::string_view text);

/// True for tokens of the form [A-Z][A-Z0-9_]* followed by ':' (the colon
/// included in `token`).
bool is_key_token(std::string_view token);

/// Identifier rule shared by endpoints, message names and type tags.
bool is_identifier(std::string_view s);

/// Parses a single "KEY: VALUE" line. The value is everything after the
/// colon, trimmed; "KEY:" yields an empty value.
std::optional<Field> parse_pair(const Line& line);

/// Reads the typed-block grammar; malformed lines are collected in `diags`.
std::vector<TypedBlock> read_typed_blocks(std::string_view text, std::vector<Diagnostic>& diags);

std::optional<std::uint64_t> parse_uint(std::string_view s);

/// Writes `KEY: value`, or `KEY:` for an empty value, followed by '\n'.
void append_pair(std::string& out, std::string_view key, std::string_view value);

}  // namespace tut::text

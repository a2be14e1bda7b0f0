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

#include "tut/text.hpp"

#include <charconv>

#include <fmt/format.h>

namespace tut::text {

namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\f' || c == '\v'; }
bool is_upper(char c) { return c >= 'A' && c <= 'Z'; }
bool is_digit(char c) { return c >= '0' && c <= '9'; }

}  // namespace

const Field* TypedBlock::find(std::string_view key) const {
  for (const auto& f : fields) {
    if (f.key == key) return &f;
  }
  return nullptr;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

std::vector<RawBlock> split_blocks(std::string_view text) {
  std::vector<RawBlock> blocks;
  RawBlock current;
  std::size_t number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view content = text.substr(pos, end - pos);
    if (!content.empty() && content.back() == '\r') content.remove_suffix(1);
    ++number;
    if (trim(content).empty()) {
      if (!current.empty()) blocks.push_back(std::move(current));
      current.clear();
    } else {
      current.push_back(Line{number, content});
    }
    if (end == text.size()) break;
    pos = end + 1;
  }
  if (!current.empty()) blocks.push_back(std::move(current));
  return blocks;
}

bool is_key_token(std::string_view token) {
  if (token.size() < 2 || token.back() != ':') return false;
  token.remove_suffix(1);
  if (!is_upper(token.front())) return false;
  for (char c : token) {
    if (!is_upper(c) && !is_digit(c) && c != '_') return false;
  }
  return true;
}

bool is_identifier(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!is_upper(c) && !is_digit(c) && c != '_') return false;
  }
  return true;
}

std::optional<Field> parse_pair(const Line& line) {
  std::string_view content = trim(line.content);
  auto colon = content.find(':');
  if (colon == std::string_view::npos) return std::nullopt;
  std::string_view key = content.substr(0, colon);
  if (!is_key_token(content.substr(0, colon + 1))) return std::nullopt;
  std::string_view rest = content.substr(colon + 1);
  if (!rest.empty() && !is_space(rest.front())) return std::nullopt;
  return Field{std::string(key), std::string(trim(rest)), line.number};
}

std::vector<TypedBlock> read_typed_blocks(std::string_view text, std::vector<Diagnostic>& diags) {
  std::vector<TypedBlock> out;
  std::size_t index = 0;
  for (const auto& raw : split_blocks(text)) {
    ++index;
    TypedBlock block;
    block.index = index;
    block.line = raw.front().number;
    block.kind = std::string(trim(raw.front().content));
    for (std::size_t i = 1; i < raw.size(); ++i) {
      auto field = parse_pair(raw[i]);
      if (!field) {
        diags.push_back({raw[i].number, index,
                         fmt::format("expected 'KEY: VALUE', got '{}'", trim(raw[i].content))});
        continue;
      }
      block.fields.push_back(std::move(*field));
    }
    out.push_back(std::move(block));
  }
  return out;
}

std::optional<std::uint64_t> parse_uint(std::string_view s) {
  s = trim(s);
  if (s.empty()) return std::nullopt;
  std::uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return value;
}

void append_pair(std::string& out, std::string_view key, std::string_view value) {
  out.append(key);
  out.push_back(':');
  if (!value.empty()) {
    out.push_back(' ');
    out.append(value);
  }
  out.push_back('\n');
}

}  // namespace tut::text

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

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace tut {

enum class ErrorCode {
  // payload / log
  kNonHexCharacter,
  kOddDigitCount,
  kInvalidIdentifier,
  kMalformedRecord,
  kNonMonotonicLogCnt,
  // runtime
  kDuplicateEndpoint,
  kEmptyInterface,
  kInvalidInterface,
  kLivelockDetected,
  kUnknownTarget,
  kUndeclaredSlot,
  kCmOverflow,
  // scenario
  kMalformedBlock,
  kUnknownBlockType,
  kDurationMissing,
  kUnsortedInjections,
  // analyzer
  kSpecMismatch,
  // state charts
  kUnknownState,
  kMultipleInitial,
  kMissingInitial,
  kCyclicParent,
  kNondeterministicTrigger,
  kUndeclaredChannel,
  // tooling
  kIo,
  kUsage,
};

std::string_view to_string(ErrorCode code);

/// A located problem found while reading one of the block-structured text
/// formats. `line` and `block` are 1-based; 0 means "not applicable".
struct Diagnostic {
  std::size_t line = 0;
  std::size_t block = 0;
  std::string message;

  std::string str() const;
};

/// Every failure raised by the library. `diagnostics` is populated by the
/// parsers, which collect all located problems before giving up.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);
  Error(ErrorCode code, const std::string& message, std::vector<Diagnostic> diagnostics);

  ErrorCode code() const noexcept { return code_; }
  const std::vector<Diagnostic>& diagnostics() const noexcept { return diagnostics_; }
  /// The message without the code prefix and first diagnostic.
  const std::string& message() const noexcept { return message_; }

 private:
  ErrorCode code_;
  std::string message_;
  std::vector<Diagnostic> diagnostics_;
};

}  // namespace tut

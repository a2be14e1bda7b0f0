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

#include "tut/error.hpp"

#include <fmt/format.h>

namespace tut {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kNonHexCharacter: return "NonHexCharacter";
    case ErrorCode::kOddDigitCount: return "OddDigitCount";
    case ErrorCode::kInvalidIdentifier: return "InvalidIdentifier";
    case ErrorCode::kMalformedRecord: return "MalformedRecord";
    case ErrorCode::kNonMonotonicLogCnt: return "NonMonotonicLogCnt";
    case ErrorCode::kDuplicateEndpoint: return "DuplicateEndpoint";
    case ErrorCode::kEmptyInterface: return "EmptyInterface";
    case ErrorCode::kInvalidInterface: return "InvalidInterface";
    case ErrorCode::kLivelockDetected: return "LivelockDetected";
    case ErrorCode::kUnknownTarget: return "UnknownTarget";
    case ErrorCode::kUndeclaredSlot: return "UndeclaredSlot";
    case ErrorCode::kCmOverflow: return "CmOverflow";
    case ErrorCode::kMalformedBlock: return "MalformedBlock";
    case ErrorCode::kUnknownBlockType: return "UnknownBlockType";
    case ErrorCode::kDurationMissing: return "DurationMissing";
    case ErrorCode::kUnsortedInjections: return "UnsortedInjections";
    case ErrorCode::kSpecMismatch: return "SpecMismatch";
    case ErrorCode::kUnknownState: return "UnknownState";
    case ErrorCode::kMultipleInitial: return "MultipleInitial";
    case ErrorCode::kMissingInitial: return "MissingInitial";
    case ErrorCode::kCyclicParent: return "CyclicParent";
    case ErrorCode::kNondeterministicTrigger: return "NondeterministicTrigger";
    case ErrorCode::kUndeclaredChannel: return "UndeclaredChannel";
    case ErrorCode::kIo: return "Io";
    case ErrorCode::kUsage: return "Usage";
  }
  return "Unknown";
}

std::string Diagnostic::str() const {
  if (line != 0 && block != 0) return fmt::format("line {} (block {}): {}", line, block, message);
  if (line != 0) return fmt::format("line {}: {}", line, message);
  if (block != 0) return fmt::format("block {}: {}", block, message);
  return message;
}

namespace {

std::string with_first_diagnostic(const std::string& message, const std::vector<Diagnostic>& diags) {
  if (diags.empty()) return message;
  return fmt::format("{}: {}", message, diags.front().str());
}

}  // namespace

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(fmt::format("{}: {}", to_string(code), message)), code_(code), message_(message) {}

Error::Error(ErrorCode code, const std::string& message, std::vector<Diagnostic> diagnostics)
    : std::runtime_error(
          fmt::format("{}: {}", to_string(code), with_first_diagnostic(message, diagnostics))),
      code_(code),
      message_(message),
      diagnostics_(std::move(diagnostics)) {}

}  // namespace tut

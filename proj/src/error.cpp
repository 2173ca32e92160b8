// Copyright 2026 The treetrace Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "treetrace/error.hpp"

#include <utility>

namespace treetrace {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "invalid-argument";
    case ErrorCode::kMalformedString: return "malformed-string";
    case ErrorCode::kSyntax: return "syntax";
    case ErrorCode::kInvalidDeletion: return "invalid-deletion";
    case ErrorCode::kStaleTarget: return "stale-target";
    case ErrorCode::kSizeLimit: return "size-limit";
    case ErrorCode::kEmptyInput: return "empty-input";
    case ErrorCode::kDegeneratePair: return "degenerate-pair";
    case ErrorCode::kInconsistentTraces: return "inconsistent-traces";
    case ErrorCode::kNoCandidates: return "no-candidates";
    case ErrorCode::kProtocol: return "protocol";
    case ErrorCode::kMalformedPair: return "malformed-pair";
    case ErrorCode::kReconstructionFailed: return "reconstruction-failed";
    case ErrorCode::kUndecidedPosition: return "undecided-position";
    case ErrorCode::kUnknownFamily: return "unknown-family";
    case ErrorCode::kIo: return "io";
    case ErrorCode::kBudgetExceeded: return "budget-exceeded";
  }
  return "unknown";
}

Error::Error(ErrorCode code, const std::string& message,
             std::vector<std::string> details)
    : std::runtime_error(std::string(to_string(code)) + ": " + message),
      code_(code),
      details_(std::move(details)) {}

}  // namespace treetrace

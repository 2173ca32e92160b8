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

#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace treetrace {

enum class ErrorCode {
  kInvalidArgument,
  kMalformedString,
  kSyntax,
  kInvalidDeletion,
  kStaleTarget,
  kSizeLimit,
  kEmptyInput,
  kDegeneratePair,
  kInconsistentTraces,
  kNoCandidates,
  kProtocol,
  kMalformedPair,
  kReconstructionFailed,
  kUndecidedPosition,
  kUnknownFamily,
  kIo,
  kBudgetExceeded,
};

const char* to_string(ErrorCode code);

// All library failures are reported as Error. `details` carries structured
// payloads for the codes that need them (undecided positions, the two
// recovered strings of a failed merge, the syntax error offset).
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message,
        std::vector<std::string> details = {});

  ErrorCode code() const noexcept { return code_; }
  const std::vector<std::string>& details() const noexcept { return details_; }

 private:
  ErrorCode code_;
  std::vector<std::string> details_;
};

}  // namespace treetrace

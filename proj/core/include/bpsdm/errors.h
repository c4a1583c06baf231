// Copyright 2026 The BPSDM Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef BPSDM_ERRORS_H_
#define BPSDM_ERRORS_H_

#include <stdexcept>
#include <string>

namespace bpsdm {

enum class ErrorCode {
  kParseError,
  kCycleDetected,
  kInfosetActionMismatch,
  kPerfectRecallViolation,
  kChanceNotNormalized,
  kUtilityOutOfRange,
  kInvalidArgument,
  kIndexMismatch,
  kZeroMassAtNode,
  kTooLarge,
  kLpInfeasible,
  kLpUnbounded,
  kNumericalFailure,
  kInconsistentSample,
};

const char* error_code_name(ErrorCode code);

// All library errors derive from here; `code()` tells callers (and the CLI
// exit-code mapping) what went wrong, `where()` names the offending
// node/infoset/sequence when there is one.
class BpsdmError : public std::runtime_error {
 public:
  BpsdmError(ErrorCode code, std::string message, std::string where = "")
      : std::runtime_error(std::string(error_code_name(code)) + ": " +
                           message + (where.empty() ? "" : " [" + where + "]")),
        code_(code),
        where_(std::move(where)) {}

  ErrorCode code() const { return code_; }
  const std::string& where() const { return where_; }

 private:
  ErrorCode code_;
  std::string where_;
};

}  // namespace bpsdm

#endif  // BPSDM_ERRORS_H_

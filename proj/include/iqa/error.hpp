// Copyright 2026 The CEQI Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef IQA_ERROR_HPP_
#define IQA_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace iqa {

enum class ErrorCode {
  kFileNotFound,
  kDecodeError,
  kDimensionTooSmall,
  kDimensionMismatch,
  kLengthMismatch,
  kNonFiniteValue,
  kFilterTooLarge,
  kWindowTooLarge,
  kInvalidArgument,
  kInvalidConfig,
  kDegenerateInput,
  kConstantVector,
  kInsufficientData,
  kParseError,
  kMissingColumn,
  kFailureBudgetExceeded,
};

std::string_view to_string(ErrorCode code);

// Every failure raised by the library carries one of the codes above so
// callers (the CLI in particular) can map it onto a stable exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace iqa

#endif  // IQA_ERROR_HPP_

// Copyright 2026 The ldpjoint Authors
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

#ifndef LDPJOINT_ERROR_HPP_
#define LDPJOINT_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace ldpjoint {

// Every failure the library can raise carries one of these codes so callers
// (and the CLI) can react without parsing message text.
enum class ErrorCode {
  kInvalidArgument,
  kOutOfRange,
  kIndexOutOfDomain,
  kEmptyDataset,
  kDegenerateAttribute,
  kSubsetMismatch,
  kUnknownColumn,
  kShapeMismatch,
  kAxisOutOfRange,
  kSingularMatrix,
  kDomainTooLarge,
  kPlanSchemaMismatch,
  kParseError,
  kEmptyAfterFiltering,
  kEmptyCollection,
  kUnattainableTarget,
  kDegenerateFit,
  kIoError,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }
  const char* code_name() const { return error_code_name(code_); }

 private:
  ErrorCode code_;
};

}  // namespace ldpjoint

#endif  // LDPJOINT_ERROR_HPP_

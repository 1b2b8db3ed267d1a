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

#include "ldpjoint/error.hpp"

namespace ldpjoint {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument:
      return "InvalidArgument";
    case ErrorCode::kOutOfRange:
      return "OutOfRange";
    case ErrorCode::kIndexOutOfDomain:
      return "IndexOutOfDomain";
    case ErrorCode::kEmptyDataset:
      return "EmptyDataset";
    case ErrorCode::kDegenerateAttribute:
      return "DegenerateAttribute";
    case ErrorCode::kSubsetMismatch:
      return "SubsetMismatch";
    case ErrorCode::kUnknownColumn:
      return "UnknownColumn";
    case ErrorCode::kShapeMismatch:
      return "ShapeMismatch";
    case ErrorCode::kAxisOutOfRange:
      return "AxisOutOfRange";
    case ErrorCode::kSingularMatrix:
      return "SingularMatrix";
    case ErrorCode::kDomainTooLarge:
      return "DomainTooLarge";
    case ErrorCode::kPlanSchemaMismatch:
      return "PlanSchemaMismatch";
    case ErrorCode::kParseError:
      return "ParseError";
    case ErrorCode::kEmptyAfterFiltering:
      return "EmptyAfterFiltering";
    case ErrorCode::kEmptyCollection:
      return "EmptyCollection";
    case ErrorCode::kUnattainableTarget:
      return "UnattainableTarget";
    case ErrorCode::kDegenerateFit:
      return "DegenerateFit";
    case ErrorCode::kIoError:
      return "IoError";
  }
  return "Unknown";
}

}  // namespace ldpjoint

// Copyright 2026 The urate Authors.
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

#include "urate/error.h"

namespace urate {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidParams:
      return "invalid-params";
    case ErrorCode::kDomainViolation:
      return "domain-violation";
    case ErrorCode::kEmptyDataset:
      return "empty-dataset";
    case ErrorCode::kMissingDist:
      return "missing-dist";
    case ErrorCode::kIntervalTooWide:
      return "interval-too-wide";
    case ErrorCode::kInstanceTooLarge:
      return "instance-too-large";
    case ErrorCode::kTailNotClosedForm:
      return "tail-not-closed-form";
    case ErrorCode::kPreconditionUnmet:
      return "precondition-unmet";
    case ErrorCode::kRateTooFast:
      return "rate-too-fast";
    case ErrorCode::kHorizonInfeasible:
      return "horizon-infeasible";
    case ErrorCode::kSequenceTooShort:
      return "sequence-too-short";
    case ErrorCode::kConstructionUnsound:
      return "construction-unsound";
    case ErrorCode::kInsufficientGrid:
      return "insufficient-grid";
    case ErrorCode::kGridMismatch:
      return "grid-mismatch";
    case ErrorCode::kBisectionFailure:
      return "bisection-failure";
    case ErrorCode::kValidation:
      return "validation";
  }
  return "unknown";
}

}  // namespace urate

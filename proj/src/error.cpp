// Copyright 2026 The Veriscope Authors
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

#include "veriscope/error.hpp"

namespace veriscope {

const char* ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kUsage:
      return "usage";
    case ErrorCode::kIo:
      return "io";
    case ErrorCode::kProviderUnavailable:
      return "provider-unavailable";
    case ErrorCode::kContractViolation:
      return "contract-violation";
    case ErrorCode::kValidation:
      return "validation";
    case ErrorCode::kVerificationImpossible:
      return "verification-impossible";
    case ErrorCode::kGeneration:
      return "generation";
  }
  return "unknown";
}

}  // namespace veriscope

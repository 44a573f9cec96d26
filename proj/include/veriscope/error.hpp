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

#ifndef VERISCOPE_ERROR_HPP_
#define VERISCOPE_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace veriscope {

// Failure classes shared by every module. The C API maps these one-to-one
// onto vs_status codes.
enum class ErrorCode {
  kUsage,                  // caller violated a precondition
  kIo,                     // file could not be read or written
  kProviderUnavailable,    // remote service unreachable after retries
  kContractViolation,      // remote service answered with a malformed payload
  kValidation,             // dataset record failed validation
  kVerificationImpossible, // knowledge base has no text-bearing entries
  kGeneration,             // synthetic corpus could not be forged
};

const char* ErrorCodeName(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }

  // Only transport-level provider failures are worth retrying upstream.
  bool retryable() const { return code_ == ErrorCode::kProviderUnavailable; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void Fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace veriscope

#endif  // VERISCOPE_ERROR_HPP_

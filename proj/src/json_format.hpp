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

#ifndef VERISCOPE_SRC_JSON_FORMAT_HPP_
#define VERISCOPE_SRC_JSON_FORMAT_HPP_

#include <filesystem>
#include <string>
#include <string_view>

#include "json.hpp"

namespace veriscope::internal {

using Json = nlohmann::json;

// Two-space indented dump with sorted keys, "%.17g" floats and a trailing
// newline. Identical values always produce identical bytes.
std::string DumpCanonical(const Json& value);

std::string ReadFile(const std::filesystem::path& path);

// Throws kIo when the file is unreadable or not JSON.
Json ParseJsonFile(const std::filesystem::path& path);
Json ParseJsonText(std::string_view text, const std::string& origin);

}  // namespace veriscope::internal

#endif  // VERISCOPE_SRC_JSON_FORMAT_HPP_

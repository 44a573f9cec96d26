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

#include "json_format.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "veriscope/error.hpp"
#include "veriscope/metrics_report.hpp"

namespace veriscope::internal {
namespace {

void Indent(std::string& out, int depth) { out.append(2 * depth, ' '); }

void DumpValue(const Json& value, int depth, std::string& out) {
  switch (value.type()) {
    case Json::value_t::object: {
      if (value.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (const auto& [key, item] : value.items()) {
        if (!first) out += ",\n";
        first = false;
        Indent(out, depth + 1);
        out += Json(key).dump(-1, ' ', false,
                              Json::error_handler_t::replace);
        out += ": ";
        DumpValue(item, depth + 1, out);
      }
      out += '\n';
      Indent(out, depth);
      out += '}';
      return;
    }
    case Json::value_t::array: {
      if (value.empty()) {
        out += "[]";
        return;
      }
      out += "[\n";
      bool first = true;
      for (const auto& item : value) {
        if (!first) out += ",\n";
        first = false;
        Indent(out, depth + 1);
        DumpValue(item, depth + 1, out);
      }
      out += '\n';
      Indent(out, depth);
      out += ']';
      return;
    }
    case Json::value_t::number_float: {
      const double v = value.get<double>();
      if (!std::isfinite(v)) {
        Fail(ErrorCode::kUsage, "cannot serialize a non-finite number");
      }
      out += FormatNumber(v);
      return;
    }
    default:
      out += value.dump(-1, ' ', false, Json::error_handler_t::replace);
      return;
  }
}

}  // namespace

std::string DumpCanonical(const Json& value) {
  std::string out;
  DumpValue(value, 0, out);
  out += '\n';
  return out;
}

std::string ReadFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) Fail(ErrorCode::kIo, "cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) Fail(ErrorCode::kIo, "read failed: " + path.string());
  return buffer.str();
}

Json ParseJsonText(std::string_view text, const std::string& origin) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    Fail(ErrorCode::kIo, origin + ": malformed JSON: " + e.what());
  }
}

Json ParseJsonFile(const std::filesystem::path& path) {
  return ParseJsonText(ReadFile(path), path.string());
}

}  // namespace veriscope::internal

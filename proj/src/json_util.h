// Copyright 2026 The osu Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Internal JSON helpers shared by the file formats.

#ifndef OSU_SRC_JSON_UTIL_H_
#define OSU_SRC_JSON_UTIL_H_

#include <optional>
#include <string>
#include <string_view>

#include "json.hpp"
#include "osu/box.h"
#include "osu/error.h"

namespace osu::internal {

using Json = nlohmann::ordered_json;

inline Json ParseJsonText(std::string_view text) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
}

// Throws Error(kSchema) with `where` in the message.
[[noreturn]] inline void SchemaFail(const std::string& where,
                                    const std::string& what) {
  throw Error(ErrorKind::kSchema, where + ": " + what);
}

inline const Json& Field(const Json& obj, const char* key,
                         const std::string& where) {
  if (!obj.is_object()) SchemaFail(where, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) SchemaFail(where, std::string("missing field '") + key + "'");
  return *it;
}

inline std::string StringField(const Json& obj, const char* key,
                               const std::string& where) {
  const Json& v = Field(obj, key, where);
  if (!v.is_string()) SchemaFail(where, std::string("field '") + key + "' must be a string");
  return v.get<std::string>();
}

inline double NumberField(const Json& obj, const char* key,
                          const std::string& where) {
  const Json& v = Field(obj, key, where);
  if (!v.is_number()) SchemaFail(where, std::string("field '") + key + "' must be a number");
  return v.get<double>();
}

inline int IntField(const Json& obj, const char* key, const std::string& where) {
  const Json& v = Field(obj, key, where);
  if (!v.is_number_integer()) SchemaFail(where, std::string("field '") + key + "' must be an integer");
  return v.get<int>();
}

// Reads [x1, y1, x2, y2]. The all -1 sentinel yields nullopt. Geometry is not
// validated here.
inline std::optional<BoundingBox> BoxFromJson(const Json& v,
                                              const std::string& where) {
  if (!v.is_array() || v.size() != 4) {
    SchemaFail(where, "box must be an array of 4 numbers");
  }
  for (const auto& c : v) {
    if (!c.is_number()) SchemaFail(where, "box must be an array of 4 numbers");
  }
  BoundingBox b{v[0].get<double>(), v[1].get<double>(), v[2].get<double>(),
                v[3].get<double>()};
  if (b.x1 == -1 && b.y1 == -1 && b.x2 == -1 && b.y2 == -1) return std::nullopt;
  return b;
}

inline Json BoxToJson(const BoundingBox& b) {
  return Json::array({b.x1, b.y1, b.x2, b.y2});
}

inline Json AbsentBoxJson() { return Json::array({-1, -1, -1, -1}); }

}  // namespace osu::internal

#endif  // OSU_SRC_JSON_UTIL_H_

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

#ifndef OSU_SRC_MASK_JSON_H_
#define OSU_SRC_MASK_JSON_H_

#include <string>

#include "json_util.h"
#include "osu/masks.h"

namespace osu::internal {

Json MaskSetToJson(const MaskSet& set);
// `where` prefixes schema error messages.
MaskSet MaskSetFromJson(const Json& doc, const std::string& where);

}  // namespace osu::internal

#endif  // OSU_SRC_MASK_JSON_H_

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

#include "osu/error.h"

namespace osu {

std::string_view ErrorKindName(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kParse: return "parse";
    case ErrorKind::kSchema: return "schema";
    case ErrorKind::kNotFound: return "not-found";
    case ErrorKind::kValidation: return "validation";
    case ErrorKind::kCodec: return "codec";
    case ErrorKind::kGeometry: return "geometry";
    case ErrorKind::kRange: return "range";
    case ErrorKind::kDomain: return "domain";
    case ErrorKind::kTransport: return "transport";
    case ErrorKind::kProtocol: return "protocol";
    case ErrorKind::kTimeout: return "timeout";
    case ErrorKind::kUsage: return "usage";
  }
  return "unknown";
}

}  // namespace osu

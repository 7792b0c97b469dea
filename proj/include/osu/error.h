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

#ifndef OSU_ERROR_H_
#define OSU_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace osu {

// Category of a failure. Callers (the CLI in particular) map these onto exit
// codes and HTTP statuses, so every thrown error carries exactly one.
enum class ErrorKind {
  kParse,       // malformed input text
  kSchema,      // well-formed input that violates the data model
  kNotFound,    // lookup of an unknown key
  kValidation,  // value-level invariant violation (boxes, disjointness)
  kCodec,       // inconsistent run-length data
  kGeometry,    // dimension mismatches between masks
  kRange,       // query coordinates outside the image
  kDomain,      // non-finite numeric input
  kTransport,   // segmenter endpoint unreachable
  kProtocol,    // segmenter replied with something unusable
  kTimeout,     // segmenter did not answer in time
  kUsage,       // caller misuse (e.g. mismatched image ids)
};

std::string_view ErrorKindName(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

// Parse errors additionally remember the 1-based line they were raised at
// (0 when the source is not line oriented).
class ParseError : public Error {
 public:
  ParseError(const std::string& message, int line = 0)
      : Error(ErrorKind::kParse, message), line_(line) {}

  int line() const { return line_; }

 private:
  int line_;
};

// Transport failures record how many attempts were made before giving up.
class TransportError : public Error {
 public:
  TransportError(const std::string& message, int attempts)
      : Error(ErrorKind::kTransport, message), attempts_(attempts) {}

  int attempts() const { return attempts_; }

 private:
  int attempts_;
};

}  // namespace osu

#endif  // OSU_ERROR_H_

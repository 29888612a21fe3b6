// Copyright 2026 The wlra Authors
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

#include "wlra/error.hpp"

namespace wlra {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kDimension: return "dimension error";
    case ErrorKind::kParameter: return "parameter error";
    case ErrorKind::kCapacity: return "capacity error";
    case ErrorKind::kConstraint: return "constraint violation";
    case ErrorKind::kDegenerate: return "degenerate input";
    case ErrorKind::kParse: return "parse error";
    case ErrorKind::kInconsistency: return "inconsistency";
    case ErrorKind::kIo: return "i/o error";
  }
  return "error";
}

void fail(ErrorKind kind, const std::string& message) {
  throw Error(kind, std::string(to_string(kind)) + ": " + message);
}

}  // namespace wlra

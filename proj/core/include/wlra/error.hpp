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

#ifndef WLRA_ERROR_HPP_
#define WLRA_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace wlra {

enum class ErrorKind {
  kDimension,      // shape mismatch between operands
  kParameter,      // argument outside its documented range
  kCapacity,       // instance exceeds a size or magnitude limit
  kConstraint,     // a combinatorial constraint is violated (e.g. not a biclique)
  kDegenerate,     // input for which the operation is undefined
  kParse,          // malformed text input
  kInconsistency,  // result contradicts a documented precondition
  kIo,             // filesystem failure
};

std::string_view to_string(ErrorKind kind);

// All library failures are reported through this exception type.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& message);

}  // namespace wlra

#endif  // WLRA_ERROR_HPP_

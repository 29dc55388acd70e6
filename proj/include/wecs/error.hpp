// Copyright 2026 The wecs-sim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace wecs {

enum class ErrorKind {
  kDomain,      // argument outside the mathematical domain of an operation
  kParse,       // malformed input file
  kValidation,  // well-formed input that violates an invariant
  kIo,          // missing or unwritable file
  kDivergence,  // simulation left its sanity envelope
};

std::string_view to_string(ErrorKind kind);

// Every failure raised by the library carries a category so the CLI can map
// it to an exit code and a machine-readable prefix.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

}  // namespace wecs

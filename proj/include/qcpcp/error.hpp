// Copyright 2026 The qcpcp Authors
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

namespace qcpcp {

enum class ErrorKind {
    kInvalidArgument,  // precondition violated by the caller
    kSchema,           // malformed document
    kBudget,           // enumeration or shot budget exceeded
};

/// Every failure raised by the library carries a kind so the CLI can map it to
/// an exit code.
class Error : public std::runtime_error {
   public:
    Error(ErrorKind kind, const std::string &message) : std::runtime_error(message), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

   private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(const std::string &message) { throw Error(ErrorKind::kInvalidArgument, message); }
[[noreturn]] inline void fail_schema(const std::string &message) { throw Error(ErrorKind::kSchema, message); }
[[noreturn]] inline void fail_budget(const std::string &message) { throw Error(ErrorKind::kBudget, message); }

}  // namespace qcpcp

// Copyright 2026 The emsloc Authors
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

#pragma once

#include <stdexcept>
#include <string>

namespace emsloc {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Syntactically broken input (JSON, solution files, numbers).
struct ParseError : Error {
  using Error::Error;
};

/// Structurally valid input that violates a model invariant. The message
/// names the violated field or constraint family.
struct ValidationError : Error {
  using Error::Error;
};

struct IoError : Error {
  using Error::Error;
};

/// A reported solution failed its independent recomputation.
struct AuditError : Error {
  using Error::Error;
};

}  // namespace emsloc

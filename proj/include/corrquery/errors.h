// Copyright 2026 The corrquery Authors
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

#ifndef CORRQUERY_ERRORS_H_
#define CORRQUERY_ERRORS_H_

#include <stdexcept>
#include <string>

namespace corrquery {

// Bad arguments: out-of-range indices, dimension mismatches, malformed input.
class UsageError : public std::invalid_argument {
 public:
  explicit UsageError(const std::string& what) : std::invalid_argument(what) {}
};

// The request is well-formed but too large for the dense representation.
class CapacityError : public std::runtime_error {
 public:
  explicit CapacityError(const std::string& what)
      : std::runtime_error(what) {}
};

// A construction that must succeed did not (peel order, witness extraction,
// support compaction with all mass removed).
class InfeasibleError : public std::runtime_error {
 public:
  explicit InfeasibleError(const std::string& what)
      : std::runtime_error(what) {}
};

// Access to an edge whose label was never defined.
class IncompleteLabelingError : public std::runtime_error {
 public:
  explicit IncompleteLabelingError(const std::string& what)
      : std::runtime_error(what) {}
};

}  // namespace corrquery

#endif  // CORRQUERY_ERRORS_H_

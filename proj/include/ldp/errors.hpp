// Copyright 2026 The ldptest Authors
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

#ifndef LDP_ERRORS_HPP_
#define LDP_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace ldp {

// A test configuration that cannot be run on the given data (index set
// larger than a fold, empty partition, ...). Distinct from
// std::invalid_argument, which flags plain precondition violations.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace ldp

#endif  // LDP_ERRORS_HPP_

// Copyright 2026 The Hardy Lab Authors
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

namespace hardy {

// Usage errors (bad site, bad angle, non-unitary gate) are reported as
// std::invalid_argument / std::out_of_range. The two domain failures below
// get their own types so the C API can map them to distinct status codes.

// |A_k| is exactly 0 or 1: the normalization diverges or the state factorizes.
class DegenerateTransformError : public std::domain_error {
 public:
  explicit DegenerateTransformError(const std::string& what)
      : std::domain_error(what) {}
};

// The post-selected branch has (numerically) zero weight.
class PostselectionError : public std::runtime_error {
 public:
  explicit PostselectionError(const std::string& what)
      : std::runtime_error(what) {}
};

}  // namespace hardy

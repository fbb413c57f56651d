// Copyright 2026 The vrmccfr Authors
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

#ifndef VRMCCFR_WORKED_EXAMPLE_HPP_
#define VRMCCFR_WORKED_EXAMPLE_HPP_

#include <string>
#include <vector>

namespace vrmccfr {

struct WorkedValue {
  std::string name;
  double computed = 0.0;
  double expected = 0.0;
};

// One baseline-enhanced backward pass for P1 on Kuhn along K Q B C, with
// sigma(K?) = (C 1/3, B 2/3), sigma(?QB) = (F 3/4, C 1/4), uniform xi and
// P1 baselines b(K?B, C) = 1, b(K?B, F) = -2, b(K?, B) = 0.5, b(K?, C) = -1.
std::vector<WorkedValue> kuhn_worked_example();

}  // namespace vrmccfr

#endif  // VRMCCFR_WORKED_EXAMPLE_HPP_

// Copyright 2026 The CARE Authors
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

#ifndef CARE_CARE_CO_HPP_
#define CARE_CARE_CO_HPP_

#include <vector>

#include "care/model.hpp"

namespace care {

// Worker ids sorted by bid/reputation ascending, ties by id. The prefix sets
// of this order are the candidate sets of the cooperative mechanism.
std::vector<int> cost_effectiveness_order(const Instance& inst);

struct OrpResult {
  Rat value;  // maximum total reputation over the prefix
  Assignment assignment;
};

// Optimal overall reputation over the first `prefix` workers of `order`,
// subject only to the compatibility constraint (no per-requester cap).
OrpResult orp(const Instance& inst, const std::vector<int>& order, int prefix);

// Largest k whose whole prefix passes (b_i/v_i) * M(S_i) <= B, scanning in
// order and stopping at the first failure; k >= 1 whenever the instance
// validates (the first test reduces to b_1 <= B).
int find_key_worker(const Instance& inst, const std::vector<int>& order);

// Pooled-budget mechanism: winners are the assigned workers of the key
// prefix's optimal allocation, each paid its reputation times the uniform
// unit price min{b_{k+1}/v_{k+1}, B / M(S_k)} (the last term alone if k = n).
Outcome run_care_co(const Instance& inst);

}  // namespace care

#endif  // CARE_CARE_CO_HPP_

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

#ifndef CARE_CARE_NO_HPP_
#define CARE_CARE_NO_HPP_

#include <cstdint>
#include <vector>

#include "care/model.hpp"
#include "care/pea.hpp"

namespace care {

// Reputation bands in normalized reputation rho_i = v_i / v_min: bucket h
// holds rho in (eps^(h-1), eps^h], with rho = 1 in bucket 1. gamma is the
// smallest h covering rho_max, at least 1, found by exact rational power
// comparison.
struct BucketPartition {
  int gamma = 1;
  std::vector<std::vector<int>> buckets;  // 0-based bucket h-1 -> worker ids
};

BucketPartition partition_buckets(const Instance& inst);

// Runs the price-based sub-mechanism on one bucket sampled uniformly from
// 1..gamma; empty buckets stay in the sample space.
Outcome run_care_no_sampled(const Instance& inst, uint64_t seed,
                            PeaTrace* trace = nullptr);

struct OutcomeDistribution {
  BucketPartition partition;
  std::vector<Outcome> per_bucket;
  Rat expected_reputation;  // (1/gamma) * sum of bucket reputations
};

OutcomeDistribution run_care_no_expectation(const Instance& inst);

}  // namespace care

#endif  // CARE_CARE_NO_HPP_

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

#ifndef CARE_VERIFY_HPP_
#define CARE_VERIFY_HPP_

#include <cstdint>
#include <optional>
#include <string>

#include "care/model.hpp"

namespace care::verify {

// Seeded random instances for property checks: wide reputation spreads (to
// exercise several buckets), occasional zero bids and duplicate bids, bids
// clamped under the largest budget so every instance validates.
struct SmallGenSpec {
  int n_lo = 2, n_hi = 8;
  int m_lo = 1, m_hi = 3;
  int L_lo = 1, L_hi = 4;
  long tau_lo = 0;  // 1 for corpora that need every group assignable
  bool wide_reputation = true;
  bool costs_equal_bids = true;
};

Instance random_small_instance(const SmallGenSpec& spec, uint64_t seed);

struct PropertyResult {
  std::string property;
  bool ok = true;
  long trials = 0;
  std::string failure;                    // human-readable description
  std::optional<Instance> counterexample;
};

PropertyResult check_individual_rationality(long trials, uint64_t seed);
PropertyResult check_budget_feasibility(long trials, uint64_t seed);
PropertyResult check_truthfulness(long trials, uint64_t seed);
PropertyResult check_approximation(long trials, uint64_t seed);
PropertyResult check_lemmas(long trials, uint64_t seed);
PropertyResult check_flow_equivalence(long trials, uint64_t seed);

PropertyResult run_property(const std::string& name, long trials, uint64_t seed);

}  // namespace care::verify

#endif  // CARE_VERIFY_HPP_

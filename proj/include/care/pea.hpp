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

#ifndef CARE_PEA_HPP_
#define CARE_PEA_HPP_

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <vector>

#include "care/model.hpp"

namespace care {

struct NotAWinner : std::runtime_error {
  explicit NotAWinner(int worker_id)
      : std::runtime_error("worker " + std::to_string(worker_id) +
                           " is not a winner of the truthful run") {}
};

struct PeaPricePoint {
  Money r;
  Int employability;        // E(r)
  long available = 0;       // |S(r)|
  std::optional<long> max_assignable;  // M_f(r); absent when pruned as unreachable
};

struct PeaTrace {
  std::vector<PeaPricePoint> points;  // R_b descending
  std::optional<Money> critical;
  std::optional<Money> left_adjacent;   // next larger price in R_b
  std::optional<Money> right_adjacent;  // next smaller price in R_b
  int last_affordable = 0;              // workers with bid <= r*
  std::map<int, std::vector<Money>> payment_candidates;  // finite members of P_i
  std::set<int> payment_unbounded;  // winners whose P_i holds the +inf sentinel
};

// {B_j / t : j <= m, 1 <= t <= n}, deduplicated, sorted descending.
std::vector<Money> virtual_prices(const std::vector<Money>& budgets, int n);

// E(r) = sum_j floor(B_j / r); requires r > 0.
Int employability(const Money& r, const std::vector<Money>& budgets);

// M_f(r): maximum number of workers with bid <= r assignable under the
// compatibility constraint and per-requester caps floor(B_j / r).
long osp(const Instance& inst, const std::vector<int>& worker_ids, const Money& r);

// Minimum r in R_b with E(r) = M_f(r); absence is a value, not an error.
// With a trace sink every price point is evaluated (no pruning).
std::optional<Money> critical_price(const Instance& inst,
                                    const std::vector<int>& worker_ids,
                                    PeaTrace* trace = nullptr);

// Unique minimum-weight assignment of exactly M_f(r*) workers from S(r*).
Assignment select_winners(const Instance& inst, const std::vector<int>& worker_ids,
                          const Money& r_star);

// Threshold payment of one truthful winner via the counterfactual re-run
// loop. Throws NotAWinner when the worker is not selected truthfully.
Money compute_payment(const Instance& inst, const std::vector<int>& worker_ids,
                      int winner_id);

// Full sub-mechanism on one worker set (a reputation bucket): critical price,
// min-weight winners, counterfactual threshold payments. Reputation enters
// only the reported totals; allocation is by cardinality.
Outcome run_pea(const Instance& inst, const std::vector<int>& worker_ids,
                PeaTrace* trace = nullptr);

}  // namespace care

#endif  // CARE_PEA_HPP_

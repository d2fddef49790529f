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

#ifndef CARE_ORACLE_HPP_
#define CARE_ORACLE_HPP_

#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

#include "care/model.hpp"

namespace care::oracle {

struct EnumerationBoundExceeded : std::runtime_error {
  explicit EnumerationBoundExceeded(const std::string& what) : std::runtime_error(what) {}
};

struct EnumLimits {
  int max_workers = 10;
  int max_requesters = 4;
};

struct OptResult {
  Rat value;
  Assignment assignment;
  Money cost_paid;  // true costs of the selected workers
};

// Omniscient benchmark paying true costs against the pooled budget B.
OptResult opt_cooperative(const Instance& inst, const EnumLimits& limits = {});
// Same with per-requester true-cost sums bounded by each B_j.
OptResult opt_noncooperative(const Instance& inst, const EnumLimits& limits = {});

enum class IpObjective { MaxCardinality, MaxReputation, MinWeightAtCardinality };

struct IpResult {
  bool feasible = true;  // only MinWeightAtCardinality can be infeasible
  long cardinality = 0;
  Rat reputation;
  Int weight;  // sum of 2^position over the selection
  Assignment assignment;
};

// Exact optimum of the assignment IP by enumerating every worker->requester
// mapping (with pruning); the differential-test twin of the flow solvers.
// Ties resolve to the lexicographically smallest assignment vector.
IpResult ip_enumerate(const Instance& inst, const std::vector<int>& worker_ids,
                      IpObjective objective, long K,
                      const std::vector<long>& requester_caps,
                      const EnumLimits& limits = {8, 3});

// Copy of the instance with one bid replaced.
Instance with_bid(const Instance& inst, int worker_id, const Money& bid);

using UtilityFn = std::function<Rat(const Instance&, int worker_id)>;

// Worker utility under the cooperative mechanism (payment minus true cost).
Rat care_co_utility(const Instance& inst, int worker_id);
// Utility inside the worker's own reputation bucket; the sampled expectation
// scales it by 1/gamma, which cannot change its sign.
Rat care_no_bucket_utility(const Instance& inst, int worker_id);

// Deviation bids covering every breakpoint interval of the mechanisms:
// other bids, reputation-scaled ratio crossings, virtual prices, midpoints
// of consecutive candidates, the true cost and its +-10% neighbours.
std::vector<Money> deviation_grid(const Instance& inst, int worker_id);

// Max over the grid of u(deviation) - u(truthful); truthful mechanisms must
// yield <= 0. Requires the worker's true cost.
Rat truthfulness_probe(const Instance& inst, int worker_id, const UtilityFn& utility);

}  // namespace care::oracle

#endif  // CARE_ORACLE_HPP_

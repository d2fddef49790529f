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

#ifndef CARE_FLOW_HPP_
#define CARE_FLOW_HPP_

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "care/model.hpp"

namespace care::flow {

struct InfeasibleCardinality : std::runtime_error {
  explicit InfeasibleCardinality(const std::string& what) : std::runtime_error(what) {}
};

// Four-layer assignment network:
//   source -> worker (cap 1, tagged with the worker id)
//   worker in group l -> slot(l, j) for every requester j (cap 1)
//   slot(l, j) -> requester j (cap tau_lj)
//   requester j -> sink (cap requester_caps[j])
// A unit of source->sink flow is one hired worker; the slot layer realizes
// the per-group-per-requester quota. Augmenting-path search visits arcs in
// ascending node order, so every solve is deterministic.
//
// The network is an incremental engine: workers start disabled and are turned
// on one at a time. This makes it double as the independence oracle for the
// greedy weighted solvers below and supports the one-worker-removed probes
// the payment schemes need.
class FlowNetwork {
 public:
  // workers: (worker_id, group 1-based) in the node order used for searches.
  FlowNetwork(int num_groups, int num_requesters,
              const std::vector<std::vector<long>>& tau,
              const std::vector<long>& requester_caps,
              std::vector<std::pair<int, int>> workers);

  int size() const { return static_cast<int>(workers_.size()); }
  int worker_id(int index) const { return workers_[static_cast<size_t>(index)].first; }

  // Enables the worker and tries to route one unit through it. Returns true
  // if the worker is now assigned. A failed worker stays enabled; by the
  // exchange property it can never become routable later, so callers may
  // treat false as final.
  bool try_add(int index);
  // Removes the worker's unit (if routed) and disables the worker.
  void remove(int index);
  // Attempts a single augmentation over all enabled, unrouted workers.
  bool reaugment();

  int flow_value() const { return flow_value_; }
  bool is_assigned(int index) const;
  int assigned_requester(int index) const;  // 1-based requester id, 0 if none

  Assignment decode() const;
  std::string to_dot() const;

 private:
  struct Arc {
    int to;
    int rev;
    int cap;
    int flow;
  };

  bool dfs_(int node, std::vector<char>& visited);
  int worker_node_(int index) const { return 1 + index; }
  int slot_node_(int group0, int req0) const {
    return 1 + size() + group0 * num_requesters_ + req0;
  }
  int requester_node_(int req0) const {
    return 1 + size() + num_groups_ * num_requesters_ + req0;
  }

  int num_groups_;
  int num_requesters_;
  int sink_;
  int flow_value_ = 0;
  std::vector<std::pair<int, int>> workers_;
  std::vector<char> enabled_;
  std::vector<Arc> arcs_;
  std::vector<int> first_arc_;   // CSR offsets, size nodes+1
  std::vector<int> source_arc_;  // arc index of source->worker per worker
};

struct FlowResult {
  long flow_value = 0;
  Assignment assignment;
  Rat objective;   // sum of reputations for the weighted solvers
  Int weight = 0;  // sum of 2^position for min-weight selection
};

FlowNetwork build_assignment_network(const Instance& inst,
                                     const std::vector<int>& worker_ids,
                                     const std::vector<long>& requester_caps);

// Maximum feasible assignment size; workers added in the order of worker_ids.
FlowResult max_cardinality(const Instance& inst, const std::vector<int>& worker_ids,
                           const std::vector<long>& requester_caps);
FlowResult max_cardinality(FlowNetwork net);

// Maximum total reputation over feasible assignments, no per-requester cap.
// Implemented as max-gain augmentation: workers are admitted in decreasing
// reputation order (ties to the lower id), each through an augmenting path.
FlowResult max_reputation(const Instance& inst, const std::vector<int>& worker_ids);

// Reference route for the same optimum: min-cost max-flow with worker-arc
// cost -v_i (successive shortest paths, exact rational costs). Both routes
// must agree on the objective.
FlowResult max_reputation_mincost(const Instance& inst, const std::vector<int>& worker_ids);

// Exactly-K assignment minimizing the sum of weights 2^position, positions
// taken from the order of worker_ids (1-based). The optimum is unique; the
// greedy ascending-position selection realizes it without materializing the
// weights (lexicographic equivalence), and the reported weight is the exact
// big-integer sum. Throws InfeasibleCardinality when K exceeds the max flow.
FlowResult min_weight_at_cardinality(const Instance& inst,
                                     const std::vector<int>& worker_ids, long K,
                                     const std::vector<long>& requester_caps);

}  // namespace care::flow

#endif  // CARE_FLOW_HPP_

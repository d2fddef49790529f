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

#ifndef CARE_MODEL_HPP_
#define CARE_MODEL_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "care/rational.hpp"

namespace care {

struct Worker {
  int id = 0;                  // 1..n, unique
  int group = 0;               // 1..L
  Money bid;                   // reported cost
  std::optional<Money> cost;   // true private cost; absent in bid-only probes
  Rat reputation;              // > 0
};

struct Requester {
  int id = 0;  // 1..m, unique
  Money budget;
};

// tau[l][j]: how many workers of group l+1 requester j+1 may hire.
struct CompatibilityMatrix {
  std::vector<std::vector<long>> tau;

  int groups() const { return static_cast<int>(tau.size()); }
  int requesters() const { return tau.empty() ? 0 : static_cast<int>(tau[0].size()); }
};

struct TauClamp {
  int group = 0;      // 1-based
  int requester = 0;  // 1-based
  long original = 0;  // value before clamping to |G_l|
};

// Immutable auction input. Construction enforces the structural invariants
// (partitioning groups, unique ids, matching tau dimensions) and clamps tau
// entries above the group size, recording each clamp.
class Instance {
 public:
  Instance(std::vector<Worker> workers, std::vector<Requester> requesters,
           CompatibilityMatrix tau, Rat epsilon, uint64_t seed);

  int n() const { return static_cast<int>(workers_.size()); }
  int m() const { return static_cast<int>(requesters_.size()); }
  int L() const { return tau_.groups(); }

  const std::vector<Worker>& workers() const { return workers_; }
  const std::vector<Requester>& requesters() const { return requesters_; }
  const CompatibilityMatrix& tau() const { return tau_; }
  const Rat& epsilon() const { return epsilon_; }
  uint64_t seed() const { return seed_; }
  const std::vector<TauClamp>& tau_clamps() const { return clamps_; }

  const Worker& worker(int id) const { return workers_[index_of_.at(id)]; }
  const Requester& requester(int id) const { return requesters_[static_cast<size_t>(id - 1)]; }
  // Worker ids of group l (1-based), ascending.
  const std::vector<int>& group_members(int l) const { return groups_[static_cast<size_t>(l - 1)]; }

  Money total_budget() const;  // B = sum of B_j
  Money max_budget() const;
  std::vector<Money> budgets() const;
  Rat v_min() const { return v_min_; }
  Rat v_max() const { return v_max_; }

 private:
  std::vector<Worker> workers_;
  std::vector<Requester> requesters_;
  CompatibilityMatrix tau_;
  Rat epsilon_;
  uint64_t seed_ = 0;
  std::vector<TauClamp> clamps_;
  std::vector<std::vector<int>> groups_;
  std::map<int, size_t> index_of_;
  Rat v_min_, v_max_;
};

// x_ij = 1 exactly for the listed (worker_id, requester_id) pairs.
struct Assignment {
  std::vector<std::pair<int, int>> entries;  // sorted by worker id

  bool empty() const { return entries.empty(); }
  size_t size() const { return entries.size(); }
  std::optional<int> requester_of(int worker_id) const;
  std::vector<int> worker_ids() const;
};

struct PaymentEntry {
  int requester = 0;
  Money amount;
};

struct Diagnostics {
  std::optional<int> key_worker;
  std::optional<Money> unit_price;      // CARE-CO price per unit reputation
  std::optional<Money> critical_price;  // PEA r*
  std::optional<int> bucket_chosen;     // CARE-NO sampled mode, 1-based
  int gamma = 0;
  std::map<int, Money> requester_spend;
  std::vector<std::string> notes;
};

struct Outcome {
  Assignment assignment;
  std::map<int, PaymentEntry> payments;  // worker id -> single payer + amount
  Rat total_reputation;
  Diagnostics diagnostics;
};

enum class ViolationCode {
  BidExceedsAllBudgets,
  NonPositiveReputation,
  NonPositiveBudget,
  TauClamped,
  EpsilonOutOfRange,
};

const char* violation_code_name(ViolationCode code);

struct Violation {
  ViolationCode code;
  bool warning = false;
  int worker = -1;
  int group = -1;
  int requester = -1;
  std::string message;
};

// Empty iff all type invariants hold and every bid is affordable for at least
// one requester. Violations are data, not failures; TauClamped entries are
// warnings.
std::vector<Violation> validate(const Instance& inst);
bool has_hard_violation(const std::vector<Violation>& violations);

// Asserts the Assignment invariants in O(n + Lm); throws std::logic_error on
// violation. Called after every mechanism run.
void check_assignment(const Instance& inst, const Assignment& assignment);

// Recomputes per-requester spend and total reputation from the outcome and
// checks that payments exist only for assigned workers.
void check_outcome_consistency(const Instance& inst, const Outcome& outcome);

Rat reputation_of(const Instance& inst, const Assignment& assignment);

}  // namespace care

#endif  // CARE_MODEL_HPP_

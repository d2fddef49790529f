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

#include "care/model.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace care {

Instance::Instance(std::vector<Worker> workers, std::vector<Requester> requesters,
                   CompatibilityMatrix tau, Rat epsilon, uint64_t seed)
    : workers_(std::move(workers)),
      requesters_(std::move(requesters)),
      tau_(std::move(tau)),
      epsilon_(std::move(epsilon)),
      seed_(seed) {
  if (workers_.empty()) throw std::invalid_argument("instance needs at least one worker");
  if (requesters_.empty()) throw std::invalid_argument("instance needs at least one requester");
  const int L = tau_.groups();
  if (L < 1) throw std::invalid_argument("instance needs at least one group");
  for (const auto& row : tau_.tau) {
    if (static_cast<int>(row.size()) != static_cast<int>(requesters_.size()))
      throw std::invalid_argument("tau row length must equal requester count");
    for (long t : row)
      if (t < 0) throw std::invalid_argument("tau entries must be non-negative");
  }
  for (size_t j = 0; j < requesters_.size(); ++j) {
    if (requesters_[j].id != static_cast<int>(j) + 1)
      throw std::invalid_argument("requester ids must be 1..m in order");
  }
  groups_.assign(static_cast<size_t>(L), {});
  for (size_t i = 0; i < workers_.size(); ++i) {
    const Worker& w = workers_[i];
    if (w.group < 1 || w.group > L)
      throw std::invalid_argument("worker " + std::to_string(w.id) +
                                  " references unknown group " + std::to_string(w.group));
    if (!index_of_.emplace(w.id, i).second)
      throw std::invalid_argument("duplicate worker id " + std::to_string(w.id));
    groups_[static_cast<size_t>(w.group - 1)].push_back(w.id);
  }
  if (epsilon_ <= 1) throw std::invalid_argument("epsilon must exceed 1");

  for (int l = 1; l <= L; ++l) {
    const long size_l = static_cast<long>(groups_[static_cast<size_t>(l - 1)].size());
    for (int j = 1; j <= m(); ++j) {
      long& t = tau_.tau[static_cast<size_t>(l - 1)][static_cast<size_t>(j - 1)];
      if (t > size_l) {
        clamps_.push_back({l, j, t});
        t = size_l;
      }
    }
  }

  v_min_ = workers_[0].reputation;
  v_max_ = workers_[0].reputation;
  for (const Worker& w : workers_) {
    v_min_ = std::min(v_min_, w.reputation);
    v_max_ = std::max(v_max_, w.reputation);
  }
}

Money Instance::total_budget() const {
  Money total;
  for (const Requester& r : requesters_) total += r.budget;
  return total;
}

Money Instance::max_budget() const {
  Money best;
  for (const Requester& r : requesters_) best = std::max(best, r.budget);
  return best;
}

std::vector<Money> Instance::budgets() const {
  std::vector<Money> out;
  out.reserve(requesters_.size());
  for (const Requester& r : requesters_) out.push_back(r.budget);
  return out;
}

std::optional<int> Assignment::requester_of(int worker_id) const {
  for (const auto& [w, r] : entries)
    if (w == worker_id) return r;
  return std::nullopt;
}

std::vector<int> Assignment::worker_ids() const {
  std::vector<int> out;
  out.reserve(entries.size());
  for (const auto& [w, r] : entries) out.push_back(w);
  return out;
}

const char* violation_code_name(ViolationCode code) {
  switch (code) {
    case ViolationCode::BidExceedsAllBudgets: return "BidExceedsAllBudgets";
    case ViolationCode::NonPositiveReputation: return "NonPositiveReputation";
    case ViolationCode::NonPositiveBudget: return "NonPositiveBudget";
    case ViolationCode::TauClamped: return "TauClamped";
    case ViolationCode::EpsilonOutOfRange: return "EpsilonOutOfRange";
  }
  return "Unknown";
}

std::vector<Violation> validate(const Instance& inst) {
  std::vector<Violation> out;
  const Money cap = inst.max_budget();
  for (const Worker& w : inst.workers()) {
    if (w.bid > cap) {
      Violation v{ViolationCode::BidExceedsAllBudgets};
      v.worker = w.id;
      v.message = "worker " + std::to_string(w.id) + " bids " + w.bid.str() +
                  " above every requester budget";
      out.push_back(std::move(v));
    }
    if (w.reputation <= 0) {
      Violation v{ViolationCode::NonPositiveReputation};
      v.worker = w.id;
      v.message = "worker " + std::to_string(w.id) + " has non-positive reputation";
      out.push_back(std::move(v));
    }
  }
  for (const Requester& r : inst.requesters()) {
    if (r.budget.is_zero()) {
      Violation v{ViolationCode::NonPositiveBudget};
      v.requester = r.id;
      v.message = "requester " + std::to_string(r.id) + " has zero budget";
      out.push_back(std::move(v));
    }
  }
  for (const TauClamp& c : inst.tau_clamps()) {
    Violation v{ViolationCode::TauClamped};
    v.warning = true;
    v.group = c.group;
    v.requester = c.requester;
    std::ostringstream msg;
    msg << "tau[" << c.group << "][" << c.requester << "]=" << c.original
        << " clamped to group size "
        << inst.group_members(c.group).size();
    v.message = msg.str();
    out.push_back(std::move(v));
  }
  return out;
}

bool has_hard_violation(const std::vector<Violation>& violations) {
  return std::any_of(violations.begin(), violations.end(),
                     [](const Violation& v) { return !v.warning; });
}

void check_assignment(const Instance& inst, const Assignment& assignment) {
  std::set<int> seen;
  std::vector<std::vector<long>> used(
      static_cast<size_t>(inst.L()), std::vector<long>(static_cast<size_t>(inst.m()), 0));
  for (const auto& [w, r] : assignment.entries) {
    if (!seen.insert(w).second)
      throw std::logic_error("worker " + std::to_string(w) + " assigned twice");
    if (r < 1 || r > inst.m())
      throw std::logic_error("assignment references unknown requester");
    const Worker& worker = inst.worker(w);
    ++used[static_cast<size_t>(worker.group - 1)][static_cast<size_t>(r - 1)];
  }
  for (int l = 1; l <= inst.L(); ++l)
    for (int j = 1; j <= inst.m(); ++j)
      if (used[static_cast<size_t>(l - 1)][static_cast<size_t>(j - 1)] >
          inst.tau().tau[static_cast<size_t>(l - 1)][static_cast<size_t>(j - 1)])
        throw std::logic_error("compatibility constraint violated at group " +
                               std::to_string(l) + ", requester " + std::to_string(j));
}

void check_outcome_consistency(const Instance& inst, const Outcome& outcome) {
  check_assignment(inst, outcome.assignment);
  for (const auto& [w, p] : outcome.payments) {
    auto r = outcome.assignment.requester_of(w);
    if (!r || *r != p.requester)
      throw std::logic_error("payment to unassigned worker " + std::to_string(w));
  }
  if (reputation_of(inst, outcome.assignment) != outcome.total_reputation)
    throw std::logic_error("total reputation does not match the assignment");
}

Rat reputation_of(const Instance& inst, const Assignment& assignment) {
  Rat total = 0;
  for (const auto& [w, r] : assignment.entries) total += inst.worker(w).reputation;
  return total;
}

}  // namespace care

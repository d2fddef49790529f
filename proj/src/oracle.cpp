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

#include "care/oracle.hpp"

#include <algorithm>
#include <set>

#include "care/care_co.hpp"
#include "care/care_no.hpp"
#include "care/pea.hpp"

namespace care::oracle {

namespace {

enum class BudgetRule { None, Pooled, PerRequester };

// Depth-first walk over every worker->requester mapping in lexicographic
// order (0 = unassigned first), pruning infeasible branches as they form.
// Keeping only strict improvements makes the reported optimum the
// lexicographically smallest one.
class Enumerator {
 public:
  Enumerator(const Instance& inst, std::vector<int> ids, BudgetRule budget_rule)
      : inst_(inst),
        ids_(std::move(ids)),
        budget_rule_(budget_rule),
        choice_(ids_.size(), 0),
        group_used_(static_cast<size_t>(inst.L()),
                    std::vector<long>(static_cast<size_t>(inst.m()), 0)),
        req_count_(static_cast<size_t>(inst.m()), 0),
        req_spend_(static_cast<size_t>(inst.m())) {}

  void set_caps(const std::vector<long>* caps) { caps_ = caps; }
  void set_cardinality(long K) { exact_cardinality_ = K; }

  template <typename Visit>
  void run(Visit&& visit) {
    walk_(0, std::forward<Visit>(visit));
  }

  const Instance& instance() const { return inst_; }
  const std::vector<int>& ids() const { return ids_; }

  long cardinality() const { return cardinality_; }
  const Rat& reputation() const { return reputation_; }
  const Money& spend() const { return spend_total_; }
  Int weight() const {
    Int total = 0;
    for (size_t t = 0; t < choice_.size(); ++t)
      if (choice_[t] != 0) total += Int(1) << (t + 1);
    return total;
  }
  Assignment assignment() const {
    Assignment out;
    for (size_t t = 0; t < choice_.size(); ++t)
      if (choice_[t] != 0) out.entries.emplace_back(ids_[t], choice_[t]);
    std::sort(out.entries.begin(), out.entries.end());
    return out;
  }

 private:
  template <typename Visit>
  void walk_(size_t t, Visit&& visit) {
    if (t == ids_.size()) {
      if (!exact_cardinality_ || cardinality_ == *exact_cardinality_) visit();
      return;
    }
    // Remaining workers cannot make up a cardinality shortfall.
    if (exact_cardinality_ &&
        cardinality_ + static_cast<long>(ids_.size() - t) < *exact_cardinality_)
      return;
    const Worker& w = inst_.worker(ids_[t]);
    choice_[t] = 0;
    walk_(t + 1, visit);
    if (exact_cardinality_ && cardinality_ == *exact_cardinality_) return;
    for (int j = 1; j <= inst_.m(); ++j) {
      auto& used = group_used_[static_cast<size_t>(w.group - 1)][static_cast<size_t>(j - 1)];
      if (used >= inst_.tau().tau[static_cast<size_t>(w.group - 1)][static_cast<size_t>(j - 1)])
        continue;
      if (caps_ && req_count_[static_cast<size_t>(j - 1)] >= (*caps_)[static_cast<size_t>(j - 1)])
        continue;
      const Money& cost = budget_rule_ == BudgetRule::None ? w.bid : require_cost_(w);
      if (budget_rule_ == BudgetRule::Pooled &&
          spend_total_ + cost > inst_.total_budget())
        continue;
      if (budget_rule_ == BudgetRule::PerRequester &&
          req_spend_[static_cast<size_t>(j - 1)] + cost > inst_.requester(j).budget)
        continue;

      choice_[t] = j;
      ++used;
      ++req_count_[static_cast<size_t>(j - 1)];
      ++cardinality_;
      reputation_ += w.reputation;
      if (budget_rule_ == BudgetRule::Pooled) spend_total_ += cost;
      if (budget_rule_ == BudgetRule::PerRequester)
        req_spend_[static_cast<size_t>(j - 1)] += cost;

      walk_(t + 1, visit);

      choice_[t] = 0;
      --used;
      --req_count_[static_cast<size_t>(j - 1)];
      --cardinality_;
      reputation_ -= w.reputation;
      if (budget_rule_ == BudgetRule::Pooled)
        spend_total_ = Money(Rat(spend_total_.value() - cost.value()));
      if (budget_rule_ == BudgetRule::PerRequester) {
        Money& s = req_spend_[static_cast<size_t>(j - 1)];
        s = Money(Rat(s.value() - cost.value()));
      }
    }
  }

  const Money& require_cost_(const Worker& w) const {
    if (!w.cost)
      throw std::invalid_argument("worker " + std::to_string(w.id) +
                                  " has no true cost; the optimum benchmark needs one");
    return *w.cost;
  }

  const Instance& inst_;
  std::vector<int> ids_;
  BudgetRule budget_rule_;
  const std::vector<long>* caps_ = nullptr;
  std::optional<long> exact_cardinality_;

  std::vector<int> choice_;
  std::vector<std::vector<long>> group_used_;
  std::vector<long> req_count_;
  std::vector<Money> req_spend_;
  Money spend_total_;
  long cardinality_ = 0;
  Rat reputation_;
};

void check_limits(const Instance& inst, size_t workers, const EnumLimits& limits,
                  const char* where) {
  if (static_cast<int>(workers) > limits.max_workers ||
      inst.m() > limits.max_requesters)
    throw EnumerationBoundExceeded(std::string(where) + ": instance exceeds the enumeration bounds (" +
                                   std::to_string(limits.max_workers) + " workers, " +
                                   std::to_string(limits.max_requesters) + " requesters)");
}

OptResult opt_with_rule(const Instance& inst, BudgetRule rule, const EnumLimits& limits,
                        const char* where) {
  std::vector<int> ids;
  for (const Worker& w : inst.workers()) ids.push_back(w.id);
  check_limits(inst, ids.size(), limits, where);
  Enumerator en(inst, ids, rule);
  OptResult best;
  bool first = true;
  en.run([&] {
    if (first || en.reputation() > best.value) {
      first = false;
      best.value = en.reputation();
      best.assignment = en.assignment();
      best.cost_paid = en.spend();
    }
  });
  return best;
}

}  // namespace

OptResult opt_cooperative(const Instance& inst, const EnumLimits& limits) {
  return opt_with_rule(inst, BudgetRule::Pooled, limits, "opt_cooperative");
}

OptResult opt_noncooperative(const Instance& inst, const EnumLimits& limits) {
  return opt_with_rule(inst, BudgetRule::PerRequester, limits, "opt_noncooperative");
}

IpResult ip_enumerate(const Instance& inst, const std::vector<int>& worker_ids,
                      IpObjective objective, long K,
                      const std::vector<long>& requester_caps,
                      const EnumLimits& limits) {
  check_limits(inst, worker_ids.size(), limits, "ip_enumerate");
  Enumerator en(inst, worker_ids, BudgetRule::None);
  en.set_caps(&requester_caps);
  if (objective == IpObjective::MinWeightAtCardinality) en.set_cardinality(K);

  IpResult best;
  bool first = true;
  en.run([&] {
    switch (objective) {
      case IpObjective::MaxCardinality:
        if (first || en.cardinality() > best.cardinality) break;
        return;
      case IpObjective::MaxReputation:
        if (first || en.reputation() > best.reputation) break;
        return;
      case IpObjective::MinWeightAtCardinality:
        if (first || en.weight() < best.weight) break;
        return;
    }
    first = false;
    best.cardinality = en.cardinality();
    best.reputation = en.reputation();
    best.weight = en.weight();
    best.assignment = en.assignment();
  });
  if (objective == IpObjective::MinWeightAtCardinality && first) {
    best.feasible = false;
  }
  return best;
}

Instance with_bid(const Instance& inst, int worker_id, const Money& bid) {
  std::vector<Worker> workers = inst.workers();
  for (Worker& w : workers)
    if (w.id == worker_id) w.bid = bid;
  return Instance(std::move(workers), inst.requesters(), inst.tau(), inst.epsilon(),
                  inst.seed());
}

Rat care_co_utility(const Instance& inst, int worker_id) {
  const Worker& w = inst.worker(worker_id);
  if (!w.cost) throw std::invalid_argument("utility needs the true cost");
  Outcome outcome = run_care_co(inst);
  auto it = outcome.payments.find(worker_id);
  if (it == outcome.payments.end()) return 0;
  return it->second.amount - *w.cost;
}

Rat care_no_bucket_utility(const Instance& inst, int worker_id) {
  const Worker& w = inst.worker(worker_id);
  if (!w.cost) throw std::invalid_argument("utility needs the true cost");
  const BucketPartition partition = partition_buckets(inst);
  for (const auto& bucket : partition.buckets) {
    if (std::find(bucket.begin(), bucket.end(), worker_id) == bucket.end()) continue;
    Outcome outcome = run_pea(inst, bucket);
    auto it = outcome.payments.find(worker_id);
    if (it == outcome.payments.end()) return 0;
    return it->second.amount - *w.cost;
  }
  return 0;
}

std::vector<Money> deviation_grid(const Instance& inst, int worker_id) {
  const Worker& self = inst.worker(worker_id);
  if (!self.cost) throw std::invalid_argument("deviation grid needs the true cost");
  std::set<Rat> points;
  points.insert(self.cost->value());
  points.insert(self.cost->value() * Rat(9, 10));
  points.insert(self.cost->value() * Rat(11, 10));
  points.insert(Rat(0));
  for (const Worker& other : inst.workers()) {
    if (other.id == worker_id) continue;
    points.insert(other.bid.value());
    // Bid that matches the other worker's cost-effectiveness ratio.
    points.insert(other.bid.value() / other.reputation * self.reputation);
  }
  for (const Money& price : virtual_prices(inst.budgets(), inst.n()))
    points.insert(price.value());
  points.insert(inst.max_budget().value() + 1);

  std::vector<Rat> sorted(points.begin(), points.end());
  std::vector<Money> grid;
  for (size_t i = 0; i < sorted.size(); ++i) {
    if (sorted[i] >= 0) grid.push_back(Money(sorted[i]));
    if (i + 1 < sorted.size()) {
      Rat mid = (sorted[i] + sorted[i + 1]) / 2;
      if (mid >= 0) grid.push_back(Money(mid));
    }
  }
  return grid;
}

Rat truthfulness_probe(const Instance& inst, int worker_id, const UtilityFn& utility) {
  const Worker& self = inst.worker(worker_id);
  if (!self.cost) throw std::invalid_argument("probe needs the true cost");
  const Rat baseline = utility(with_bid(inst, worker_id, *self.cost), worker_id);
  Rat best_gain = 0;  // the grid contains the truthful bid itself
  for (const Money& bid : deviation_grid(inst, worker_id)) {
    const Rat gain = utility(with_bid(inst, worker_id, bid), worker_id) - baseline;
    best_gain = std::max(best_gain, gain);
  }
  return best_gain;
}

}  // namespace care::oracle

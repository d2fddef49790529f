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

#include "care/harness.hpp"

#include <algorithm>
#include <chrono>
#include <sstream>
#include <thread>

#include "care/care_co.hpp"
#include "care/care_no.hpp"
#include "care/rng.hpp"

namespace care::harness {

namespace {

// Uniform 2-decimal rational in [lo, hi]; bounds must be whole cents.
Money uniform_cents(SplitMix64& rng, const Money& lo, const Money& hi) {
  const Rat lo_c = lo.value() * 100;
  const Rat hi_c = hi.value() * 100;
  if (denominator(lo_c) != 1 || denominator(hi_c) != 1)
    throw std::invalid_argument("range bounds must have at most 2 decimals");
  const int64_t a = static_cast<int64_t>(numerator(lo_c));
  const int64_t b = static_cast<int64_t>(numerator(hi_c));
  return Money(Rat(rng.uniform_int(a, b), 100));
}

Rat tier_midpoint(const BidTier& tier) { return (tier.accuracy_lo + tier.accuracy_hi) / 2; }

}  // namespace

std::vector<BidTier> default_tiers() {
  return {
      {Rat(2, 5), Rat(3, 5), Money(2), Money(4)},
      {Rat(3, 5), Rat(4, 5), Money(3), Money(5)},
      {Rat(4, 5), Rat(1), Money(4), Money(6)},
  };
}

GeneratedInstance generate_instance(const GeneratorParams& params, uint64_t seed) {
  if (params.workers < 1 || params.requesters < 1 || params.groups < 1 ||
      params.tiers.empty() || params.budget_lo > params.budget_hi)
    throw std::invalid_argument("invalid generator parameters");

  std::vector<Worker> workers;
  std::vector<std::pair<Money, Money>> ranges;
  workers.reserve(static_cast<size_t>(params.workers));
  for (int i = 1; i <= params.workers; ++i) {
    SplitMix64 tier_rng(derive_seed(seed, "worker-tier", static_cast<uint64_t>(i)));
    SplitMix64 bid_rng(derive_seed(seed, "worker-bid", static_cast<uint64_t>(i)));
    SplitMix64 rep_rng(derive_seed(seed, "worker-rep", static_cast<uint64_t>(i)));
    SplitMix64 group_rng(derive_seed(seed, "worker-group", static_cast<uint64_t>(i)));

    const BidTier& tier =
        params.tiers[static_cast<size_t>(tier_rng.below(params.tiers.size()))];
    Worker w;
    w.id = i;
    w.group = static_cast<int>(group_rng.uniform_int(1, params.groups));
    w.bid = uniform_cents(bid_rng, tier.bid_lo, tier.bid_hi);
    w.cost = w.bid;  // workers are truthful under the mechanisms under test
    w.reputation = tier_midpoint(tier) + Rat(rep_rng.uniform_int(-5, 5), 100);
    workers.push_back(std::move(w));
    ranges.emplace_back(tier.bid_lo, tier.bid_hi);
  }

  std::vector<Requester> requesters;
  for (int j = 1; j <= params.requesters; ++j) {
    SplitMix64 rng(derive_seed(seed, "budget", static_cast<uint64_t>(j)));
    requesters.push_back({j, uniform_cents(rng, params.budget_lo, params.budget_hi)});
  }

  std::vector<long> group_size(static_cast<size_t>(params.groups), 0);
  for (const Worker& w : workers) ++group_size[static_cast<size_t>(w.group - 1)];
  CompatibilityMatrix tau;
  tau.tau.assign(static_cast<size_t>(params.groups),
                 std::vector<long>(static_cast<size_t>(params.requesters), 0));
  for (int l = 1; l <= params.groups; ++l)
    for (int j = 1; j <= params.requesters; ++j) {
      SplitMix64 rng(derive_seed(seed, "tau", static_cast<uint64_t>(l),
                                 static_cast<uint64_t>(j)));
      const long hi = std::max<long>(group_size[static_cast<size_t>(l - 1)], 1);
      tau.tau[static_cast<size_t>(l - 1)][static_cast<size_t>(j - 1)] =
          rng.uniform_int(1, hi);
    }

  return {Instance(std::move(workers), std::move(requesters), std::move(tau),
                   params.epsilon, seed),
          std::move(ranges)};
}

Outcome run_ranpri(const Instance& inst, uint64_t seed,
                   const std::vector<std::pair<Money, Money>>* ranges) {
  std::pair<Money, Money> global{inst.workers().front().bid, inst.workers().front().bid};
  for (const Worker& w : inst.workers()) {
    global.first = std::min(global.first, w.bid);
    global.second = std::max(global.second, w.bid);
  }

  Outcome outcome;
  std::vector<Money> remaining;
  for (const Requester& r : inst.requesters()) remaining.push_back(r.budget);
  std::vector<std::vector<long>> used(
      static_cast<size_t>(inst.L()), std::vector<long>(static_cast<size_t>(inst.m()), 0));

  for (size_t i = 0; i < inst.workers().size(); ++i) {
    const Worker& w = inst.workers()[i];
    const auto& range = ranges ? (*ranges)[i] : global;
    SplitMix64 price_rng(derive_seed(seed, "ranpri-price", static_cast<uint64_t>(w.id)));
    const Money price = uniform_cents(price_rng, range.first, range.second);
    if (price < w.bid) continue;
    std::vector<int> feasible;
    for (int j = 1; j <= inst.m(); ++j) {
      if (remaining[static_cast<size_t>(j - 1)] < price) continue;
      if (used[static_cast<size_t>(w.group - 1)][static_cast<size_t>(j - 1)] >=
          inst.tau().tau[static_cast<size_t>(w.group - 1)][static_cast<size_t>(j - 1)])
        continue;
      feasible.push_back(j);
    }
    if (feasible.empty()) continue;
    SplitMix64 assign_rng(derive_seed(seed, "ranpri-assign", static_cast<uint64_t>(w.id)));
    const int j = feasible[static_cast<size_t>(assign_rng.below(feasible.size()))];
    outcome.assignment.entries.emplace_back(w.id, j);
    outcome.payments[w.id] = PaymentEntry{j, price};
    outcome.diagnostics.requester_spend[j] += price;
    Money& left = remaining[static_cast<size_t>(j - 1)];
    left = Money(Rat(left.value() - price.value()));
    ++used[static_cast<size_t>(w.group - 1)][static_cast<size_t>(j - 1)];
  }
  outcome.total_reputation = reputation_of(inst, outcome.assignment);
  check_outcome_consistency(inst, outcome);
  return outcome;
}

Outcome run_rrafl_ext(const Instance& inst, uint64_t seed) {
  const std::vector<int> order = cost_effectiveness_order(inst);
  const Rat budget = inst.total_budget().value();

  // Proportional-share prefix on the pooled budget, no compatibility
  // awareness in the selection itself.
  Rat prefix_rep = 0;
  int k = 0;
  for (int i = 1; i <= inst.n(); ++i) {
    const Worker& w = inst.worker(order[static_cast<size_t>(i - 1)]);
    const Rat with_next = prefix_rep + w.reputation;
    if (w.bid.value() / w.reputation * with_next > budget) break;
    prefix_rep = with_next;
    k = i;
  }

  Outcome outcome;
  if (k == 0 || prefix_rep == 0) {
    outcome.diagnostics.notes.push_back("no affordable prefix");
    check_outcome_consistency(inst, outcome);
    return outcome;
  }
  Rat unit = budget / prefix_rep;
  if (k < inst.n()) {
    const Worker& next = inst.worker(order[static_cast<size_t>(k)]);
    unit = std::min(unit, next.bid.value() / next.reputation);
  }

  std::vector<std::vector<long>> used(
      static_cast<size_t>(inst.L()), std::vector<long>(static_cast<size_t>(inst.m()), 0));
  int dropped = 0;
  for (int i = 1; i <= k; ++i) {
    const Worker& w = inst.worker(order[static_cast<size_t>(i - 1)]);
    std::vector<int> feasible;
    for (int j = 1; j <= inst.m(); ++j)
      if (used[static_cast<size_t>(w.group - 1)][static_cast<size_t>(j - 1)] <
          inst.tau().tau[static_cast<size_t>(w.group - 1)][static_cast<size_t>(j - 1)])
        feasible.push_back(j);
    if (feasible.empty()) {
      ++dropped;  // winner with no compatible requester; payment voided
      continue;
    }
    SplitMix64 assign_rng(derive_seed(seed, "rrafl-assign", static_cast<uint64_t>(w.id)));
    const int j = feasible[static_cast<size_t>(assign_rng.below(feasible.size()))];
    Money payment(Rat(w.reputation * unit));
    outcome.assignment.entries.emplace_back(w.id, j);
    outcome.diagnostics.requester_spend[j] += payment;
    outcome.payments[w.id] = PaymentEntry{j, std::move(payment)};
    ++used[static_cast<size_t>(w.group - 1)][static_cast<size_t>(j - 1)];
  }
  std::sort(outcome.assignment.entries.begin(), outcome.assignment.entries.end());
  outcome.total_reputation = reputation_of(inst, outcome.assignment);
  if (dropped > 0)
    outcome.diagnostics.notes.push_back(std::to_string(dropped) + " winners dropped");
  check_outcome_consistency(inst, outcome);
  return outcome;
}

const char* mechanism_name(MechanismId id) {
  switch (id) {
    case MechanismId::CareCo: return "care-co";
    case MechanismId::CareNo: return "care-no";
    case MechanismId::RanPri: return "ranpri";
    case MechanismId::RraflExt: return "rrafl-ext";
  }
  return "unknown";
}

namespace {

struct MechanismStats {
  Rat reputation;
  Money total_paid;
  Money max_spend;
};

MechanismStats stats_of(const Instance& inst, const Outcome& outcome) {
  MechanismStats stats;
  stats.reputation = reputation_of(inst, outcome.assignment);
  for (const auto& [w, p] : outcome.payments) stats.total_paid += p.amount;
  for (const auto& [r, s] : outcome.diagnostics.requester_spend)
    stats.max_spend = std::max(stats.max_spend, s);
  return stats;
}

ReportRow run_one(const Instance& inst,
                  const std::vector<std::pair<Money, Money>>& ranges,
                  MechanismId mechanism, uint64_t seed) {
  ReportRow row;
  row.mechanism = mechanism_name(mechanism);
  const auto start = std::chrono::steady_clock::now();
  switch (mechanism) {
    case MechanismId::CareCo: {
      MechanismStats s = stats_of(inst, run_care_co(inst));
      row.reputation = s.reputation;
      row.total_paid = s.total_paid;
      row.max_requester_spend = s.max_spend;
      break;
    }
    case MechanismId::CareNo: {
      // Expectation mode: reputation is the 1/gamma mixture over buckets.
      OutcomeDistribution dist = run_care_no_expectation(inst);
      Money paid, spend;
      for (const Outcome& o : dist.per_bucket) {
        MechanismStats s = stats_of(inst, o);
        paid += s.total_paid;
        spend = std::max(spend, s.max_spend);
      }
      row.reputation = dist.expected_reputation;
      row.total_paid = Money(Rat(paid.value() / dist.partition.gamma));
      row.max_requester_spend = spend;
      break;
    }
    case MechanismId::RanPri: {
      MechanismStats s =
          stats_of(inst, run_ranpri(inst, derive_seed(seed, "ranpri"), &ranges));
      row.reputation = s.reputation;
      row.total_paid = s.total_paid;
      row.max_requester_spend = s.max_spend;
      break;
    }
    case MechanismId::RraflExt: {
      MechanismStats s = stats_of(inst, run_rrafl_ext(inst, derive_seed(seed, "rrafl")));
      row.reputation = s.reputation;
      row.total_paid = s.total_paid;
      row.max_requester_spend = s.max_spend;
      break;
    }
  }
  row.runtime_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                       std::chrono::steady_clock::now() - start)
                       .count();
  return row;
}

}  // namespace

ExperimentReport run_experiment(const SweepSpec& sweep, const GeneratorParams& params,
                                const std::vector<MechanismId>& mechanisms, int jobs) {
  SweepSpec spec = sweep;
  if (spec.values.empty())
    spec.values = spec.axis == SweepAxis::Requesters
                      ? std::vector<int>{2, 4, 6, 8, 10, 12}
                      : std::vector<int>{4, 8, 12, 16, 20, 24};
  const char* axis_name = spec.axis == SweepAxis::Requesters ? "requesters" : "groups";

  struct Task {
    int value;
    uint64_t seed;
  };
  std::vector<Task> tasks;
  for (int value : spec.values)
    for (int t = 0; t < spec.trials; ++t)
      tasks.push_back({value, spec.seed + static_cast<uint64_t>(t)});

  std::vector<std::vector<ReportRow>> slots(tasks.size());
  std::atomic<size_t> cursor{0};
  auto work = [&] {
    while (true) {
      const size_t at = cursor.fetch_add(1);
      if (at >= tasks.size()) break;
      GeneratorParams p = params;
      if (spec.axis == SweepAxis::Requesters)
        p.requesters = tasks[at].value;
      else
        p.groups = tasks[at].value;
      GeneratedInstance gen = generate_instance(p, tasks[at].seed);
      for (MechanismId mechanism : mechanisms) {
        ReportRow row = run_one(gen.instance, gen.price_ranges, mechanism, tasks[at].seed);
        row.axis = axis_name;
        row.value = tasks[at].value;
        row.seed = tasks[at].seed;
        slots[at].push_back(std::move(row));
      }
    }
  };
  if (jobs <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < jobs; ++t) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }

  ExperimentReport report;
  report.header_notes.push_back(
      "reputation proxy: tier accuracy midpoint + uniform jitter in [-0.05, 0.05]");
  report.header_notes.push_back(std::string("sweep axis: ") + axis_name);
  for (auto& rows : slots)
    for (auto& row : rows) report.rows.push_back(std::move(row));
  return report;
}

std::string report_csv(const ExperimentReport& report) {
  std::ostringstream os;
  for (const std::string& note : report.header_notes) os << "# " << note << "\n";
  os << "axis,value,seed,mechanism,reputation,total_paid,max_requester_spend,runtime_ms\n";
  for (const ReportRow& row : report.rows) {
    os << row.axis << ',' << row.value << ',' << row.seed << ',' << row.mechanism << ','
       << rational_str(row.reputation) << ',' << row.total_paid.str() << ','
       << row.max_requester_spend.str() << ',' << row.runtime_ms << "\n";
  }
  return os.str();
}

}  // namespace care::harness

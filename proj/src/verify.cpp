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

#include "care/verify.hpp"

#include <algorithm>
#include <sstream>

#include "care/care_co.hpp"
#include "care/care_no.hpp"
#include "care/flow.hpp"
#include "care/oracle.hpp"
#include "care/pea.hpp"
#include "care/rng.hpp"

namespace care::verify {

namespace {

Money cents(int64_t c) { return Money(Rat(c, 100)); }

// alpha = min{m, max_{l,j} ceil(|G_l| / tau_lj)}; a zero tau with a non-empty
// group makes the inner term unbounded, collapsing alpha to m.
Rat compatibility_alpha(const Instance& inst) {
  Rat best = 0;
  bool unbounded = false;
  for (int l = 1; l <= inst.L(); ++l) {
    const long size_l = static_cast<long>(inst.group_members(l).size());
    if (size_l == 0) continue;
    for (int j = 1; j <= inst.m(); ++j) {
      const long tau = inst.tau().tau[static_cast<size_t>(l - 1)][static_cast<size_t>(j - 1)];
      if (tau == 0) {
        unbounded = true;
        continue;
      }
      best = std::max(best, Rat((size_l + tau - 1) / tau));
    }
  }
  if (unbounded) return Rat(inst.m());
  return std::min(best, Rat(inst.m()));
}

struct Checker {
  PropertyResult result;

  bool fail(const Instance& inst, std::string message) {
    result.ok = false;
    result.failure = std::move(message);
    result.counterexample = inst;
    return false;
  }
};

template <typename Body>
PropertyResult run_trials(const std::string& property, long trials, uint64_t seed,
                          const SmallGenSpec& spec, Body&& body) {
  Checker checker;
  checker.result.property = property;
  checker.result.trials = trials;
  for (long t = 0; t < trials; ++t) {
    Instance inst =
        random_small_instance(spec, derive_seed(seed, property.c_str(), static_cast<uint64_t>(t)));
    if (!body(inst, checker)) break;
  }
  return checker.result;
}

bool outcome_is_individually_rational(const Instance& inst, const Outcome& outcome,
                                      std::string* why) {
  for (const auto& [w, p] : outcome.payments) {
    if (p.amount < inst.worker(w).bid) {
      *why = "worker " + std::to_string(w) + " paid " + p.amount.str() + " below bid " +
             inst.worker(w).bid.str();
      return false;
    }
  }
  return true;
}

}  // namespace

Instance random_small_instance(const SmallGenSpec& spec, uint64_t seed) {
  SplitMix64 rng(seed);
  const int n = static_cast<int>(rng.uniform_int(spec.n_lo, spec.n_hi));
  const int m = static_cast<int>(rng.uniform_int(spec.m_lo, spec.m_hi));
  const int L = static_cast<int>(rng.uniform_int(spec.L_lo, spec.L_hi));

  std::vector<Requester> requesters;
  Money max_budget;
  for (int j = 1; j <= m; ++j) {
    Money b = cents(rng.uniform_int(500, 10000));
    max_budget = std::max(max_budget, b);
    requesters.push_back({j, std::move(b)});
  }

  std::vector<Worker> workers;
  for (int i = 1; i <= n; ++i) {
    Worker w;
    w.id = i;
    w.group = static_cast<int>(rng.uniform_int(1, L));
    Money bid = rng.below(20) == 0 ? Money(0) : cents(rng.uniform_int(0, 1000));
    if (rng.below(5) == 0 && i > 1) bid = workers.back().bid;  // duplicate bids
    w.bid = std::min(bid, max_budget);
    if (spec.costs_equal_bids) w.cost = w.bid;
    Rat rep = Rat(rng.uniform_int(10, 500), 100);
    if (spec.wide_reputation) {
      const auto scale = rng.below(3);
      for (uint64_t s = 0; s < scale; ++s) rep *= 10;
    }
    w.reputation = rep;
    workers.push_back(std::move(w));
  }

  std::vector<long> group_size(static_cast<size_t>(L), 0);
  for (const Worker& w : workers) ++group_size[static_cast<size_t>(w.group - 1)];
  CompatibilityMatrix tau;
  tau.tau.assign(static_cast<size_t>(L), std::vector<long>(static_cast<size_t>(m), 0));
  for (int l = 0; l < L; ++l)
    for (int j = 0; j < m; ++j)
      tau.tau[static_cast<size_t>(l)][static_cast<size_t>(j)] = rng.uniform_int(
          std::min(spec.tau_lo, std::max(group_size[static_cast<size_t>(l)], 1L)),
          std::max(group_size[static_cast<size_t>(l)], 1L));

  const Rat epsilon = rng.below(2) == 0 ? Rat(10) : Rat(2);
  return Instance(std::move(workers), std::move(requesters), std::move(tau), epsilon, seed);
}

PropertyResult check_individual_rationality(long trials, uint64_t seed) {
  SmallGenSpec spec;
  spec.n_hi = 30;
  spec.m_hi = 6;
  spec.L_hi = 8;
  return run_trials("ir", trials, seed, spec, [](const Instance& inst, Checker& c) {
    std::string why;
    if (!outcome_is_individually_rational(inst, run_care_co(inst), &why))
      return c.fail(inst, "care-co: " + why);
    for (const Outcome& o : run_care_no_expectation(inst).per_bucket)
      if (!outcome_is_individually_rational(inst, o, &why))
        return c.fail(inst, "care-no bucket: " + why);
    return true;
  });
}

PropertyResult check_budget_feasibility(long trials, uint64_t seed) {
  SmallGenSpec spec;
  spec.n_hi = 30;
  spec.m_hi = 6;
  spec.L_hi = 8;
  return run_trials("budget", trials, seed, spec, [](const Instance& inst, Checker& c) {
    Outcome co = run_care_co(inst);
    Money total;
    for (const auto& [w, p] : co.payments) total += p.amount;
    if (total > inst.total_budget())
      return c.fail(inst, "care-co total payment " + total.str() + " exceeds pooled budget " +
                              inst.total_budget().str());
    for (const Outcome& o : run_care_no_expectation(inst).per_bucket)
      for (const auto& [r, spend] : o.diagnostics.requester_spend)
        if (spend > inst.requester(r).budget)
          return c.fail(inst, "care-no bucket: requester " + std::to_string(r) + " spends " +
                                  spend.str() + " over budget " +
                                  inst.requester(r).budget.str());
    return true;
  });
}

PropertyResult check_truthfulness(long trials, uint64_t seed) {
  SmallGenSpec spec;
  spec.n_hi = 6;
  spec.m_hi = 3;
  return run_trials("truthful", trials, seed, spec, [](const Instance& inst, Checker& c) {
    for (const Worker& w : inst.workers()) {
      Rat gain = oracle::truthfulness_probe(inst, w.id, oracle::care_co_utility);
      if (gain > 0)
        return c.fail(inst, "care-co: worker " + std::to_string(w.id) +
                                " gains " + rational_str(gain) + " by deviating");
      gain = oracle::truthfulness_probe(inst, w.id, oracle::care_no_bucket_utility);
      if (gain > 0)
        return c.fail(inst, "pea bucket: worker " + std::to_string(w.id) +
                                " gains " + rational_str(gain) + " by deviating");
    }
    return true;
  });
}

PropertyResult check_approximation(long trials, uint64_t seed) {
  SmallGenSpec spec;
  spec.n_hi = 10;
  spec.m_hi = 3;
  spec.tau_lo = 1;  // theorem corpus: every group assignable somewhere
  return run_trials("approx", trials, seed, spec, [](const Instance& inst, Checker& c) {
    const oracle::EnumLimits limits{10, 3};
    const Rat opt_co = oracle::opt_cooperative(inst, limits).value;
    const Rat alg_co = run_care_co(inst).total_reputation;
    const Rat bound_co = Rat(2) + inst.v_max() / inst.v_min();
    if (opt_co > bound_co * alg_co)
      return c.fail(inst, "care-co ratio above 2 + vmax/vmin: OPT=" + rational_str(opt_co) +
                              " ALG=" + rational_str(alg_co));

    const Rat opt_no = oracle::opt_noncooperative(inst, limits).value;
    OutcomeDistribution dist = run_care_no_expectation(inst);
    const Rat alpha = compatibility_alpha(inst);
    const Rat bound_no =
        (2 * alpha + 1) * inst.epsilon() * Rat(dist.partition.gamma);
    if (opt_no > bound_no * dist.expected_reputation)
      return c.fail(inst, "care-no expected ratio above (2a+1)*eps*gamma: OPT=" +
                              rational_str(opt_no) +
                              " E[ALG]=" + rational_str(dist.expected_reputation) +
                              " bound=" + rational_str(bound_no));
    return true;
  });
}

PropertyResult check_lemmas(long trials, uint64_t seed) {
  SmallGenSpec spec;
  spec.n_hi = 7;
  spec.m_hi = 3;
  return run_trials("lemmas", trials, seed, spec, [&](const Instance& inst, Checker& c) {
    std::vector<int> all_ids;
    for (const Worker& w : inst.workers()) all_ids.push_back(w.id);

    PeaTrace trace;
    Outcome pea = run_pea(inst, all_ids, &trace);

    // Winner persistence: lower bid, same critical price => still selected.
    if (trace.critical) {
      for (const auto& [winner, r] : pea.assignment.entries) {
        const Money& bid = inst.worker(winner).bid;
        std::vector<Money> lower = {Money(Rat(bid.value() / 2)), Money(0)};
        for (const Money& b : lower) {
          if (b >= bid) continue;
          Instance deviated = oracle::with_bid(inst, winner, b);
          auto r_new = critical_price(deviated, all_ids);
          if (!r_new || *r_new != *trace.critical) continue;  // lemma premise
          Assignment winners = select_winners(deviated, all_ids, *r_new);
          if (!winners.requester_of(winner))
            return c.fail(inst, "winner " + std::to_string(winner) +
                                    " lost after lowering its bid at fixed r*");
        }
      }
    }

    // Qualifying prices at or above r*: M_f strictly decreasing in r.
    if (trace.critical) {
      std::optional<long> below;  // value at the previous (larger) price
      for (const PeaPricePoint& point : trace.points) {  // descending r
        if (point.r < *trace.critical) break;
        if (!point.max_assignable || Int(*point.max_assignable) != point.employability)
          continue;
        if (below && *point.max_assignable <= *below)
          return c.fail(inst, "M_f not strictly decreasing over qualifying prices");
        below = *point.max_assignable;
      }
    }

    // Removing one worker never drops M_f by more than 1.
    for (const PeaPricePoint& point : trace.points) {
      const long base = point.max_assignable ? *point.max_assignable
                                             : osp(inst, all_ids, point.r);
      for (int victim : all_ids) {
        if (inst.worker(victim).bid > point.r) continue;
        std::vector<int> rest;
        for (int id : all_ids)
          if (id != victim) rest.push_back(id);
        if (rest.empty()) continue;
        if (osp(inst, rest, point.r) < base - 1)
          return c.fail(inst, "removing worker " + std::to_string(victim) +
                                  " dropped M_f by more than 1");
      }
    }

    // Cooperative padding bound M(S_{k+1}) - M(S_k) <= v_{k+1}.
    const std::vector<int> order = cost_effectiveness_order(inst);
    const int k = find_key_worker(inst, order);
    if (k >= 1 && k < inst.n()) {
      const Rat gap = orp(inst, order, k + 1).value - orp(inst, order, k).value;
      if (gap > inst.worker(order[static_cast<size_t>(k)]).reputation)
        return c.fail(inst, "padding bound violated at the key worker");
    }
    return true;
  });
}

PropertyResult check_flow_equivalence(long trials, uint64_t seed) {
  SmallGenSpec spec;
  spec.n_hi = 8;
  spec.m_hi = 3;
  return run_trials("flow", trials, seed, spec, [](const Instance& inst, Checker& c) {
    SplitMix64 rng(derive_seed(inst.seed(), "flow-caps"));
    std::vector<int> ids;
    for (const Worker& w : inst.workers()) ids.push_back(w.id);
    std::vector<long> caps;
    for (int j = 0; j < inst.m(); ++j) caps.push_back(rng.uniform_int(0, inst.n()));
    const oracle::EnumLimits limits{8, 3};

    const auto by_flow = flow::max_cardinality(inst, ids, caps);
    const auto by_enum =
        oracle::ip_enumerate(inst, ids, oracle::IpObjective::MaxCardinality, 0, caps, limits);
    if (by_flow.flow_value != by_enum.cardinality)
      return c.fail(inst, "max cardinality mismatch: flow " +
                              std::to_string(by_flow.flow_value) + " vs enumeration " +
                              std::to_string(by_enum.cardinality));

    const std::vector<long> open(static_cast<size_t>(inst.m()), inst.n());
    const auto rep_flow = flow::max_reputation(inst, ids);
    const auto rep_enum =
        oracle::ip_enumerate(inst, ids, oracle::IpObjective::MaxReputation, 0, open, limits);
    if (rep_flow.objective != rep_enum.reputation)
      return c.fail(inst, "max reputation mismatch: flow " + rational_str(rep_flow.objective) +
                              " vs enumeration " + rational_str(rep_enum.reputation));
    const auto rep_mincost = flow::max_reputation_mincost(inst, ids);
    if (rep_mincost.objective != rep_flow.objective)
      return c.fail(inst, "max-gain and min-cost reputation routes disagree");

    // Bid-ordered positions for the weighted selection.
    std::vector<int> positions = ids;
    std::sort(positions.begin(), positions.end(), [&](int a, int b) {
      if (inst.worker(a).bid != inst.worker(b).bid) return inst.worker(a).bid < inst.worker(b).bid;
      return a < b;
    });
    for (long K = 0; K <= by_flow.flow_value + 1; ++K) {
      const auto w_enum = oracle::ip_enumerate(
          inst, positions, oracle::IpObjective::MinWeightAtCardinality, K, caps, limits);
      try {
        const auto w_flow = flow::min_weight_at_cardinality(inst, positions, K, caps);
        if (!w_enum.feasible)
          return c.fail(inst, "flow found a K-selection the enumeration deems infeasible");
        if (w_flow.weight != w_enum.weight)
          return c.fail(inst, "min-weight mismatch at K=" + std::to_string(K));
      } catch (const flow::InfeasibleCardinality&) {
        if (w_enum.feasible)
          return c.fail(inst, "flow reported infeasible at feasible K=" + std::to_string(K));
      }
    }
    return true;
  });
}

PropertyResult run_property(const std::string& name, long trials, uint64_t seed) {
  if (name == "ir") return check_individual_rationality(trials, seed);
  if (name == "budget") return check_budget_feasibility(trials, seed);
  if (name == "truthful") return check_truthfulness(trials, seed);
  if (name == "approx") return check_approximation(trials, seed);
  if (name == "lemmas") return check_lemmas(trials, seed);
  if (name == "flow") return check_flow_equivalence(trials, seed);
  PropertyResult result;
  result.property = name;
  result.ok = false;
  result.failure = "unknown property (expected ir|budget|truthful|approx|lemmas|flow)";
  return result;
}

}  // namespace care::verify

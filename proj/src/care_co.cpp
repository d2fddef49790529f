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

#include "care/care_co.hpp"

#include <algorithm>
#include <cassert>

#include "care/flow.hpp"

namespace care {

std::vector<int> cost_effectiveness_order(const Instance& inst) {
  std::vector<int> order;
  order.reserve(static_cast<size_t>(inst.n()));
  for (const Worker& w : inst.workers()) order.push_back(w.id);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    const Worker& wa = inst.worker(a);
    const Worker& wb = inst.worker(b);
    const Rat ra = wa.bid.value() / wa.reputation;
    const Rat rb = wb.bid.value() / wb.reputation;
    if (ra != rb) return ra < rb;
    return a < b;
  });
  return order;
}

OrpResult orp(const Instance& inst, const std::vector<int>& order, int prefix) {
  OrpResult result;
  if (prefix <= 0) return result;
  std::vector<int> ids(order.begin(), order.begin() + prefix);
  flow::FlowResult flow = flow::max_reputation(inst, ids);
  result.value = flow.objective;
  result.assignment = std::move(flow.assignment);
  return result;
}

int find_key_worker(const Instance& inst, const std::vector<int>& order) {
  const Rat budget = inst.total_budget().value();
  int k = 0;
  for (int i = 1; i <= inst.n(); ++i) {
    const Worker& w = inst.worker(order[static_cast<size_t>(i - 1)]);
    const Rat ratio = w.bid.value() / w.reputation;
    if (ratio * orp(inst, order, i).value > budget) break;
    k = i;
  }
  return k;
}

Outcome run_care_co(const Instance& inst) {
  Outcome outcome;
  const std::vector<int> order = cost_effectiveness_order(inst);
  const int k = find_key_worker(inst, order);
  outcome.diagnostics.key_worker = k;
  if (k == 0) {  // unreachable on validated input: the first test is b_1 <= B
    outcome.diagnostics.notes.push_back("no affordable prefix");
    return outcome;
  }

  OrpResult selected = orp(inst, order, k);
  if (selected.value == 0) {
    outcome.diagnostics.notes.push_back("key prefix has no feasible assignment");
    return outcome;
  }

  Rat unit = inst.total_budget().value() / selected.value;
  if (k < inst.n()) {
    const Worker& next = inst.worker(order[static_cast<size_t>(k)]);
    unit = std::min(unit, next.bid.value() / next.reputation);
  }
  outcome.diagnostics.unit_price = Money(unit);

  outcome.assignment = std::move(selected.assignment);
  outcome.total_reputation = reputation_of(inst, outcome.assignment);
  for (const auto& [w, r] : outcome.assignment.entries) {
    Money payment(Rat(inst.worker(w).reputation * unit));
    outcome.diagnostics.requester_spend[r] += payment;
    outcome.payments[w] = PaymentEntry{r, std::move(payment)};
  }

  // M(S_{k+1}) - M(S_k) <= v_{k+1}: the padding step of the approximation
  // bound, cheap enough to assert on every run.
  if (k < inst.n()) {
    const Rat next_value = orp(inst, order, k + 1).value;
    assert(next_value - selected.value <=
           inst.worker(order[static_cast<size_t>(k)]).reputation);
    (void)next_value;
  }

  check_outcome_consistency(inst, outcome);
  return outcome;
}

}  // namespace care

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

#include "care/pea.hpp"

#include <algorithm>
#include <cassert>

#include "care/flow.hpp"

namespace care {

namespace {

constexpr int kNoPosition = -1;

// Bucket workers in non-decreasing bid order, ties by id; position p is
// 1-based. S(r) is always a prefix of this order.
struct BidOrder {
  std::vector<int> ids;
  std::vector<Money> bids;

  int size() const { return static_cast<int>(ids.size()); }
  int position_of(int worker_id) const {
    for (int p = 1; p <= size(); ++p)
      if (ids[static_cast<size_t>(p - 1)] == worker_id) return p;
    return kNoPosition;
  }
};

BidOrder make_bid_order(const Instance& inst, const std::vector<int>& worker_ids) {
  BidOrder order;
  order.ids = worker_ids;
  std::sort(order.ids.begin(), order.ids.end(), [&](int a, int b) {
    const Money& ba = inst.worker(a).bid;
    const Money& bb = inst.worker(b).bid;
    if (ba != bb) return ba < bb;
    return a < b;
  });
  order.bids.reserve(order.ids.size());
  for (int id : order.ids) order.bids.push_back(inst.worker(id).bid);
  return order;
}

long prefix_with_bid_at_most(const BidOrder& order, const Money& r) {
  long count = 0;
  while (count < order.size() && order.bids[static_cast<size_t>(count)] <= r) ++count;
  return count;
}

// Shared state of one PEA run: the virtual price table with lazily solved
// flows, plus the per-winner one-removed values the payment loop re-reads.
class PeaContext {
 public:
  PeaContext(const Instance& inst, const std::vector<int>& worker_ids)
      : inst_(inst), order_(make_bid_order(inst, worker_ids)), budgets_(inst.budgets()) {
    for (const Money& r : virtual_prices(budgets_, order_.size())) {
      Record rec;
      rec.r = r;
      rec.employ = employability(r, budgets_);
      rec.avail = prefix_with_bid_at_most(order_, r);
      records_.push_back(std::move(rec));
    }
  }

  const BidOrder& order() const { return order_; }
  const Instance& instance() const { return inst_; }
  size_t record_count() const { return records_.size(); }
  const Money& price(size_t rec) const { return records_[rec].r; }
  const Int& employ(size_t rec) const { return records_[rec].employ; }
  long avail(size_t rec) const { return records_[rec].avail; }

  std::vector<long> caps_at(size_t rec) const {
    std::vector<long> caps;
    caps.reserve(budgets_.size());
    for (const Money& b : budgets_) {
      Int cap = floor_div(b.value(), records_[rec].r.value());
      caps.push_back(static_cast<long>(std::min<Int>(cap, order_.size())));
    }
    return caps;
  }

  long mf(size_t rec) {
    Record& record = records_[rec];
    if (!record.mf) {
      std::vector<int> ids(order_.ids.begin(), order_.ids.begin() + record.avail);
      flow::FlowNetwork net = flow::build_assignment_network(inst_, ids, caps_at(rec));
      for (int i = 0; i < net.size(); ++i) net.try_add(i);
      record.mf = net.flow_value();
      record.solved = std::move(net);
    }
    return *record.mf;
  }

  // M_f over S(r) with the worker at `position` deleted.
  long mf_without(size_t rec, int position) {
    if (position > records_[rec].avail) return mf(rec);
    auto& cache = records_[rec].without;
    auto it = cache.find(position);
    if (it != cache.end()) return it->second;
    long base = mf(rec);
    flow::FlowNetwork probe = *records_[rec].solved;
    const bool was_assigned = probe.is_assigned(position - 1);
    probe.remove(position - 1);
    long value = base;
    if (was_assigned && !probe.reaugment()) value = base - 1;
    cache.emplace(position, value);
    return value;
  }

  // Smallest record (by price) with E(r) = M_f(r); prices are stored
  // descending so this scans for the last qualifying record. Pruning: M_f
  // never exceeds |S(r)|, so records with E(r) > |S(r)| cannot qualify.
  std::optional<size_t> critical_record(bool evaluate_all = false) {
    std::optional<size_t> best;
    for (size_t rec = 0; rec < records_.size(); ++rec) {
      const bool reachable = records_[rec].employ <= records_[rec].avail;
      if (evaluate_all || reachable) {
        long value = mf(rec);
        if (reachable && Int(value) == records_[rec].employ) best = rec;
      }
    }
    return best;
  }

  // Critical record when `position` deviates to bid `new_bid` (>= its own).
  // Only prices in [old_bid, new_bid) see a different worker set.
  std::optional<size_t> counterfactual_critical(int position, const Money& new_bid) {
    const Money& own = order_.bids[static_cast<size_t>(position - 1)];
    std::optional<size_t> best;
    for (size_t rec = 0; rec < records_.size(); ++rec) {
      const bool in_window = records_[rec].r >= own && records_[rec].r < new_bid;
      const long avail = records_[rec].avail - (in_window ? 1 : 0);
      if (records_[rec].employ > avail) continue;
      const long value = in_window ? mf_without(rec, position) : mf(rec);
      if (Int(value) == records_[rec].employ) best = rec;
    }
    return best;
  }

  void fill_trace_points(PeaTrace& trace) {
    for (size_t rec = 0; rec < records_.size(); ++rec) {
      PeaPricePoint point;
      point.r = records_[rec].r;
      point.employability = records_[rec].employ;
      point.available = records_[rec].avail;
      point.max_assignable = records_[rec].mf;
      trace.points.push_back(std::move(point));
    }
  }

 private:
  struct Record {
    Money r;
    Int employ;
    long avail = 0;
    std::optional<long> mf;
    std::optional<flow::FlowNetwork> solved;
    std::map<int, long> without;
  };

  const Instance& inst_;
  BidOrder order_;
  std::vector<Money> budgets_;
  std::vector<Record> records_;
};

// Evolving greedy state for one winner's counterfactual tests at a fixed
// critical price: minus-i workers are admitted in order (while the selection
// is not yet full) and the winner is probed against a copy.
struct GreedyPrefix {
  flow::FlowNetwork net;
  long target = 0;     // K = E(r*') of this counterfactual price
  int next_position = 1;  // next original position to feed (1-based)
};

class PaymentEvaluator {
 public:
  PaymentEvaluator(PeaContext& ctx, int position) : ctx_(ctx), position_(position) {}

  // True if the winner, deviating to the bid at original position l, is
  // selected by the counterfactual allocation.
  bool still_selected(int l, std::optional<size_t>& critical_out) {
    const Money& beta = ctx_.order().bids[static_cast<size_t>(l - 1)];
    std::optional<size_t> rec = ctx_.counterfactual_critical(position_, beta);
    critical_out = rec;
    if (!rec) return false;
    if (beta > ctx_.price(*rec)) return false;
    GreedyPrefix& state = state_for(*rec);
    advance(state, l - 1);
    if (state.net.flow_value() >= state.target) return false;
    flow::FlowNetwork probe = state.net;
    return probe.try_add(position_ - 1);
  }

 private:
  GreedyPrefix& state_for(size_t rec) {
    auto it = states_.find(rec);
    if (it != states_.end()) return it->second;
    GreedyPrefix state{
        flow::build_assignment_network(ctx_.instance(), ctx_.order().ids, ctx_.caps_at(rec)),
        ctx_.mf(rec), 1};
    return states_.emplace(rec, std::move(state)).first->second;
  }

  // Feed minus-i workers until `count` of them have been processed.
  void advance(GreedyPrefix& state, int count) {
    int processed = state.next_position - 1 - (state.next_position > position_ ? 1 : 0);
    while (processed < count) {
      const int p = state.next_position++;
      if (p == position_) continue;
      if (state.net.flow_value() < state.target) state.net.try_add(p - 1);
      ++processed;
    }
  }

  PeaContext& ctx_;
  int position_;
  std::map<size_t, GreedyPrefix> states_;
};

struct PaymentResult {
  Money amount;
  std::vector<Money> candidates;
  bool unbounded = false;  // the +inf sentinel entered P_i
};

PaymentResult payment_for(PeaContext& ctx, const Money& r_star, int position) {
  PaymentResult result;
  PaymentEvaluator eval(ctx, position);
  const int n = ctx.order().size();
  for (int l = position; l <= n; ++l) {
    std::optional<size_t> rec;
    if (!eval.still_selected(l, rec)) continue;
    if (l == n)
      result.unbounded = true;
    else
      result.candidates.push_back(ctx.order().bids[static_cast<size_t>(l)]);
  }
  if (result.unbounded || !result.candidates.empty()) {
    Money best = result.unbounded
                     ? r_star
                     : std::min(r_star, *std::max_element(result.candidates.begin(),
                                                          result.candidates.end()));
    result.amount = best;
  } else {
    // The own-position run always re-selects a truthful winner.
    assert(false && "winner lost its own counterfactual position");
  }
  return result;
}

Outcome finish_empty(const Instance& inst, const char* note) {
  Outcome outcome;
  outcome.diagnostics.notes.push_back(note);
  check_outcome_consistency(inst, outcome);
  return outcome;
}

}  // namespace

std::vector<Money> virtual_prices(const std::vector<Money>& budgets, int n) {
  std::vector<Money> prices;
  prices.reserve(budgets.size() * static_cast<size_t>(n));
  for (const Money& b : budgets)
    for (int t = 1; t <= n; ++t) prices.push_back(Money(Rat(b.value() / t)));
  std::sort(prices.begin(), prices.end(), std::greater<>());
  prices.erase(std::unique(prices.begin(), prices.end()), prices.end());
  return prices;
}

Int employability(const Money& r, const std::vector<Money>& budgets) {
  if (r.is_zero()) throw std::invalid_argument("employability needs r > 0");
  Int total = 0;
  for (const Money& b : budgets) total += floor_div(b, r);
  return total;
}

long osp(const Instance& inst, const std::vector<int>& worker_ids, const Money& r) {
  BidOrder order = make_bid_order(inst, worker_ids);
  const long avail = prefix_with_bid_at_most(order, r);
  std::vector<int> ids(order.ids.begin(), order.ids.begin() + avail);
  std::vector<long> caps;
  for (const Money& b : inst.budgets()) {
    Int cap = floor_div(b, r);
    caps.push_back(static_cast<long>(std::min<Int>(cap, order.size())));
  }
  return flow::max_cardinality(inst, ids, caps).flow_value;
}

std::optional<Money> critical_price(const Instance& inst,
                                    const std::vector<int>& worker_ids,
                                    PeaTrace* trace) {
  if (worker_ids.empty()) return std::nullopt;
  PeaContext ctx(inst, worker_ids);
  std::optional<size_t> rec = ctx.critical_record(trace != nullptr);
  if (trace) {
    ctx.fill_trace_points(*trace);
    if (rec) {
      trace->critical = ctx.price(*rec);
      if (*rec > 0) trace->left_adjacent = ctx.price(*rec - 1);
      if (*rec + 1 < ctx.record_count()) trace->right_adjacent = ctx.price(*rec + 1);
      trace->last_affordable = static_cast<int>(ctx.avail(*rec));
    }
  }
  if (!rec) return std::nullopt;
  return ctx.price(*rec);
}

Assignment select_winners(const Instance& inst, const std::vector<int>& worker_ids,
                          const Money& r_star) {
  BidOrder order = make_bid_order(inst, worker_ids);
  const long avail = prefix_with_bid_at_most(order, r_star);
  std::vector<int> ids(order.ids.begin(), order.ids.begin() + avail);
  std::vector<long> caps;
  for (const Money& b : inst.budgets()) {
    Int cap = floor_div(b, r_star);
    caps.push_back(static_cast<long>(std::min<Int>(cap, order.size())));
  }
  const long K = flow::max_cardinality(inst, ids, caps).flow_value;
  return flow::min_weight_at_cardinality(inst, ids, K, caps).assignment;
}

Money compute_payment(const Instance& inst, const std::vector<int>& worker_ids,
                      int winner_id) {
  PeaContext ctx(inst, worker_ids);
  std::optional<size_t> rec = ctx.critical_record();
  if (!rec) throw NotAWinner(winner_id);
  const Money r_star = ctx.price(*rec);
  Assignment winners = select_winners(inst, worker_ids, r_star);
  if (!winners.requester_of(winner_id)) throw NotAWinner(winner_id);
  return payment_for(ctx, r_star, ctx.order().position_of(winner_id)).amount;
}

Outcome run_pea(const Instance& inst, const std::vector<int>& worker_ids,
                PeaTrace* trace) {
  if (worker_ids.empty()) return finish_empty(inst, "empty bucket");
  PeaContext ctx(inst, worker_ids);
  std::optional<size_t> rec = ctx.critical_record(trace != nullptr);
  if (!rec) {
    if (trace) ctx.fill_trace_points(*trace);
    return finish_empty(inst, "no_critical_price");
  }
  const Money r_star = ctx.price(*rec);
  const long K = ctx.mf(*rec);

  Outcome outcome;
  outcome.diagnostics.critical_price = r_star;
  outcome.assignment = select_winners(inst, worker_ids, r_star);
  assert(static_cast<long>(outcome.assignment.size()) == K);
  (void)K;
  outcome.total_reputation = reputation_of(inst, outcome.assignment);

  for (const auto& [w, r] : outcome.assignment.entries) {
    PaymentResult payment = payment_for(ctx, r_star, ctx.order().position_of(w));
    assert(payment.amount >= inst.worker(w).bid);
    outcome.diagnostics.requester_spend[r] += payment.amount;
    if (trace) {
      trace->payment_candidates[w] = payment.candidates;
      if (payment.unbounded) trace->payment_unbounded.insert(w);
    }
    outcome.payments[w] = PaymentEntry{r, payment.amount};
  }
  for (const auto& [r, spend] : outcome.diagnostics.requester_spend) {
    assert(spend <= inst.requester(r).budget);
    (void)spend;
  }

  if (trace) {
    ctx.fill_trace_points(*trace);
    trace->critical = r_star;
    if (*rec > 0) trace->left_adjacent = ctx.price(*rec - 1);
    if (*rec + 1 < ctx.record_count()) trace->right_adjacent = ctx.price(*rec + 1);
    trace->last_affordable = static_cast<int>(ctx.avail(*rec));
  }
  check_outcome_consistency(inst, outcome);
  return outcome;
}

}  // namespace care

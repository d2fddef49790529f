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

#ifndef CARE_HARNESS_HPP_
#define CARE_HARNESS_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "care/model.hpp"

namespace care::harness {

struct BidTier {
  Rat accuracy_lo;  // inclusive
  Rat accuracy_hi;  // exclusive except for the top tier
  Money bid_lo;
  Money bid_hi;
};

// Accuracy [0.4,0.6) bids [2,4]; [0.6,0.8) bids [3,5]; [0.8,1.0] bids [4,6].
std::vector<BidTier> default_tiers();

struct GeneratorParams {
  int workers = 120;
  int requesters = 5;
  int groups = 10;
  Money budget_lo = Money(40);
  Money budget_hi = Money(80);
  std::vector<BidTier> tiers = default_tiers();
  Rat epsilon = Rat(10);
};

struct GeneratedInstance {
  Instance instance;
  // Per-worker tier bid range; the random-pricing baseline draws from it.
  std::vector<std::pair<Money, Money>> price_ranges;
};

// Deterministic synthetic scenario: bids and budgets are 2-decimal exact
// rationals, costs equal bids, reputations are the tier accuracy midpoint
// plus a small seeded jitter, tau is uniform in [1, |G_l|]. Every draw comes
// from its own counter-derived stream, so enlarging one dimension leaves the
// other draws untouched.
GeneratedInstance generate_instance(const GeneratorParams& params, uint64_t seed);

// Random-pricing baseline: one uniform price per worker from its cost range;
// priced-in workers go to a random requester with enough remaining budget and
// no compatibility violation, paid the drawn price.
Outcome run_ranpri(const Instance& inst, uint64_t seed,
                   const std::vector<std::pair<Money, Money>>* ranges = nullptr);

// Reputation-proportional greedy on the pooled budget without the
// compatibility-aware allocation; winners land on random compatible
// requesters, unplaceable winners are dropped and their payments voided.
Outcome run_rrafl_ext(const Instance& inst, uint64_t seed);

enum class SweepAxis { Requesters, Groups };
enum class MechanismId { CareCo, CareNo, RanPri, RraflExt };

const char* mechanism_name(MechanismId id);

struct SweepSpec {
  SweepAxis axis = SweepAxis::Requesters;
  std::vector<int> values;  // defaults per axis when empty
  int trials = 10;
  uint64_t seed = 1;
};

struct ReportRow {
  std::string axis;
  int value = 0;
  uint64_t seed = 0;
  std::string mechanism;
  Rat reputation;  // recomputed from winners, never trusted from the outcome
  Money total_paid;
  Money max_requester_spend;
  long runtime_ms = 0;
};

struct ExperimentReport {
  std::vector<ReportRow> rows;
  std::vector<std::string> header_notes;
};

ExperimentReport run_experiment(const SweepSpec& sweep, const GeneratorParams& params,
                                const std::vector<MechanismId>& mechanisms,
                                int jobs = 1);

std::string report_csv(const ExperimentReport& report);

}  // namespace care::harness

#endif  // CARE_HARNESS_HPP_

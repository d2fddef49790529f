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

#include "care/care_no.hpp"

#include "care/rng.hpp"

namespace care {

namespace {

// Smallest h >= 1 with rho <= eps^h; rho = 1 maps to bucket 1.
int bucket_of(const Rat& rho, const Rat& eps) {
  int h = 1;
  Rat power = eps;
  while (rho > power) {
    power *= eps;
    ++h;
  }
  return h;
}

}  // namespace

BucketPartition partition_buckets(const Instance& inst) {
  BucketPartition partition;
  const Rat rho_max = inst.v_max() / inst.v_min();
  partition.gamma = bucket_of(rho_max, inst.epsilon());
  partition.buckets.assign(static_cast<size_t>(partition.gamma), {});
  for (const Worker& w : inst.workers()) {
    const Rat rho = w.reputation / inst.v_min();
    partition.buckets[static_cast<size_t>(bucket_of(rho, inst.epsilon()) - 1)].push_back(w.id);
  }
  return partition;
}

Outcome run_care_no_sampled(const Instance& inst, uint64_t seed, PeaTrace* trace) {
  const BucketPartition partition = partition_buckets(inst);
  SplitMix64 rng(derive_seed(seed, "care-no-bucket"));
  const int chosen = static_cast<int>(rng.below(static_cast<uint64_t>(partition.gamma))) + 1;
  Outcome outcome = run_pea(inst, partition.buckets[static_cast<size_t>(chosen - 1)], trace);
  outcome.diagnostics.bucket_chosen = chosen;
  outcome.diagnostics.gamma = partition.gamma;
  return outcome;
}

OutcomeDistribution run_care_no_expectation(const Instance& inst) {
  OutcomeDistribution dist;
  dist.partition = partition_buckets(inst);
  dist.per_bucket.reserve(static_cast<size_t>(dist.partition.gamma));
  for (int h = 1; h <= dist.partition.gamma; ++h) {
    Outcome outcome = run_pea(inst, dist.partition.buckets[static_cast<size_t>(h - 1)]);
    outcome.diagnostics.bucket_chosen = h;
    outcome.diagnostics.gamma = dist.partition.gamma;
    dist.expected_reputation += outcome.total_reputation;
    dist.per_bucket.push_back(std::move(outcome));
  }
  dist.expected_reputation /= dist.partition.gamma;
  return dist;
}

}  // namespace care

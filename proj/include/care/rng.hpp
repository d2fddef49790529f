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

#ifndef CARE_RNG_HPP_
#define CARE_RNG_HPP_

#include <cstdint>
#include <string_view>

namespace care {

// Deterministic, platform-independent generator. std::uniform_int_distribution
// is implementation-defined, so all draws are hand-rolled on top of this.
class SplitMix64 {
 public:
  explicit SplitMix64(uint64_t seed) : state_(seed) {}

  uint64_t next() {
    uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Unbiased draw in [0, n) by rejection.
  uint64_t below(uint64_t n) {
    const uint64_t limit = n * (~uint64_t{0} / n);
    uint64_t v;
    do {
      v = next();
    } while (v >= limit);
    return v % n;
  }

  // Inclusive range.
  int64_t uniform_int(int64_t lo, int64_t hi) {
    return lo + static_cast<int64_t>(below(static_cast<uint64_t>(hi - lo) + 1));
  }

 private:
  uint64_t state_;
};

// Counter-based seed splitter: one root seed fans out into independent
// streams keyed by a tag and counters, so adding a consumer does not perturb
// the draws of the others.
inline uint64_t derive_seed(uint64_t root, std::string_view tag, uint64_t a = 0,
                            uint64_t b = 0) {
  uint64_t h = 0xcbf29ce484222325ULL ^ root;
  for (char c : tag) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  SplitMix64 mix(h);
  mix.next();
  uint64_t s = mix.next() ^ (a * 0x9e3779b97f4a7c15ULL);
  SplitMix64 mix2(s);
  return mix2.next() ^ (b * 0xd1b54a32d192ed03ULL);
}

}  // namespace care

#endif  // CARE_RNG_HPP_

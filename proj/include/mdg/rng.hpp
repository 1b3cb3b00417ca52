// Copyright 2026 The iRouting Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef MDG_RNG_HPP_
#define MDG_RNG_HPP_

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <random>
#include <span>

namespace mdg {

// Seedable generator with deterministic sub-stream derivation. Every
// consumer that needs independence (a topology, an experiment, a session)
// derives its own stream from the root seed plus a key path, so results do
// not depend on evaluation order.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Stream keyed by (seed, keys...). Distinct key paths give unrelated
  // streams.
  static Rng derive(std::uint64_t seed,
                    std::initializer_list<std::uint64_t> keys) {
    return Rng(derive_seed(seed, keys));
  }

  static std::uint64_t derive_seed(std::uint64_t seed,
                                   std::initializer_list<std::uint64_t> keys) {
    std::uint64_t state = splitmix(seed ^ 0x6a09e667f3bcc908ULL);
    for (std::uint64_t k : keys) state = splitmix(state ^ splitmix(k + 1));
    return state;
  }

  // Uniform double in [0, 1) with 53 random bits.
  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Uniform integer in [0, n).
  std::size_t index(std::size_t n) {
    std::uniform_int_distribution<std::size_t> dist(0, n - 1);
    return dist(engine_);
  }

  // Index drawn from a discrete distribution given by `probs`. Entries are
  // assumed non-negative and summing to one; the last positive index
  // absorbs rounding slack.
  std::size_t sample(std::span<const double> probs) {
    const double u = uniform();
    double acc = 0.0;
    std::size_t last_positive = 0;
    for (std::size_t i = 0; i < probs.size(); ++i) {
      if (probs[i] <= 0.0) continue;
      last_positive = i;
      acc += probs[i];
      if (u < acc) return i;
    }
    return last_positive;
  }

  std::mt19937_64& engine() { return engine_; }

 private:
  static std::uint64_t splitmix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
  }

  std::mt19937_64 engine_;
};

}  // namespace mdg

#endif  // MDG_RNG_HPP_

// Copyright 2026 The robust_fluid Authors
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

#ifndef ROBUST_FLUID_RNG_H_
#define ROBUST_FLUID_RNG_H_

#include <cstdint>
#include <initializer_list>
#include <random>

namespace robust_fluid {

// SplitMix64 finalizer (Steele, Lea, Flood 2014). Used to derive per-task
// seeds from a base seed and a tuple of loop counters.
std::uint64_t SplitMix64(std::uint64_t x);

// Seed for the task identified by `counters` under `base`. Depends only on
// the values, never on the order tasks are executed in.
std::uint64_t DeriveSeed(std::uint64_t base,
                         std::initializer_list<std::uint64_t> counters);

// Reproducible random source. The engine is std::mt19937_64, whose output
// sequence is fixed by the C++ standard; real variates are produced from the
// top 53 bits here rather than through std::uniform_real_distribution, whose
// algorithm is implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform on [0, 1).
  double Uniform01() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }
  // Uniform on [lo, hi).
  double Uniform(double lo, double hi) { return lo + (hi - lo) * Uniform01(); }
  // Uniform integer on [0, n).
  std::uint64_t Below(std::uint64_t n);

 private:
  std::mt19937_64 engine_;
};

}  // namespace robust_fluid

#endif  // ROBUST_FLUID_RNG_H_

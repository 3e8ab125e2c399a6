// Copyright 2026 The apiguard Authors.
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

#ifndef APIGUARD_RNG_H_
#define APIGUARD_RNG_H_

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

namespace apiguard {

// Seeded random source whose output is identical across standard libraries.
// std::mt19937_64 is fully specified; the distributions in <random> are not,
// so bounded draws use rejection sampling on the raw engine output.
class Rng {
 public:
  explicit Rng(uint64_t seed) : engine_(seed) {}

  // Uniform in [0, bound). bound must be positive.
  uint64_t Below(uint64_t bound) {
    const uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return x % bound;
  }

  template <typename T>
  void Shuffle(std::vector<T> *items) {
    for (size_t i = items->size(); i > 1; --i) {
      size_t j = static_cast<size_t>(Below(i));
      std::swap((*items)[i - 1], (*items)[j]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace apiguard

#endif  // APIGUARD_RNG_H_

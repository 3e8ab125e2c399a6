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

#ifndef APIGUARD_SP_METRICS_H_
#define APIGUARD_SP_METRICS_H_

#include <span>
#include <string>

namespace apiguard {

// Semantic parsing metrics over (gold, predicted) call pairs.
//
// Intents are the flattened function names of a call; slots are (argument,
// value) pairs where a nested value contributes the child's function name.
// Both are compared as multisets and micro-averaged over the batch.

struct EvalPair {
  std::string gold;       // must parse
  std::string predicted;  // raw model output
  std::string utterance;
};

struct MatchCounts {
  long tp = 0;
  long fp = 0;
  long fn = 0;

  // An empty denominator yields 1 when gold and prediction are both empty,
  // otherwise 0.
  double precision() const;
  double recall() const;
  double f1() const;

  MatchCounts &operator+=(const MatchCounts &other);
  bool operator==(const MatchCounts &other) const = default;
};

// All of these throw std::invalid_argument if a gold call does not parse.
double ExactMatch(std::span<const EvalPair> pairs);
MatchCounts IntentCounts(std::span<const EvalPair> pairs);
MatchCounts SlotCounts(std::span<const EvalPair> pairs);
double IntentF1(std::span<const EvalPair> pairs);
double SlotF1(std::span<const EvalPair> pairs);

}  // namespace apiguard

#endif  // APIGUARD_SP_METRICS_H_

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

#include "apiguard/sp_metrics.h"

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "apiguard/api_expr.h"

namespace apiguard {

namespace {

using Bag = std::map<std::string, long>;

ApiCall ParseGold(const std::string &gold) {
  ParseResult parsed = Parse(gold);
  if (!parsed.ok()) {
    throw std::invalid_argument("gold call does not parse (" +
                                parsed.error().ToString() + "): " + gold);
  }
  return std::move(parsed.call());
}

Bag IntentBag(const ApiCall &call) {
  Bag bag;
  for (const FlatCall &flat : Flatten(call)) ++bag[flat.function];
  return bag;
}

Bag SlotBag(const ApiCall &call) {
  Bag bag;
  std::vector<FlatCall> flat = Flatten(call);
  for (const FlatCall &fc : flat) {
    for (const FlatArg &arg : fc.args) {
      const std::string &value = arg.value.grounded()
                                     ? arg.value.text
                                     : flat[arg.value.child_index].function;
      // '\x1f' cannot occur in an identifier, so the key is unambiguous.
      ++bag[arg.name + '\x1f' + value];
    }
  }
  return bag;
}

long BagSize(const Bag &bag) {
  long n = 0;
  for (const auto &[key, count] : bag) n += count;
  return n;
}

MatchCounts Compare(const Bag &gold, const Bag &predicted) {
  long tp = 0;
  for (const auto &[key, count] : gold) {
    auto it = predicted.find(key);
    if (it != predicted.end()) tp += std::min(count, it->second);
  }
  return {tp, BagSize(predicted) - tp, BagSize(gold) - tp};
}

template <typename BagFn>
MatchCounts Accumulate(std::span<const EvalPair> pairs, BagFn bag_of) {
  MatchCounts total;
  for (const EvalPair &pair : pairs) {
    Bag gold = bag_of(ParseGold(pair.gold));
    ParseResult predicted = Parse(pair.predicted);
    total += Compare(gold, predicted.ok() ? bag_of(predicted.call()) : Bag());
  }
  return total;
}

}  // namespace

double MatchCounts::precision() const {
  if (tp + fp == 0) return tp + fn == 0 ? 1.0 : 0.0;
  return static_cast<double>(tp) / static_cast<double>(tp + fp);
}

double MatchCounts::recall() const {
  if (tp + fn == 0) return tp + fp == 0 ? 1.0 : 0.0;
  return static_cast<double>(tp) / static_cast<double>(tp + fn);
}

double MatchCounts::f1() const {
  double p = precision();
  double r = recall();
  return p + r == 0 ? 0.0 : 2 * p * r / (p + r);
}

MatchCounts &MatchCounts::operator+=(const MatchCounts &other) {
  tp += other.tp;
  fp += other.fp;
  fn += other.fn;
  return *this;
}

double ExactMatch(std::span<const EvalPair> pairs) {
  if (pairs.empty()) return 0.0;
  size_t matches = 0;
  for (const EvalPair &pair : pairs) {
    std::string gold = Serialize(ParseGold(pair.gold));
    ParseResult predicted = Parse(pair.predicted);
    if (predicted.ok() && Serialize(predicted.call()) == gold) ++matches;
  }
  return static_cast<double>(matches) / static_cast<double>(pairs.size());
}

MatchCounts IntentCounts(std::span<const EvalPair> pairs) {
  return Accumulate(pairs, IntentBag);
}

MatchCounts SlotCounts(std::span<const EvalPair> pairs) {
  return Accumulate(pairs, SlotBag);
}

double IntentF1(std::span<const EvalPair> pairs) {
  return IntentCounts(pairs).f1();
}

double SlotF1(std::span<const EvalPair> pairs) {
  return SlotCounts(pairs).f1();
}

}  // namespace apiguard

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


#include "apiguard/spelling.h"

#include "doctest.h"
#include "support/oracles.h"

namespace apiguard {
namespace {

Vocab Texts(std::vector<std::string> texts) {
  std::vector<VocabToken> tokens;
  for (size_t i = 0; i < texts.size(); ++i) {
    tokens.push_back({static_cast<int>(i), texts[i]});
  }
  return Vocab(std::move(tokens), static_cast<int>(texts.size()));
}

TEST_CASE("segmentations of small names") {
  Vocab v = Texts({"A", "B", "AB"});
  CHECK(Segmentations("AB", v) == std::vector<TokenSequence>{{0, 1}, {2}});
  CHECK(Segmentations("AB", Texts({"A"})).empty());
  Vocab aa = Texts({"A", "AA"});
  CHECK(Segmentations("AAA", aa) ==
        std::vector<TokenSequence>{{0, 0, 0}, {0, 1}, {1, 0}});
  CHECK(Segmentations("", v).empty());
}

TEST_CASE("duplicate texts give distinct sequences") {
  Vocab v = Texts({"A", "A"});
  CHECK(Segmentations("AA", v) ==
        std::vector<TokenSequence>{{0, 0}, {0, 1}, {1, 0}, {1, 1}});
}

TEST_CASE("segmentations concatenate to the name") {
  Vocab v = Texts({"GET", "_AL", "ARMS", "G", "ET", "_", "AL", "A", "RMS", "S"});
  TokenTrie trie(v);
  auto segs = Segmentations("GET_ALARMS", v, trie);
  CHECK_FALSE(segs.empty());
  for (const auto &s : segs) {
    std::string joined;
    for (int id : s) joined += v.Text(id);
    CHECK(joined == "GET_ALARMS");
  }
  CHECK(CountSegmentations("GET_ALARMS", trie) == segs.size());
  CHECK(Segmentations("GET_ALARMS", v, trie, 2).size() == 2);
}

TEST_CASE("dp matches exhaustive enumeration") {
  Rng rng(4242);
  const std::string alphabet = "AB_C";
  for (int trial = 0; trial < 300; ++trial) {
    int n = testing::Uniform(rng, 1, 12);
    std::vector<std::string> texts;
    for (int i = 0; i < n; ++i) {
      int len = testing::Uniform(rng, 1, 3);
      std::string t;
      for (int j = 0; j < len; ++j) t += alphabet[rng.Below(alphabet.size())];
      texts.push_back(t);
    }
    Vocab v = Texts(texts);
    TokenTrie trie(v);
    int len = testing::Uniform(rng, 1, 8);
    std::string name;
    for (int j = 0; j < len; ++j) name += alphabet[rng.Below(alphabet.size())];
    auto want = testing::ExhaustiveSegmentations(name, v);
    CHECK(Segmentations(name, v, trie) == want);
    CHECK(IsSpellable(name, trie) == !want.empty());
    CHECK(CountSegmentations(name, trie) == want.size());
  }
}

TEST_CASE("count saturates instead of overflowing") {
  Vocab v = Texts({"A", "AA"});
  TokenTrie trie(v);
  // Fibonacci growth: F(200) overflows 64 bits.
  CHECK(CountSegmentations(std::string(200, 'A'), trie) == UINT64_MAX);
  CHECK(IsSpellable(std::string(200, 'A'), trie));
}

TEST_CASE("spelling automaton") {
  std::vector<std::string> names = {"GET_ALARMS", "GET", "GET_TIME", "GET"};
  SpellingAutomaton a(names);
  CHECK(a.names() == std::vector<std::string>{"GET", "GET_ALARMS", "GET_TIME"});
  int s = a.Walk("GET");
  REQUIRE(s >= 0);
  CHECK(a.Accepted(s) == 0);
  CHECK(a.HasContinuation(s));
  int t = a.Walk("GET_TIME");
  REQUIRE(t >= 0);
  CHECK(a.Accepted(t) == 2);
  CHECK_FALSE(a.HasContinuation(t));
  CHECK(a.Walk("GET_T") >= 0);
  CHECK(a.Accepted(a.Walk("GET_T")) == -1);
  CHECK(a.Walk("GEX") == -1);
  CHECK(a.Step(SpellingAutomaton::kStart, 'X') == -1);
  CHECK(SpellingAutomaton().empty());
}

TEST_CASE("every name reachable and accepting states spell one name") {
  Rng rng(8);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<std::string> names;
    int n = testing::Uniform(rng, 1, 10);
    for (int i = 0; i < n; ++i) names.push_back(testing::RandomIdentifier(rng, 5));
    SpellingAutomaton a(names);
    for (size_t i = 0; i < a.names().size(); ++i) {
      int s = a.Walk(a.names()[i]);
      REQUIRE(s >= 0);
      CHECK(a.Accepted(s) == static_cast<int>(i));
    }
    // Accepting states are exactly the names.
    int accepting = 0;
    for (int s = 0; s < a.num_states(); ++s) accepting += a.Accepted(s) >= 0;
    CHECK(accepting == static_cast<int>(a.names().size()));
  }
}

}  // namespace
}  // namespace apiguard

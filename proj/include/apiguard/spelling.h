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

#ifndef APIGUARD_SPELLING_H_
#define APIGUARD_SPELLING_H_

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "apiguard/vocab.h"

namespace apiguard {

using TokenSequence = std::vector<int>;

// All token-id sequences whose texts concatenate exactly to `name`, sorted
// lexicographically. Computed by a position-indexed dynamic program (which
// suffixes can be finished) followed by backtracking over the surviving
// edges, so no partial sequence is ever extended into a dead end.
//
// The result can be exponential in |name|; `limit` caps the number of
// sequences returned (0 = no cap).
std::vector<TokenSequence> Segmentations(std::string_view name,
                                         const Vocab &vocab, size_t limit = 0);
std::vector<TokenSequence> Segmentations(std::string_view name,
                                         const Vocab &vocab,
                                         const TokenTrie &trie,
                                         size_t limit = 0);

// Number of segmentations, saturating at UINT64_MAX.
uint64_t CountSegmentations(std::string_view name, const TokenTrie &trie);

// True if at least one segmentation exists.
bool IsSpellable(std::string_view name, const TokenTrie &trie);

// Incremental speller for a fixed set of names. A state is a trie node: the
// set of names sharing the prefix spelled so far, all at the same offset.
class SpellingAutomaton {
 public:
  static constexpr int kStart = 0;

  SpellingAutomaton() : SpellingAutomaton(std::span<const std::string>{}) {}
  // Names are deduplicated; name indices follow sorted order.
  explicit SpellingAutomaton(std::span<const std::string> names);

  // Next state after `byte`, or -1.
  int Step(int state, unsigned char byte) const;
  // Index of the name spelled exactly by `state`, or -1.
  int Accepted(int state) const { return nodes_[state].accept; }
  bool HasContinuation(int state) const {
    return nodes_[state].edge_begin != nodes_[state].edge_end;
  }
  // The state reached by spelling `text` from the start, or -1.
  int Walk(std::string_view text) const;

  const std::vector<std::string> &names() const { return names_; }
  int num_states() const { return static_cast<int>(nodes_.size()); }
  bool empty() const { return names_.empty(); }

 private:
  struct Node {
    uint32_t edge_begin = 0;
    uint32_t edge_end = 0;
    int accept = -1;
  };
  struct Edge {
    unsigned char byte;
    int32_t next;
  };

  std::vector<std::string> names_;
  std::vector<Node> nodes_;
  std::vector<Edge> edges_;
};

}  // namespace apiguard

#endif  // APIGUARD_SPELLING_H_

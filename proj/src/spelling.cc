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

#include <algorithm>
#include <map>

namespace apiguard {

namespace {

struct Piece {
  int token;
  size_t end;
};

// pieces[i] lists every token matching name[i, end).
std::vector<std::vector<Piece>> MatchPieces(std::string_view name,
                                            const TokenTrie &trie) {
  std::vector<std::vector<Piece>> pieces(name.size());
  for (size_t i = 0; i < name.size(); ++i) {
    int node = TokenTrie::kRoot;
    for (size_t j = i; j < name.size(); ++j) {
      node = trie.Child(node, static_cast<unsigned char>(name[j]));
      if (node < 0) break;
      for (int id : trie.node(node).token_ids) pieces[i].push_back({id, j + 1});
    }
  }
  return pieces;
}

// finishable[i]: name[i, n) has a segmentation.
std::vector<bool> Finishable(const std::vector<std::vector<Piece>> &pieces,
                             size_t n) {
  std::vector<bool> ok(n + 1, false);
  ok[n] = true;
  for (size_t i = n; i-- > 0;) {
    for (const Piece &p : pieces[i]) {
      if (ok[p.end]) {
        ok[i] = true;
        break;
      }
    }
  }
  return ok;
}

void Backtrack(const std::vector<std::vector<Piece>> &pieces,
               const std::vector<bool> &finishable, size_t pos, size_t n,
               size_t limit, TokenSequence *prefix,
               std::vector<TokenSequence> *out) {
  if (limit != 0 && out->size() >= limit) return;
  if (pos == n) {
    out->push_back(*prefix);
    return;
  }
  for (const Piece &p : pieces[pos]) {
    if (!finishable[p.end]) continue;
    prefix->push_back(p.token);
    Backtrack(pieces, finishable, p.end, n, limit, prefix, out);
    prefix->pop_back();
  }
}

}  // namespace

std::vector<TokenSequence> Segmentations(std::string_view name,
                                         const Vocab &vocab,
                                         const TokenTrie &trie, size_t limit) {
  (void)vocab;
  std::vector<TokenSequence> out;
  if (name.empty()) return out;
  auto pieces = MatchPieces(name, trie);
  auto finishable = Finishable(pieces, name.size());
  if (!finishable[0]) return out;
  TokenSequence prefix;
  Backtrack(pieces, finishable, 0, name.size(), limit, &prefix, &out);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<TokenSequence> Segmentations(std::string_view name,
                                         const Vocab &vocab, size_t limit) {
  TokenTrie trie(vocab);
  return Segmentations(name, vocab, trie, limit);
}

uint64_t CountSegmentations(std::string_view name, const TokenTrie &trie) {
  if (name.empty()) return 0;
  auto pieces = MatchPieces(name, trie);
  std::vector<uint64_t> count(name.size() + 1, 0);
  count[name.size()] = 1;
  for (size_t i = name.size(); i-- > 0;) {
    for (const Piece &p : pieces[i]) {
      uint64_t add = count[p.end];
      count[i] = count[i] > UINT64_MAX - add ? UINT64_MAX : count[i] + add;
    }
  }
  return count[0];
}

bool IsSpellable(std::string_view name, const TokenTrie &trie) {
  if (name.empty()) return false;
  return Finishable(MatchPieces(name, trie), name.size())[0];
}

SpellingAutomaton::SpellingAutomaton(std::span<const std::string> names)
    : names_(names.begin(), names.end()) {
  std::sort(names_.begin(), names_.end());
  names_.erase(std::unique(names_.begin(), names_.end()), names_.end());

  std::vector<std::map<unsigned char, int>> children(1);
  std::vector<int> accept(1, -1);
  for (size_t n = 0; n < names_.size(); ++n) {
    int state = kStart;
    for (unsigned char c : names_[n]) {
      auto it = children[state].find(c);
      if (it == children[state].end()) {
        children.emplace_back();
        accept.push_back(-1);
        it = children[state]
                 .emplace(c, static_cast<int>(children.size()) - 1)
                 .first;
      }
      state = it->second;
    }
    accept[state] = static_cast<int>(n);
  }
  nodes_.resize(children.size());
  for (size_t i = 0; i < children.size(); ++i) {
    nodes_[i].edge_begin = static_cast<uint32_t>(edges_.size());
    for (const auto &[byte, next] : children[i]) edges_.push_back({byte, next});
    nodes_[i].edge_end = static_cast<uint32_t>(edges_.size());
    nodes_[i].accept = accept[i];
  }
}

int SpellingAutomaton::Step(int state, unsigned char byte) const {
  const Node &node = nodes_[state];
  for (uint32_t e = node.edge_begin; e < node.edge_end; ++e) {
    if (edges_[e].byte == byte) return edges_[e].next;
    if (edges_[e].byte > byte) break;
  }
  return -1;
}

int SpellingAutomaton::Walk(std::string_view text) const {
  int state = kStart;
  for (unsigned char c : text) {
    state = Step(state, c);
    if (state < 0) return -1;
  }
  return state;
}

}  // namespace apiguard

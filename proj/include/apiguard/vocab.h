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

#ifndef APIGUARD_VOCAB_H_
#define APIGUARD_VOCAB_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace apiguard {

struct VocabToken {
  int id = 0;
  std::string text;

  bool operator==(const VocabToken &other) const = default;
};

// Subtoken vocabulary. Detokenization is plain concatenation of token texts.
// The end-of-sequence id need not appear among the tokens; if it does, its
// text is ignored. Tokens with empty text are specials and never generated.
class Vocab {
 public:
  Vocab() = default;
  // Throws std::invalid_argument on duplicate ids.
  Vocab(std::vector<VocabToken> tokens, int eos_id);

  const std::vector<VocabToken> &tokens() const { return tokens_; }
  int eos_id() const { return eos_id_; }
  size_t size() const { return tokens_.size(); }

  bool Contains(int id) const { return index_.count(id) > 0; }
  // Throws std::out_of_range for unknown ids.
  const std::string &Text(int id) const;

  bool operator==(const Vocab &other) const {
    return eos_id_ == other.eos_id_ && tokens_ == other.tokens_;
  }

 private:
  std::vector<VocabToken> tokens_;
  std::unordered_map<int, size_t> index_;
  int eos_id_ = -1;
};

// Vocab file:
//
//   eos_id<TAB><id>
//   <id><TAB><escaped text>
//   ...
//
// Escapes inside token text: \\ \t \n \r and \xHH for any other byte.
Vocab LoadVocab(const std::string &path);
void SaveVocab(const Vocab &vocab, const std::string &path);
Vocab VocabFromText(std::string_view text, const std::string &origin);
std::string VocabToText(const Vocab &vocab);

std::string EscapeTokenText(std::string_view text);
// Throws std::invalid_argument on a malformed escape.
std::string UnescapeTokenText(std::string_view text);

// Byte trie over the texts of all generable tokens (non-empty, not eos).
// Edges of a node are sorted by byte.
class TokenTrie {
 public:
  struct Edge {
    unsigned char byte;
    int32_t child;
  };
  struct Node {
    uint32_t edge_begin = 0;
    uint32_t edge_end = 0;
    std::vector<int> token_ids;  // tokens whose text ends here
  };

  static constexpr int kRoot = 0;

  explicit TokenTrie(const Vocab &vocab);

  const Node &node(int i) const { return nodes_[i]; }
  const Edge *edges_begin(int i) const { return edges_.data() + nodes_[i].edge_begin; }
  const Edge *edges_end(int i) const { return edges_.data() + nodes_[i].edge_end; }
  // -1 if there is no edge.
  int Child(int node, unsigned char byte) const;
  size_t size() const { return nodes_.size(); }

 private:
  std::vector<Node> nodes_;
  std::vector<Edge> edges_;
};

}  // namespace apiguard

#endif  // APIGUARD_VOCAB_H_

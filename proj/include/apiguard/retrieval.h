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

#ifndef APIGUARD_RETRIEVAL_H_
#define APIGUARD_RETRIEVAL_H_

#include <map>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "apiguard/topconvert.h"

namespace apiguard {

using Embedding = std::vector<double>;

// Maps a text to a fixed-dimension vector. Implementations must be
// deterministic. `id` names the record being embedded and is only consulted
// by table-backed embedders; text-based embedders ignore it.
class Embedder {
 public:
  virtual ~Embedder() = default;
  virtual int dimension() const = 0;
  virtual Embedding Embed(std::string_view id, std::string_view text) const = 0;
};

// Lowercased tokens split on anything that is not a letter or digit.
std::vector<std::string> LexicalTokens(std::string_view text);

// Hashed bag of words: FNV-1a of every lexical token modulo the dimension,
// L2-normalized. A text without tokens embeds to the zero vector.
class HashingEmbedder : public Embedder {
 public:
  static constexpr int kDefaultDimension = 1024;

  explicit HashingEmbedder(int dimension = kDefaultDimension);

  int dimension() const override { return dimension_; }
  Embedding Embed(std::string_view id, std::string_view text) const override;

 private:
  int dimension_;
};

// Vectors read from an embeddings file, one `id<TAB>v1,v2,...,vD` per line.
// Embed() looks up by id and falls back to the text itself as the key.
class PrecomputedEmbedder : public Embedder {
 public:
  static PrecomputedEmbedder Load(const std::string &path);
  static PrecomputedEmbedder FromText(std::string_view text,
                                      const std::string &origin);

  int dimension() const override { return dimension_; }
  Embedding Embed(std::string_view id, std::string_view text) const override;
  bool Contains(const std::string &key) const { return table_.count(key); }

 private:
  int dimension_ = 0;
  std::map<std::string, Embedding, std::less<>> table_;
};

// Cosine similarity; 0 if either vector has zero norm.
double CosineSimilarity(std::span<const double> a, std::span<const double> b);

struct ScoredExample {
  Example example;
  double similarity = 0;
};

// Demonstration pool with one embedding per utterance. Immutable after
// construction and safe for concurrent Retrieve() calls.
class DemoIndex {
 public:
  // Throws std::invalid_argument for an empty pool or when the embedder
  // returns a vector of the wrong dimension.
  DemoIndex(std::vector<Example> examples,
            std::shared_ptr<const Embedder> embedder);

  size_t size() const { return examples_.size(); }
  int dimension() const { return embedder_->dimension(); }
  const Example &example(size_t i) const { return examples_[i]; }
  const Embedding &vector(size_t i) const { return vectors_[i]; }

  // Top-k by cosine similarity to the query, most similar first, ties broken
  // by ascending example id. Throws std::invalid_argument if k <= 0.
  std::vector<ScoredExample> Retrieve(std::string_view utterance, int k,
                                      std::string_view query_id = {}) const;
  std::vector<ScoredExample> RetrieveByVector(std::span<const double> query,
                                              int k) const;

 private:
  std::vector<Example> examples_;
  std::vector<Embedding> vectors_;
  std::shared_ptr<const Embedder> embedder_;
};

inline constexpr char kDefaultTaskDescription[] =
    "Follow the examples below and generate API Calls from the users' "
    "utterances";

// In-context prompt:
//
//   #[TASK DESCRIPTION]
//   <description>
//
//   #[IN-CONTEXT EXAMPLES]
//   Example 1:
//   User: <utterance>
//   API Call: <call>
//
//   ...
//   #[TEST QUERY]
//   Example N+1:
//   User: <test utterance>
//   API Call:
//
// The examples block is omitted when there are no demonstrations. The prompt
// ends right after "API Call:". Line breaks inside utterances or calls are
// replaced by spaces so the layout stays line-oriented.
std::string BuildPrompt(std::string_view description,
                        std::span<const Example> demos,
                        std::string_view test_utterance);

}  // namespace apiguard

#endif  // APIGUARD_RETRIEVAL_H_

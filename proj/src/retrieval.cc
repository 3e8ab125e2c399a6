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

#include "apiguard/retrieval.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>

#include "apiguard/file_util.h"

namespace apiguard {

namespace {

uint64_t Fnv1a(std::string_view s) {
  uint64_t h = 14695981039346656037ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

bool IsAlnum(unsigned char c) {
  return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'z') ||
         (c >= 'A' && c <= 'Z') || c >= 0x80;
}

std::string OneLine(std::string_view text) {
  std::string out(text);
  for (char &c : out) {
    if (c == '\n' || c == '\r') c = ' ';
  }
  return out;
}

}  // namespace

std::vector<std::string> LexicalTokens(std::string_view text) {
  std::vector<std::string> tokens;
  std::string current;
  for (unsigned char c : text) {
    if (IsAlnum(c)) {
      current.push_back(c >= 'A' && c <= 'Z' ? static_cast<char>(c + 32)
                                             : static_cast<char>(c));
    } else if (!current.empty()) {
      tokens.push_back(std::move(current));
      current.clear();
    }
  }
  if (!current.empty()) tokens.push_back(std::move(current));
  return tokens;
}

HashingEmbedder::HashingEmbedder(int dimension) : dimension_(dimension) {
  if (dimension <= 0) {
    throw std::invalid_argument("embedding dimension must be positive");
  }
}

Embedding HashingEmbedder::Embed(std::string_view, std::string_view text) const {
  Embedding v(dimension_, 0.0);
  for (const std::string &token : LexicalTokens(text)) {
    v[Fnv1a(token) % static_cast<uint64_t>(dimension_)] += 1.0;
  }
  double norm = std::sqrt(std::inner_product(v.begin(), v.end(), v.begin(), 0.0));
  if (norm > 0) {
    for (double &x : v) x /= norm;
  }
  return v;
}

PrecomputedEmbedder PrecomputedEmbedder::FromText(std::string_view text,
                                                  const std::string &origin) {
  PrecomputedEmbedder out;
  std::vector<std::string> lines = SplitLines(text);
  for (size_t i = 0; i < lines.size(); ++i) {
    int line = static_cast<int>(i) + 1;
    const std::string &l = lines[i];
    if (l.empty()) continue;
    size_t tab = l.find('\t');
    if (tab == std::string::npos) {
      throw FormatError(origin, line, "expected id<TAB>vector");
    }
    std::string id = l.substr(0, tab);
    Embedding v;
    const char *p = l.data() + tab + 1;
    const char *end = l.data() + l.size();
    while (true) {
      double x = 0;
      auto [next, ec] = std::from_chars(p, end, x);
      if (ec != std::errc()) {
        throw FormatError(origin, line, "bad number in vector");
      }
      v.push_back(x);
      p = next;
      if (p == end) break;
      if (*p != ',') throw FormatError(origin, line, "expected ','");
      ++p;
    }
    if (out.dimension_ == 0) {
      out.dimension_ = static_cast<int>(v.size());
    } else if (static_cast<int>(v.size()) != out.dimension_) {
      throw FormatError(origin, line,
                        "vector has dimension " + std::to_string(v.size()) +
                            ", expected " + std::to_string(out.dimension_));
    }
    if (!out.table_.emplace(std::move(id), std::move(v)).second) {
      throw FormatError(origin, line, "duplicate id");
    }
  }
  if (out.table_.empty()) throw FormatError(origin, 0, "no embeddings");
  return out;
}

PrecomputedEmbedder PrecomputedEmbedder::Load(const std::string &path) {
  return FromText(ReadFile(path), path);
}

Embedding PrecomputedEmbedder::Embed(std::string_view id,
                                     std::string_view text) const {
  auto it = table_.find(id);
  if (it == table_.end()) it = table_.find(text);
  if (it == table_.end()) {
    throw std::out_of_range("no precomputed embedding for '" +
                            std::string(id.empty() ? text : id) + "'");
  }
  return it->second;
}

double CosineSimilarity(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("cosine of vectors with different dimensions");
  }
  double dot = 0, na = 0, nb = 0;
  for (size_t i = 0; i < a.size(); ++i) {
    dot += a[i] * b[i];
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  if (na == 0 || nb == 0) return 0.0;
  return dot / (std::sqrt(na) * std::sqrt(nb));
}

DemoIndex::DemoIndex(std::vector<Example> examples,
                     std::shared_ptr<const Embedder> embedder)
    : examples_(std::move(examples)), embedder_(std::move(embedder)) {
  if (examples_.empty()) {
    throw std::invalid_argument("demonstration pool is empty");
  }
  vectors_.reserve(examples_.size());
  for (const Example &ex : examples_) {
    Embedding v = embedder_->Embed(ex.id, ex.utterance);
    if (static_cast<int>(v.size()) != embedder_->dimension()) {
      throw std::invalid_argument("embedder returned dimension " +
                                  std::to_string(v.size()) + " for " + ex.id);
    }
    vectors_.push_back(std::move(v));
  }
}

std::vector<ScoredExample> DemoIndex::Retrieve(std::string_view utterance, int k,
                                               std::string_view query_id) const {
  return RetrieveByVector(embedder_->Embed(query_id, utterance), k);
}

std::vector<ScoredExample> DemoIndex::RetrieveByVector(
    std::span<const double> query, int k) const {
  if (k <= 0) throw std::invalid_argument("k must be positive");
  if (static_cast<int>(query.size()) != dimension()) {
    throw std::invalid_argument("query has the wrong dimension");
  }
  std::vector<double> scores(examples_.size());
  for (size_t i = 0; i < examples_.size(); ++i) {
    scores[i] = CosineSimilarity(vectors_[i], query);
  }
  std::vector<size_t> order(examples_.size());
  std::iota(order.begin(), order.end(), 0);
  size_t keep = std::min(order.size(), static_cast<size_t>(k));
  std::partial_sort(order.begin(), order.begin() + keep, order.end(),
                    [&](size_t a, size_t b) {
                      if (scores[a] != scores[b]) return scores[a] > scores[b];
                      if (examples_[a].id != examples_[b].id) {
                        return examples_[a].id < examples_[b].id;
                      }
                      return a < b;
                    });
  std::vector<ScoredExample> out;
  out.reserve(keep);
  for (size_t i = 0; i < keep; ++i) {
    out.push_back({examples_[order[i]], scores[order[i]]});
  }
  return out;
}

std::string BuildPrompt(std::string_view description,
                        std::span<const Example> demos,
                        std::string_view test_utterance) {
  std::string desc(description);
  while (!desc.empty() && (desc.back() == '\n' || desc.back() == '\r')) {
    desc.pop_back();
  }
  std::string out = "#[TASK DESCRIPTION]\n" + desc + "\n\n";
  if (!demos.empty()) {
    out += "#[IN-CONTEXT EXAMPLES]\n";
    for (size_t i = 0; i < demos.size(); ++i) {
      out += "Example " + std::to_string(i + 1) + ":\n";
      out += "User: " + OneLine(demos[i].utterance) + "\n";
      out += "API Call: " + OneLine(demos[i].api_call) + "\n\n";
    }
  }
  out += "#[TEST QUERY]\n";
  out += "Example " + std::to_string(demos.size() + 1) + ":\n";
  out += "User: " + OneLine(test_utterance) + "\n";
  out += "API Call:";
  return out;
}

}  // namespace apiguard

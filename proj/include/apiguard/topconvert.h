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

#ifndef APIGUARD_TOPCONVERT_H_
#define APIGUARD_TOPCONVERT_H_

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "apiguard/api_expr.h"

namespace apiguard {

// TOP-style bracketed parses, e.g.
//   [IN:SHOW_ALARMS show my alarms [SL:DATE_TIME for tomorrow ] ]
struct TopNode {
  enum class Kind { kIntent, kSlot, kToken };

  Kind kind = Kind::kToken;
  std::string label;  // intent/slot label without prefix, or the token text
  std::vector<TopNode> children;

  static TopNode Token(std::string text) { return {Kind::kToken, text, {}}; }
  bool operator==(const TopNode &other) const = default;
};

enum class TopErrorKind {
  kEmptyInput,
  kUnbalancedBracket,
  kBadPrefix,
  kMultipleIntentsInSlot,
  kInvalidNesting,   // intent directly under intent, slot under slot
  kUnexpectedText,   // bare token at the root or text after the root
};

class TopParseError : public std::runtime_error {
 public:
  TopParseError(TopErrorKind kind, size_t offset, const std::string &message);
  TopErrorKind kind() const { return kind_; }
  size_t offset() const { return offset_; }

 private:
  TopErrorKind kind_;
  size_t offset_;
};

// Raised when a tree cannot be expressed as an API call.
class ConversionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

TopNode ParseTop(std::string_view text);

// Intent -> function, slot -> argument. A slot holding an intent becomes a
// nested call; a slot holding tokens becomes a string of the tokens joined by
// single spaces. Tokens directly under an intent are dropped.
ApiCall ToApiCall(const TopNode &tree);

// One training or test record.
struct Example {
  std::string id;
  std::string domain;
  std::string utterance;
  std::string api_call;                 // canonical form
  std::optional<std::string> top_parse;

  bool operator==(const Example &other) const = default;
};

// JSON lines with fields id, domain, utterance, api_call and optional
// top_parse. api_call is canonicalized on load; a record whose api_call does
// not parse is a FormatError.
std::vector<Example> LoadExamples(const std::string &path);
std::vector<Example> ExamplesFromJsonLines(std::string_view text,
                                           const std::string &origin);

// Reads records that carry top_parse (api_call may be absent) and fills
// api_call by conversion.
std::vector<Example> LoadTopExamples(const std::string &path);
std::vector<Example> TopExamplesFromJsonLines(std::string_view text,
                                              const std::string &origin);

void WriteExamples(std::span<const Example> examples, const std::string &path);
std::string ExamplesToJsonLines(std::span<const Example> examples);

// Function names and argument names of a call, prefixed "IN:" and "SL:" so
// that a name used both ways counts as two labels.
std::vector<std::string> LabelsOf(const ApiCall &call);

// Samples-per-intent-and-slot. Every label in the pool ends up in at least
// min(n, |examples with that label|) selected examples. Greedy over a seeded
// permutation: an example is kept iff one of its labels is still under quota.
// The result preserves pool order. Throws std::invalid_argument if n <= 0 or
// the pool is empty.
std::vector<Example> SpisSample(std::span<const Example> pool, int n,
                                uint64_t seed);

}  // namespace apiguard

#endif  // APIGUARD_TOPCONVERT_H_

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

#ifndef APIGUARD_DECODE_H_
#define APIGUARD_DECODE_H_

#include <array>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "apiguard/api_spec.h"
#include "apiguard/spelling.h"
#include "apiguard/vocab.h"

namespace apiguard {

inline constexpr int kMaxDecodeDepth = 16;

enum class DecodeMode : uint8_t {
  kExpectFunction,     // function name (root, or nested value being spelled)
  kExpectOpen,         // '(' after a function name
  kExpectArgOrClose,   // right after '('
  kExpectArg,          // argument name after ',' (or while spelling one)
  kExpectEquals,
  kExpectValue,        // '"' or a nested function name
  kInString,
  kExpectCommaOrClose,
  kComplete,
};

const char *DecodeModeName(DecodeMode mode);

struct DecodeOptions {
  // Maximum number of nested call levels, the root call included.
  int max_depth = 3;
  // Maximum decoded length of a string literal; an escape counts once.
  int max_string_length = 256;
};

enum class DecodeErrorKind {
  kEmptySpec,
  kUnspellableName,
  kDisallowedToken,
  kBadOptions,
};

const char *DecodeErrorKindName(DecodeErrorKind kind);

class DecodeError : public std::runtime_error {
 public:
  DecodeError(DecodeErrorKind kind, const std::string &message,
              std::vector<std::string> names = {})
      : std::runtime_error(message), kind_(kind), names_(std::move(names)) {}

  DecodeErrorKind kind() const { return kind_; }
  // For kUnspellableName: the names (or structural terminals) lacking a
  // segmentation under the vocabulary.
  const std::vector<std::string> &names() const { return names_; }

 private:
  DecodeErrorKind kind_;
  std::vector<std::string> names_;
};

// Counters for work done by mask computation.
struct MaskStats {
  uint64_t transitions = 0;  // bytes fed through the automaton
  uint64_t searches = 0;     // liveness searches from mid-name states
  uint64_t allowed = 0;      // tokens admitted
};

class DecodeState {
 public:
  DecodeMode mode() const { return core_.mode; }
  int depth() const { return core_.depth; }
  // Function indices (into Decoder::functions()), innermost last.
  std::vector<int> stack() const {
    return {core_.stack.begin(), core_.stack.begin() + core_.depth};
  }
  // Spelling automaton state, or -1 when not inside a name.
  int cursor() const { return core_.cursor; }
  bool mid_name() const { return core_.cursor >= 0; }
  int string_length() const { return core_.string_length; }
  const std::string &text() const { return text_; }
  bool complete() const { return core_.mode == DecodeMode::kComplete; }

  // Everything except the emitted text. Two states with equal signatures
  // admit exactly the same continuations.
  std::string Signature() const;

 private:
  friend class Decoder;

  struct Core {
    DecodeMode mode = DecodeMode::kExpectFunction;
    uint8_t depth = 0;
    bool separated = false;
    bool escape_pending = false;
    int32_t cursor = -1;
    int32_t string_length = 0;
    std::array<int16_t, kMaxDecodeDepth> stack{};
  };

  Core core_;
  std::string text_;
};

// Token mask engine for one (spec, vocab) pair. Immutable once built.
//
// Emitted text follows the call grammar with at most one space between
// lexemes and none inside names. A token is allowed iff feeding its text
// leaves the automaton in a state from which some token sequence reaches
// a complete call.
class Decoder {
 public:
  // Throws DecodeError.
  static std::shared_ptr<const Decoder> Create(ApiSpec spec, Vocab vocab,
                                               DecodeOptions options = {});

  DecodeState Start() const { return DecodeState(); }

  // Sorted ids. {eos} once complete.
  std::vector<int> AllowedTokens(const DecodeState &state,
                                 MaskStats *stats = nullptr) const;
  bool IsAllowed(const DecodeState &state, int token_id) const;
  // Throws DecodeError(kDisallowedToken).
  DecodeState Advance(const DecodeState &state, int token_id) const;
  // Same, without the membership check. For ids taken from AllowedTokens.
  void AdvanceUnchecked(DecodeState *state, int token_id) const;

  // Function names on the call stack, innermost last.
  std::vector<std::string> CallStack(const DecodeState &state) const;
  const std::vector<std::string> &functions() const {
    return functions_.names();
  }

  const ApiSpec &spec() const { return spec_; }
  const Vocab &vocab() const { return vocab_; }
  const TokenTrie &trie() const { return trie_; }
  const DecodeOptions &options() const { return options_; }

 private:
  using Core = DecodeState::Core;

  Decoder(ApiSpec spec, Vocab vocab, DecodeOptions options);

  const SpellingAutomaton &Active(const Core &s) const;
  bool Feed(Core *s, unsigned char c) const;
  bool FeedString(Core *s, unsigned char c) const;
  bool BeginName(Core *s, const SpellingAutomaton &a, unsigned char c) const;
  void FinishName(Core *s, int name) const;
  bool FeedText(Core *s, const std::string &text) const;
  bool Live(const Core &s, MaskStats *stats) const;
  bool SearchLive(const Core &s, MaskStats *stats) const;

  ApiSpec spec_;
  Vocab vocab_;
  TokenTrie trie_;
  DecodeOptions options_;
  SpellingAutomaton functions_;
  std::vector<SpellingAutomaton> arguments_;  // per function index
};

// A decoder together with one evolving state.
class Session {
 public:
  explicit Session(std::shared_ptr<const Decoder> decoder)
      : decoder_(std::move(decoder)), state_(decoder_->Start()) {}

  std::vector<int> AllowedTokens() const {
    return decoder_->AllowedTokens(state_);
  }
  void Advance(int token_id) { state_ = decoder_->Advance(state_, token_id); }

  const DecodeState &state() const { return state_; }
  const std::string &text() const { return state_.text(); }
  DecodeMode mode() const { return state_.mode(); }
  bool complete() const { return state_.complete(); }
  const Decoder &decoder() const { return *decoder_; }

 private:
  std::shared_ptr<const Decoder> decoder_;
  DecodeState state_;
};

// Throws DecodeError.
Session NewSession(ApiSpec spec, Vocab vocab, DecodeOptions options = {});

struct MockDecodeResult {
  bool complete = false;
  std::string text;  // the emission, or the unfinished prefix
  int steps = 0;     // tokens emitted, eos excluded
};

// Samples uniformly from the allowed set at every step until the call is
// complete or max_steps tokens have been emitted.
MockDecodeResult MockDecode(const Decoder &decoder, uint64_t seed,
                            int max_steps);
MockDecodeResult MockDecode(const ApiSpec &spec, const Vocab &vocab,
                            uint64_t seed, int max_steps,
                            DecodeOptions options = {});

struct OverheadReport {
  int steps = 0;
  double build_ms = 0;            // decoder construction incl. spellability
  double constrained_ns = 0;      // per step: mask + checked advance
  double baseline_ns = 0;         // per step: uniform draw + append
  double ratio = 0;               // constrained_ns / baseline_ns
  double mean_allowed = 0;        // mean mask size
  double mean_transitions = 0;    // automaton bytes per step
  int completed = 0;              // calls finished during the run
};

OverheadReport MeasureOverhead(const ApiSpec &spec, const Vocab &vocab,
                               int steps, uint64_t seed,
                               DecodeOptions options = {});

std::string FormatOverheadReport(const OverheadReport &report);

}  // namespace apiguard

#endif  // APIGUARD_DECODE_H_

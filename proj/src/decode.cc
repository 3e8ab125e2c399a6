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

#include "apiguard/decode.h"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstring>
#include <unordered_map>
#include <unordered_set>

#include "apiguard/rng.h"

namespace apiguard {

namespace {

bool IsIdentChar(unsigned char c) {
  return (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_';
}

template <typename Core>
std::string Key(const Core &s) {
  std::string key(12 + 2 * s.depth, '\0');
  key[0] = static_cast<char>(s.mode);
  key[1] = static_cast<char>(s.depth);
  key[2] = static_cast<char>(s.separated | (s.escape_pending << 1));
  std::memcpy(&key[4], &s.cursor, 4);
  std::memcpy(&key[8], &s.string_length, 4);
  std::memcpy(&key[12], s.stack.data(), 2 * s.depth);
  return key;
}

// Iterates over every generable token whose text the automaton accepts from
// `start`, calling visit(core_after, token_ids) once per trie node that ends
// at least one token. Returns early when visit returns true.
template <typename Core, typename FeedFn, typename Visit>
bool WalkTokens(const TokenTrie &trie, const Core &start, FeedFn feed,
                Visit visit, MaskStats *stats) {
  struct Frame {
    int node;
    Core core;
  };
  std::vector<Frame> todo;
  todo.push_back({TokenTrie::kRoot, start});
  while (!todo.empty()) {
    Frame f = todo.back();
    todo.pop_back();
    const auto &node = trie.node(f.node);
    if (f.node != TokenTrie::kRoot && !node.token_ids.empty()) {
      if (visit(f.core, node.token_ids)) return true;
    }
    const TokenTrie::Edge *b = trie.edges_begin(f.node);
    const TokenTrie::Edge *e = trie.edges_end(f.node);
    // Reverse so that lower bytes are expanded first.
    for (const TokenTrie::Edge *it = e; it != b;) {
      --it;
      Core next = f.core;
      if (stats != nullptr) ++stats->transitions;
      if (feed(&next, it->byte)) todo.push_back({it->child, next});
    }
  }
  return false;
}

}  // namespace

const char *DecodeModeName(DecodeMode mode) {
  switch (mode) {
    case DecodeMode::kExpectFunction:
      return "ExpectFunction";
    case DecodeMode::kExpectOpen:
      return "ExpectOpen";
    case DecodeMode::kExpectArgOrClose:
      return "ExpectArgOrClose";
    case DecodeMode::kExpectArg:
      return "ExpectArg";
    case DecodeMode::kExpectEquals:
      return "ExpectEquals";
    case DecodeMode::kExpectValue:
      return "ExpectValue";
    case DecodeMode::kInString:
      return "InString";
    case DecodeMode::kExpectCommaOrClose:
      return "ExpectCommaOrClose";
    case DecodeMode::kComplete:
      return "Complete";
  }
  return "?";
}

const char *DecodeErrorKindName(DecodeErrorKind kind) {
  switch (kind) {
    case DecodeErrorKind::kEmptySpec:
      return "EmptySpec";
    case DecodeErrorKind::kUnspellableName:
      return "UnspellableName";
    case DecodeErrorKind::kDisallowedToken:
      return "DisallowedToken";
    case DecodeErrorKind::kBadOptions:
      return "BadOptions";
  }
  return "?";
}

std::string DecodeState::Signature() const {
  std::string out = DecodeModeName(core_.mode);
  out += " stack=";
  for (int i = 0; i < core_.depth; ++i) {
    if (i > 0) out += ',';
    out += std::to_string(core_.stack[i]);
  }
  out += " cursor=" + std::to_string(core_.cursor);
  out += " sep=" + std::to_string(core_.separated);
  out += " esc=" + std::to_string(core_.escape_pending);
  out += " len=" + std::to_string(core_.string_length);
  return out;
}

Decoder::Decoder(ApiSpec spec, Vocab vocab, DecodeOptions options)
    : spec_(std::move(spec)),
      vocab_(std::move(vocab)),
      trie_(vocab_),
      options_(options) {
  std::vector<std::string> names(spec_.functions().begin(),
                                 spec_.functions().end());
  functions_ = SpellingAutomaton(names);
  for (const std::string &f : functions_.names()) {
    const NameSet &args = spec_.ArgumentsOf(f);
    std::vector<std::string> a(args.begin(), args.end());
    arguments_.emplace_back(a);
  }
}

std::shared_ptr<const Decoder> Decoder::Create(ApiSpec spec, Vocab vocab,
                                               DecodeOptions options) {
  if (options.max_depth < 1 || options.max_depth > kMaxDecodeDepth) {
    throw DecodeError(DecodeErrorKind::kBadOptions,
                      "max_depth must be in [1, " +
                          std::to_string(kMaxDecodeDepth) + "]");
  }
  if (options.max_string_length < 0) {
    throw DecodeError(DecodeErrorKind::kBadOptions,
                      "max_string_length must be non-negative");
  }
  if (spec.functions().empty()) {
    throw DecodeError(DecodeErrorKind::kEmptySpec,
                      "spec has no functions; nothing is generable");
  }
  if (spec.functions().size() > 32767) {
    throw DecodeError(DecodeErrorKind::kBadOptions, "too many functions");
  }
  std::shared_ptr<const Decoder> decoder(
      new Decoder(std::move(spec), std::move(vocab), options));

  // Single-character terminals the grammar cannot do without.
  std::vector<std::string> missing;
  for (const char *t : {"(", ")", "=", "\""}) {
    int node = decoder->trie_.Child(TokenTrie::kRoot, *t);
    if (node < 0 || decoder->trie_.node(node).token_ids.empty()) {
      missing.emplace_back(t);
    }
  }
  for (const NameSet *set :
       {&decoder->spec_.functions(), &decoder->spec_.arguments()}) {
    for (const std::string &name : *set) {
      if (!IsSpellable(name, decoder->trie_)) missing.push_back(name);
    }
  }
  if (!missing.empty()) {
    std::string msg = "not spellable under the vocabulary:";
    for (const std::string &m : missing) msg += " " + m;
    throw DecodeError(DecodeErrorKind::kUnspellableName, msg,
                      std::move(missing));
  }
  return decoder;
}

const SpellingAutomaton &Decoder::Active(const Core &s) const {
  if (s.mode == DecodeMode::kExpectArg) {
    return arguments_[s.stack[s.depth - 1]];
  }
  return functions_;
}

void Decoder::FinishName(Core *s, int name) const {
  if (s->mode == DecodeMode::kExpectFunction) {
    s->stack[s->depth++] = static_cast<int16_t>(name);
    s->mode = DecodeMode::kExpectOpen;
  } else {
    s->mode = DecodeMode::kExpectEquals;
  }
  s->cursor = -1;
  s->separated = false;
}

bool Decoder::BeginName(Core *s, const SpellingAutomaton &a,
                        unsigned char c) const {
  int next = a.Step(SpellingAutomaton::kStart, c);
  if (next < 0) return false;
  s->cursor = next;
  if (!a.HasContinuation(next)) FinishName(s, a.Accepted(next));
  return true;
}

bool Decoder::FeedString(Core *s, unsigned char c) const {
  if (s->escape_pending) {
    if (c != '"' && c != '\\') return false;
    s->escape_pending = false;
    ++s->string_length;
    return true;
  }
  if (c == '"') {
    s->mode = DecodeMode::kExpectCommaOrClose;
    s->string_length = 0;
    s->separated = false;
    return true;
  }
  // Control bytes would break line-oriented output formats.
  if (c < 0x20) return false;
  if (s->string_length >= options_.max_string_length) return false;
  if (c == '\\') {
    s->escape_pending = true;
  } else {
    ++s->string_length;
  }
  return true;
}

bool Decoder::Feed(Core *s, unsigned char c) const {
  if (s->cursor >= 0) {
    const SpellingAutomaton &a = Active(*s);
    int next = a.Step(s->cursor, c);
    if (next >= 0) {
      s->cursor = next;
      if (!a.HasContinuation(next)) FinishName(s, a.Accepted(next));
      return true;
    }
    int name = a.Accepted(s->cursor);
    if (name < 0 || IsIdentChar(c)) return false;
    FinishName(s, name);
    // `c` now belongs to the next lexeme.
  }
  if (s->mode == DecodeMode::kInString) return FeedString(s, c);
  if (s->mode == DecodeMode::kComplete) return false;
  if (c == ' ') {
    bool at_start = s->mode == DecodeMode::kExpectFunction && s->depth == 0;
    if (s->separated || at_start) return false;
    s->separated = true;
    return true;
  }
  s->separated = false;
  auto close = [&] {
    if (--s->depth == 0) {
      s->mode = DecodeMode::kComplete;
    } else {
      s->mode = DecodeMode::kExpectCommaOrClose;
    }
    return true;
  };
  switch (s->mode) {
    case DecodeMode::kExpectFunction:
      return BeginName(s, functions_, c);
    case DecodeMode::kExpectOpen:
      if (c != '(') return false;
      s->mode = DecodeMode::kExpectArgOrClose;
      return true;
    case DecodeMode::kExpectArgOrClose:
      if (c == ')') return close();
      s->mode = DecodeMode::kExpectArg;
      return BeginName(s, arguments_[s->stack[s->depth - 1]], c);
    case DecodeMode::kExpectArg:
      return BeginName(s, arguments_[s->stack[s->depth - 1]], c);
    case DecodeMode::kExpectEquals:
      if (c != '=') return false;
      s->mode = DecodeMode::kExpectValue;
      return true;
    case DecodeMode::kExpectValue:
      if (c == '"') {
        s->mode = DecodeMode::kInString;
        s->string_length = 0;
        s->escape_pending = false;
        return true;
      }
      if (s->depth >= options_.max_depth) return false;
      s->mode = DecodeMode::kExpectFunction;
      return BeginName(s, functions_, c);
    case DecodeMode::kExpectCommaOrClose:
      if (c == ',') {
        s->mode = DecodeMode::kExpectArg;
        return true;
      }
      if (c == ')') return close();
      return false;
    default:
      return false;
  }
}

bool Decoder::FeedText(Core *s, const std::string &text) const {
  for (unsigned char c : text) {
    if (!Feed(s, c)) return false;
  }
  return true;
}

// Outside names every mode can be finished with the required single-char
// terminals and spellable names; an accepting name state is one '(' or '='
// away from that. Only other mid-name states need a search.
bool Decoder::Live(const Core &s, MaskStats *stats) const {
  if (s.cursor < 0) return true;
  if (Active(s).Accepted(s.cursor) >= 0) return true;
  return SearchLive(s, stats);
}

bool Decoder::SearchLive(const Core &start, MaskStats *stats) const {
  if (stats != nullptr) ++stats->searches;
  std::unordered_set<std::string> seen{Key(start)};
  std::vector<Core> todo{start};
  auto feed = [this](Core *c, unsigned char b) { return Feed(c, b); };
  while (!todo.empty()) {
    Core s = todo.back();
    todo.pop_back();
    bool found = WalkTokens(
        trie_, s, feed,
        [&](const Core &next, const std::vector<int> &) {
          if (next.cursor < 0 || Active(next).Accepted(next.cursor) >= 0) {
            return true;
          }
          if (seen.insert(Key(next)).second) todo.push_back(next);
          return false;
        },
        stats);
    if (found) return true;
  }
  return false;
}

std::vector<int> Decoder::AllowedTokens(const DecodeState &state,
                                        MaskStats *stats) const {
  if (state.complete()) {
    if (stats != nullptr) ++stats->allowed;
    return {vocab_.eos_id()};
  }
  std::vector<int> out;
  std::unordered_map<std::string, bool> memo;
  auto feed = [this](Core *c, unsigned char b) { return Feed(c, b); };
  WalkTokens(
      trie_, state.core_, feed,
      [&](const Core &next, const std::vector<int> &ids) {
        bool live;
        if (next.cursor < 0 || Active(next).Accepted(next.cursor) >= 0) {
          live = true;
        } else {
          auto [it, fresh] = memo.emplace(Key(next), false);
          if (fresh) it->second = SearchLive(next, stats);
          live = it->second;
        }
        if (live) out.insert(out.end(), ids.begin(), ids.end());
        return false;
      },
      stats);
  std::sort(out.begin(), out.end());
  if (stats != nullptr) stats->allowed += out.size();
  return out;
}

bool Decoder::IsAllowed(const DecodeState &state, int token_id) const {
  if (state.complete()) return token_id == vocab_.eos_id();
  if (token_id == vocab_.eos_id() || !vocab_.Contains(token_id)) return false;
  const std::string &text = vocab_.Text(token_id);
  if (text.empty()) return false;
  Core s = state.core_;
  return FeedText(&s, text) && Live(s, nullptr);
}

DecodeState Decoder::Advance(const DecodeState &state, int token_id) const {
  if (!IsAllowed(state, token_id)) {
    throw DecodeError(DecodeErrorKind::kDisallowedToken,
                      "token " + std::to_string(token_id) +
                          " is not allowed in state " + state.Signature());
  }
  DecodeState next = state;
  AdvanceUnchecked(&next, token_id);
  return next;
}

void Decoder::AdvanceUnchecked(DecodeState *state, int token_id) const {
  if (state->complete()) return;  // eos
  const std::string &text = vocab_.Text(token_id);
  FeedText(&state->core_, text);
  state->text_ += text;
}

std::vector<std::string> Decoder::CallStack(const DecodeState &state) const {
  std::vector<std::string> out;
  for (int i : state.stack()) out.push_back(functions_.names()[i]);
  return out;
}

Session NewSession(ApiSpec spec, Vocab vocab, DecodeOptions options) {
  return Session(Decoder::Create(std::move(spec), std::move(vocab), options));
}

MockDecodeResult MockDecode(const Decoder &decoder, uint64_t seed,
                            int max_steps) {
  Rng rng(seed);
  DecodeState state = decoder.Start();
  MockDecodeResult result;
  while (!state.complete() && result.steps < max_steps) {
    std::vector<int> allowed = decoder.AllowedTokens(state);
    // Cannot happen for a decoder that passed Create.
    if (allowed.empty()) break;
    decoder.AdvanceUnchecked(&state, allowed[rng.Below(allowed.size())]);
    ++result.steps;
  }
  result.complete = state.complete();
  result.text = state.text();
  return result;
}

MockDecodeResult MockDecode(const ApiSpec &spec, const Vocab &vocab,
                            uint64_t seed, int max_steps,
                            DecodeOptions options) {
  return MockDecode(*Decoder::Create(spec, vocab, options), seed, max_steps);
}

OverheadReport MeasureOverhead(const ApiSpec &spec, const Vocab &vocab,
                               int steps, uint64_t seed,
                               DecodeOptions options) {
  using Clock = std::chrono::steady_clock;
  if (steps <= 0) throw std::invalid_argument("steps must be positive");
  OverheadReport report;
  report.steps = steps;

  auto t0 = Clock::now();
  auto decoder = Decoder::Create(spec, vocab, options);
  auto t1 = Clock::now();
  report.build_ms =
      std::chrono::duration<double, std::milli>(t1 - t0).count();

  std::vector<int> generable;
  for (const VocabToken &t : vocab.tokens()) {
    if (t.id != vocab.eos_id() && !t.text.empty()) generable.push_back(t.id);
  }

  // Baseline: what an unconstrained sampler does per step.
  {
    Rng rng(seed);
    std::string text;
    size_t sink = 0;
    auto b0 = Clock::now();
    for (int i = 0; i < steps; ++i) {
      text += vocab.Text(generable[rng.Below(generable.size())]);
      if (text.size() > 4096) {
        sink += text.size();
        text.clear();
      }
    }
    auto b1 = Clock::now();
    sink += text.size();
    report.baseline_ns =
        std::chrono::duration<double, std::nano>(b1 - b0).count() / steps;
    // Keep the loop observable.
    if (sink == static_cast<size_t>(-1)) std::fputs("", stderr);
  }

  {
    Rng rng(seed);
    MaskStats stats;
    DecodeState state = decoder->Start();
    auto c0 = Clock::now();
    for (int i = 0; i < steps; ++i) {
      std::vector<int> allowed = decoder->AllowedTokens(state, &stats);
      state = decoder->Advance(state, allowed[rng.Below(allowed.size())]);
      if (state.complete()) {
        ++report.completed;
        state = decoder->Start();
      }
    }
    auto c1 = Clock::now();
    report.constrained_ns =
        std::chrono::duration<double, std::nano>(c1 - c0).count() / steps;
    report.mean_allowed = static_cast<double>(stats.allowed) / steps;
    report.mean_transitions = static_cast<double>(stats.transitions) / steps;
  }
  report.ratio = report.baseline_ns > 0
                     ? report.constrained_ns / report.baseline_ns
                     : 0.0;
  return report;
}

std::string FormatOverheadReport(const OverheadReport &r) {
  char buf[512];
  std::snprintf(buf, sizeof(buf),
                "steps\t%d\nbuild_ms\t%.3f\nconstrained_ns_per_step\t%.1f\n"
                "baseline_ns_per_step\t%.1f\nratio\t%.2f\nmean_allowed\t%.2f\n"
                "mean_transitions\t%.2f\ncompleted\t%d\n",
                r.steps, r.build_ms, r.constrained_ns, r.baseline_ns, r.ratio,
                r.mean_allowed, r.mean_transitions, r.completed);
  return buf;
}

}  // namespace apiguard

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


// Acceptance checks. Prints one [PASS]/[FAIL] line per criterion and exits
// non-zero if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <deque>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "apiguard/api_expr.h"
#include "apiguard/api_spec.h"
#include "apiguard/constraints.h"
#include "apiguard/decode.h"
#include "apiguard/file_util.h"
#include "apiguard/retrieval.h"
#include "apiguard/rng.h"
#include "apiguard/sp_metrics.h"
#include "apiguard/spelling.h"
#include "apiguard/topconvert.h"
#include "apiguard/vocab.h"
#include "support/metric_batches.h"
#include "support/oracles.h"
#include "support/toy_data.h"

namespace apiguard {
namespace {

using testing::Uniform;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string Fmt(const char *format, ...) __attribute__((format(printf, 1, 2)));
std::string Fmt(const char *format, ...) {
  char buf[512];
  va_list args;
  va_start(args, format);
  std::vsnprintf(buf, sizeof buf, format, args);
  va_end(args);
  return buf;
}

// --- zero-violation decoding ----------------------------------------------

Outcome ZeroViolationDecoding() {
  constexpr int kSpecs = 12;
  constexpr int kSeedsPerVocab = 28;
  Rng rng(101);
  int runs = 0, violations = 0, incomplete = 0, max_depth_seen = 0;
  for (int i = 0; i < kSpecs; ++i) {
    ApiSpec spec = testing::RandomSpec(rng, 8, 12);
    Vocab vocabs[] = {testing::PrintableCharVocab(),
                      testing::MergeVocab(rng, spec),
                      testing::SpanningVocab(rng, spec)};
    for (Vocab &v : vocabs) {
      auto decoder = Decoder::Create(spec, v, {3, 256});
      for (int seed = 0; seed < kSeedsPerVocab; ++seed) {
        MockDecodeResult r = MockDecode(*decoder, 1000 * i + seed, 50000);
        ++runs;
        if (!r.complete) {
          ++incomplete;
          continue;
        }
        ParseResult p = Parse(r.text);
        if (p.ok()) max_depth_seen = std::max(max_depth_seen, CallDepth(p.call()));
        ConstraintSignature want{1, 1, 1, 1};
        if (Check(r.text, spec).signature != want ||
            testing::BruteForceCheck(r.text, spec) != want) {
          ++violations;
        }
      }
    }
  }
  return {runs >= 1000 && violations == 0 && incomplete == 0 &&
              max_depth_seen <= 3,
          Fmt("%d runs, %d specs x 3 vocab styles, %d violations, %d "
              "incomplete, deepest call %d",
              runs, kSpecs, violations, incomplete, max_depth_seen)};
}

// --- checker equivalence ----------------------------------------------------

void CollectNames(const ApiCall &c, int *count) {
  ++*count;
  for (const ArgPair &a : c.args) {
    ++*count;
    if (a.value.is_call()) CollectNames(a.value.call(), count);
  }
}

// Replaces the target-th name (pre-order, functions and arguments) by `with`.
ApiCall Rename(const ApiCall &c, int target, int *seen, const std::string &with) {
  ApiCall out = c;
  if ((*seen)++ == target) out.function = with;
  for (ArgPair &a : out.args) {
    if ((*seen)++ == target) a.name = with;
    if (a.value.is_call()) {
      a.value = Value::Call(Rename(a.value.call(), target, seen, with));
    }
  }
  return out;
}

std::string MutateName(Rng &rng, const ApiSpec &spec, const ApiCall &call) {
  int names = 0;
  CollectNames(call, &names);
  std::vector<std::string> pool(spec.functions().begin(), spec.functions().end());
  pool.insert(pool.end(), spec.arguments().begin(), spec.arguments().end());
  std::string with = rng.Below(2) ? pool[rng.Below(pool.size())]
                                  : testing::RandomIdentifier(rng, 8);
  int seen = 0;
  ApiCall mutated = Rename(call, Uniform(rng, 0, names - 1), &seen, with);
  return rng.Below(2) ? Serialize(mutated) : testing::CompactSerialize(mutated);
}

std::string CorruptSyntax(Rng &rng, std::string text) {
  static const char kPieces[] = "()=\", x\\";
  int edits = Uniform(rng, 1, 3);
  for (int e = 0; e < edits && !text.empty(); ++e) {
    size_t at = rng.Below(text.size());
    switch (rng.Below(4)) {
      case 0: text.erase(at, 1); break;
      case 1: text.insert(at, 1, kPieces[rng.Below(sizeof kPieces - 1)]); break;
      case 2: text[at] = kPieces[rng.Below(sizeof kPieces - 1)]; break;
      default: text.resize(at); break;
    }
  }
  return text;
}

Outcome CheckerEquivalence() {
  Rng rng(202);
  int agree = 0, total = 0;
  std::map<std::string, int> seen_signatures;
  for (int i = 0; i < 500; ++i) {
    ApiSpec spec = testing::RandomSpec(rng, 6, 8);
    ApiCall call = testing::RandomValidCall(rng, spec, 3, 3);
    std::string text;
    if (i < 250) {
      text = rng.Below(2) ? Serialize(call) : testing::CompactSerialize(call);
    } else if (i < 375) {
      text = MutateName(rng, spec, call);
    } else {
      text = CorruptSyntax(rng, Serialize(call));
    }
    ConstraintSignature got = Check(text, spec).signature;
    ++total;
    agree += got == testing::BruteForceCheck(text, spec);
    ++seen_signatures[got.ToString()];
  }
  return {agree == total && seen_signatures.size() >= 4,
          Fmt("%d/%d agree, %zu distinct signatures", agree, total,
              seen_signatures.size())};
}

// --- worked example ---------------------------------------------------------

Outcome WorkedExample() {
  ApiSpec spec({"GET_ALARMS"}, {"DATE_TIME"}, {{"GET_ALARMS", {"DATE_TIME"}}});
  ConstraintSignature s =
      Check("SHOW_ALARMS ( DATE_TIME = \"tomorrow\" )", spec).signature;
  return {s == ConstraintSignature{1, 0, 1, 0},
          "(C_s, C_f, C_a, C_fa) = (" + std::to_string(s.structural) + ", " +
              std::to_string(s.function) + ", " + std::to_string(s.argument) +
              ", " + std::to_string(s.association) + ")"};
}

// --- segmentation -----------------------------------------------------------

Outcome SegmentationOracle() {
  Rng rng(303);
  int agree = 0, nonempty = 0;
  for (int i = 0; i < 200; ++i) {
    std::string alphabet = std::string("abcd").substr(0, Uniform(rng, 2, 4));
    auto word = [&](int lo, int hi) {
      std::string w;
      for (int n = Uniform(rng, lo, hi); n > 0; --n) {
        w += alphabet[rng.Below(alphabet.size())];
      }
      return w;
    };
    std::string name = word(1, 8);
    std::vector<VocabToken> tokens;
    int size = Uniform(rng, 1, 12);
    for (int t = 0; t < size; ++t) tokens.push_back({t, word(1, 3)});
    Vocab vocab(std::move(tokens), size);
    std::vector<TokenSequence> dp = Segmentations(name, vocab);
    agree += dp == testing::ExhaustiveSegmentations(name, vocab);
    nonempty += !dp.empty();
  }
  return {agree == 200 && nonempty >= 50,
          Fmt("%d/200 agree, %d instances spellable", agree, nonempty)};
}

// --- soundness and reachability ---------------------------------------------

std::vector<ApiCall> SmallCalls(const ApiSpec &spec, int depth) {
  std::vector<Value> values = {Value::String(""), Value::String("x")};
  if (depth > 1) {
    for (const ApiCall &c : SmallCalls(spec, depth - 1)) {
      values.push_back(Value::Call(c));
    }
  }
  std::vector<ApiCall> out;
  for (const std::string &f : spec.functions()) {
    out.push_back({f, {}});
    std::vector<ArgPair> singles;
    for (const std::string &a : spec.ArgumentsOf(f)) {
      for (const Value &v : values) singles.push_back({a, v});
    }
    for (const ArgPair &p : singles) out.push_back({f, {p}});
    for (const ArgPair &p : singles) {
      for (const ArgPair &q : singles) out.push_back({f, {p, q}});
    }
  }
  return out;
}

Outcome Soundness() {
  // GET prefixes GET_TIME and A prefixes AB, so names resolve lazily.
  ApiSpec spec({"GET", "GET_TIME", "SET"}, {"A", "AB", "B"},
               {{"GET", {"A", "AB"}}, {"GET_TIME", {"B"}}});
  const std::string alphabet = "GETSIM_AB()=\", x\\";
  Vocab vocab = testing::CharVocab(alphabet);
  auto d = Decoder::Create(spec, vocab, {2, 1});

  std::map<std::string, DecodeState> states;
  std::map<std::string, std::vector<std::string>> edges;
  std::deque<DecodeState> todo{d->Start()};
  states.emplace(d->Start().Signature(), d->Start());
  while (!todo.empty()) {
    DecodeState s = todo.front();
    todo.pop_front();
    auto &out = edges[s.Signature()];
    if (s.complete()) continue;
    for (int id : d->AllowedTokens(s)) {
      DecodeState next = d->Advance(s, id);
      out.push_back(next.Signature());
      if (states.emplace(next.Signature(), next).second) todo.push_back(next);
    }
  }

  std::map<std::string, std::vector<std::string>> reverse;
  for (const auto &[from, tos] : edges) {
    for (const std::string &to : tos) reverse[to].push_back(from);
  }
  std::set<std::string> finishes;
  for (const auto &[sig, s] : states) {
    if (s.complete()) {
      finishes.insert(sig);
      todo.push_back(s);
    }
  }
  while (!todo.empty()) {
    std::string sig = todo.front().Signature();
    todo.pop_front();
    for (const std::string &p : reverse[sig]) {
      if (finishes.insert(p).second) todo.push_back(states.at(p));
    }
  }
  size_t dead = states.size() - finishes.size();

  // Every small valid call, in both spacings, walks the explored graph to a
  // complete state. Letters of names outside the walk alphabet are absent
  // by construction.
  std::map<char, int> id_of;
  for (const VocabToken &t : vocab.tokens()) id_of[t.text[0]] = t.id;
  int reached = 0, calls = 0;
  for (const ApiCall &c : SmallCalls(spec, 2)) {
    for (const std::string &text : {Serialize(c), testing::CompactSerialize(c)}) {
      ++calls;
      DecodeState s = d->Start();
      bool ok = true;
      for (char ch : text) {
        if (!d->IsAllowed(s, id_of[ch])) {
          ok = false;
          break;
        }
        s = d->Advance(s, id_of[ch]);
        ok = ok && states.count(s.Signature());
      }
      reached += ok && s.complete();
    }
  }
  return {dead == 0 && reached == calls,
          Fmt("%zu states, %zu dead, %d/%d depth<=2 calls reached", states.size(),
              dead, reached, calls)};
}

// --- retrieval ranking ------------------------------------------------------

Outcome RetrievalRanking() {
  std::vector<Example> pool = testing::RetrievalToyPool();
  auto embedder = std::make_shared<HashingEmbedder>();
  DemoIndex index(pool, embedder);
  std::vector<Embedding> vectors;
  for (const Example &e : pool) vectors.push_back(embedder->Embed(e.id, e.utterance));

  std::vector<std::string> queries;
  for (const Example &e : pool) queries.push_back(e.utterance);
  queries.push_back("set an alarm for the weather");
  queries.push_back("no overlap whatsoever");
  int agree = 0;
  bool monotone = true;
  for (const std::string &q : queries) {
    Embedding qv = embedder->Embed("", q);
    std::vector<std::pair<double, std::string>> scored;
    for (size_t i = 0; i < pool.size(); ++i) {
      double dot = 0, a = 0, b = 0;
      for (size_t k = 0; k < qv.size(); ++k) {
        dot += qv[k] * vectors[i][k];
        a += qv[k] * qv[k];
        b += vectors[i][k] * vectors[i][k];
      }
      scored.push_back({a == 0 || b == 0 ? 0.0 : dot / std::sqrt(a * b), pool[i].id});
    }
    std::sort(scored.begin(), scored.end(), [](const auto &x, const auto &y) {
      return x.first != y.first ? x.first > y.first : x.second < y.second;
    });
    std::vector<ScoredExample> got = index.Retrieve(q, 10);
    bool same = got.size() == 10;
    for (size_t r = 0; same && r < got.size(); ++r) {
      same = got[r].example.id == scored[r].second &&
             std::abs(got[r].similarity - scored[r].first) < 1e-12;
      if (r > 0 && got[r].similarity > got[r - 1].similarity) monotone = false;
    }
    agree += same;
  }
  int n = static_cast<int>(queries.size());
  return {agree == n && monotone,
          Fmt("%d/%d queries match the pairwise cosine ranking at k=10%s", agree,
              n, monotone ? ", non-increasing" : ", NOT monotone")};
}

// --- prompt golden ----------------------------------------------------------

Outcome PromptGolden() {
  std::string data = APIGUARD_TEST_DATA;
  std::vector<Example> demos = LoadExamples(data + "/prompt_demos.jsonl");
  std::string prompt = BuildPrompt(kDefaultTaskDescription, demos,
                                   "get me directions to the stadium");
  std::string golden = ReadFile(data + "/prompt_10.golden");
  bool labeled = prompt.find("Example 11") != std::string::npos;
  return {demos.size() == 10 && prompt == golden && labeled,
          Fmt("%zu demos, %zu bytes, %s", demos.size(), prompt.size(),
              prompt == golden ? "byte-identical" : "differs from golden")};
}

// --- SPIS -------------------------------------------------------------------

Outcome SpisCoverage() {
  std::vector<Example> pool = testing::SpisToyPool();
  std::map<std::string, int> available = testing::LabelCoverage(pool);
  int checks = 0, failures = 0;
  for (int n : {1, 5}) {
    for (uint64_t seed : {17u, 18u, 99u}) {
      std::vector<Example> sample = SpisSample(pool, n, seed);
      std::map<std::string, int> got = testing::LabelCoverage(sample);
      for (const auto &[label, count] : available) {
        ++checks;
        auto it = got.find(label);
        failures += (it == got.end() ? 0 : it->second) < std::min(n, count);
      }
      ++checks;
      failures += SpisSample(pool, n, seed) != sample;
    }
  }
  return {failures == 0 && checks > 0,
          Fmt("%zu labels, n in {1,5}, %d checks, %d failures", available.size(),
              checks, failures)};
}

// --- metrics ----------------------------------------------------------------

Outcome Metrics() {
  int bad = 0;
  auto batches = testing::HandCountedBatches();
  for (const auto &b : batches) {
    bad += std::abs(ExactMatch(b.pairs) - b.exact_match) > 1e-9;
    bad += IntentCounts(b.pairs) != b.intents;
    bad += SlotCounts(b.pairs) != b.slots;
    bad += std::abs(IntentF1(b.pairs) - b.intent_f1) > 1e-9;
    bad += std::abs(SlotF1(b.pairs) - b.slot_f1) > 1e-9;
    if (ExactMatch(b.pairs) == 1.0) {
      bad += IntentF1(b.pairs) != 1.0 || SlotF1(b.pairs) != 1.0;
    }
  }
  // EM = 1 implies both F1 = 1 on random batches of respaced copies.
  Rng rng(404);
  int implication_checks = 0;
  for (int i = 0; i < 200; ++i) {
    ApiSpec spec = testing::RandomSpec(rng, 4, 4);
    std::vector<EvalPair> pairs;
    for (int j = Uniform(rng, 1, 5); j > 0; --j) {
      ApiCall c = testing::RandomValidCall(rng, spec, 3, 3);
      pairs.push_back({Serialize(c), testing::CompactSerialize(c), ""});
    }
    ++implication_checks;
    bad += ExactMatch(pairs) != 1.0 || IntentF1(pairs) != 1.0 ||
           SlotF1(pairs) != 1.0;
  }
  return {bad == 0, Fmt("%zu hand-counted batches, %d EM=1 batches, %d mismatches",
                        batches.size(), implication_checks, bad)};
}

// --- overhead ---------------------------------------------------------------

Outcome Overhead() {
  std::vector<ApiCall> corpus = {
      Parse("GET_DIRECTIONS ( DESTINATION = GET_LOCATION ( CATEGORY_LOCATION = "
            "\"auditorium\" ) , PATH = \"1st ave\" )")
          .call(),
      Parse("GET_ALARMS ( DATE_TIME = \"tomorrow\" )").call(),
      Parse("CREATE_ALARM ( DATE_TIME = \"7am\" , NAME = \"gym\" )").call()};
  OverheadReport r = MeasureOverhead(DeriveFromCorpus(corpus),
                                     testing::PrintableCharVocab(), 10000, 17);
  return {r.steps == 10000 && r.ratio >= 1.0,
          Fmt("ratio %.2f over %d steps (constrained %.0f ns/step, baseline "
              "%.0f ns/step, build %.2f ms)",
              r.ratio, r.steps, r.constrained_ns, r.baseline_ns, r.build_ms)};
}

struct Criterion {
  const char *name;
  double budget_s;  // 0 for none
  std::function<Outcome()> run;
};

}  // namespace
}  // namespace apiguard

int main() {
  using namespace apiguard;
  const Criterion criteria[] = {
      {"zero-violation decoding", 60, ZeroViolationDecoding},
      {"checker oracle equivalence", 10, CheckerEquivalence},
      {"worked example signature", 0, WorkedExample},
      {"segmentation vs exhaustive", 5, SegmentationOracle},
      {"soundness and reachability", 30, Soundness},
      {"retrieval ranking", 0, RetrievalRanking},
      {"prompt byte-exactness", 0, PromptGolden},
      {"SPIS coverage", 0, SpisCoverage},
      {"metrics", 0, Metrics},
      {"overhead report", 0, Overhead},
  };
  int failed = 0;
  for (const Criterion &c : criteria) {
    auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception &e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(
                      std::chrono::steady_clock::now() - start)
                      .count();
    bool in_time = c.budget_s == 0 || secs < c.budget_s;
    bool pass = o.pass && in_time;
    failed += !pass;
    std::printf("[%s] %s: %s (%.2f s", pass ? "PASS" : "FAIL", c.name,
                o.detail.c_str(), secs);
    if (c.budget_s > 0) std::printf(", limit %.0f s", c.budget_s);
    std::printf(")\n");
  }
  std::printf("%d/%zu criteria passed\n",
              static_cast<int>(std::size(criteria)) - failed, std::size(criteria));
  return failed ? 1 : 0;
}

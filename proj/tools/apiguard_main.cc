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


// apiguard: command-line front end. Results go to stdout, diagnostics to
// stderr. Exit status 0 on success, 1 on a domain error, 2 on bad usage.

#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "apiguard/api_expr.h"
#include "apiguard/api_spec.h"
#include "apiguard/constraints.h"
#include "apiguard/decode.h"
#include "apiguard/file_util.h"
#include "apiguard/retrieval.h"
#include "apiguard/sp_metrics.h"
#include "apiguard/topconvert.h"
#include "apiguard/vocab.h"

namespace apiguard {
namespace {

constexpr uint64_t kDefaultSeed = 17;

// Raised for failures the caller should see as exit status 1.
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Flags {
  std::string input = "-";
  std::string spec;
  std::string vocab;
  std::string gold;
  std::string pred;
  std::string pool;
  std::string query;
  std::string query_id;
  std::string embeddings;
  std::string desc_file;
  std::string tokens;
  std::string output;
  uint64_t seed = kDefaultSeed;
  int n = 1;
  int k = 10;
  int runs = 1;
  int max_steps = 4096;
  int steps = 10000;
  int max_depth = DecodeOptions().max_depth;
  int max_string_length = DecodeOptions().max_string_length;
  bool state_trace = false;
};

std::string ReadInput(const std::string &path) {
  if (path != "-") return ReadFile(path);
  std::ostringstream out;
  out << std::cin.rdbuf();
  return out.str();
}

void Emit(const std::string &text, const std::string &path) {
  if (path.empty() || path == "-") {
    std::cout << text;
  } else {
    WriteFile(path, text);
  }
}

DecodeOptions OptionsOf(const Flags &f) {
  return {f.max_depth, f.max_string_length};
}

std::string Ids(const std::vector<int> &ids) {
  std::string out;
  for (size_t i = 0; i < ids.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(ids[i]);
  }
  return out;
}

int RunParse(const Flags &f) {
  std::vector<std::string> lines = SplitLines(ReadInput(f.input));
  int failures = 0;
  for (size_t i = 0; i < lines.size(); ++i) {
    ParseResult r = Parse(lines[i]);
    if (r.ok()) {
      std::cout << Serialize(r.call()) << "\n";
    } else {
      std::cout << "\n";
      std::cerr << f.input << ":" << i + 1 << ": " << r.error().ToString()
                << "\n";
      ++failures;
    }
  }
  return failures ? 1 : 0;
}

int RunFlatten(const Flags &f) {
  std::vector<std::string> lines = SplitLines(ReadInput(f.input));
  int failures = 0;
  for (size_t i = 0; i < lines.size(); ++i) {
    ParseResult r = Parse(lines[i]);
    if (!r.ok()) {
      std::cerr << f.input << ":" << i + 1 << ": " << r.error().ToString()
                << "\n";
      ++failures;
      continue;
    }
    std::vector<FlatCall> flat = Flatten(r.call());
    for (size_t j = 0; j < flat.size(); ++j) {
      std::cout << i + 1 << "\t" << j << "\t" << flat[j].function;
      for (const FlatArg &a : flat[j].args) {
        std::cout << "\t" << a.name << "=";
        if (a.value.grounded()) {
          std::cout << QuoteString(a.value.text);
        } else {
          std::cout << "#" << a.value.child_index;
        }
      }
      std::cout << "\n";
    }
  }
  return failures ? 1 : 0;
}

int RunCheck(const Flags &f) {
  ApiSpec spec = LoadSpec(f.spec);
  std::vector<ViolationReport> reports;
  for (const std::string &line : SplitLines(ReadInput(f.input))) {
    reports.push_back(Check(line, spec));
    std::cout << FormatReportLine(reports.back()) << "\n";
  }
  std::cout << FormatRateSummary(ComputeViolationRates(reports), reports.size());
  return 0;
}

int RunEval(const Flags &f) {
  ApiSpec spec = LoadSpec(f.spec);
  std::vector<Example> gold = LoadExamples(f.gold);
  std::vector<std::string> pred = SplitLines(ReadFile(f.pred));
  if (pred.size() != gold.size()) {
    throw DomainError(f.pred + ": " + std::to_string(pred.size()) +
                      " predictions for " + std::to_string(gold.size()) +
                      " gold examples");
  }
  std::vector<EvalPair> pairs;
  std::vector<ViolationReport> reports;
  for (size_t i = 0; i < gold.size(); ++i) {
    pairs.push_back({gold[i].api_call, pred[i], gold[i].utterance});
    reports.push_back(Check(pred[i], spec));
  }
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "examples\t%zu\nexact_match\t%.4f\nintent_f1\t%.4f\n"
                "slot_f1\t%.4f\n",
                pairs.size(), ExactMatch(pairs), IntentF1(pairs), SlotF1(pairs));
  std::cout << buf
            << FormatRateSummary(ComputeViolationRates(reports), reports.size());
  return 0;
}

int RunConvertTop(const Flags &f) {
  std::vector<Example> examples =
      TopExamplesFromJsonLines(ReadInput(f.input), f.input);
  Emit(ExamplesToJsonLines(examples), f.output);
  return 0;
}

int RunSampleSpis(const Flags &f) {
  std::vector<Example> pool = ExamplesFromJsonLines(ReadInput(f.input), f.input);
  Emit(ExamplesToJsonLines(SpisSample(pool, f.n, f.seed)), f.output);
  return 0;
}

DemoIndex BuildIndex(const Flags &f) {
  std::shared_ptr<const Embedder> embedder;
  if (f.embeddings.empty()) {
    embedder = std::make_shared<HashingEmbedder>();
  } else {
    embedder =
        std::make_shared<PrecomputedEmbedder>(PrecomputedEmbedder::Load(f.embeddings));
  }
  return DemoIndex(LoadExamples(f.pool), std::move(embedder));
}

int RunRetrieve(const Flags &f) {
  DemoIndex index = BuildIndex(f);
  int rank = 0;
  for (const ScoredExample &s : index.Retrieve(f.query, f.k, f.query_id)) {
    char sim[32];
    std::snprintf(sim, sizeof sim, "%.6f", s.similarity);
    std::cout << ++rank << "\t" << sim << "\t" << s.example.id << "\t"
              << s.example.utterance << "\n";
  }
  return 0;
}

int RunPrompt(const Flags &f) {
  DemoIndex index = BuildIndex(f);
  std::string desc = kDefaultTaskDescription;
  if (!f.desc_file.empty()) {
    desc = ReadFile(f.desc_file);
    while (!desc.empty() && (desc.back() == '\n' || desc.back() == '\r')) {
      desc.pop_back();
    }
  }
  std::vector<Example> demos;
  for (ScoredExample &s : index.Retrieve(f.query, f.k, f.query_id)) {
    demos.push_back(std::move(s.example));
  }
  std::cout << BuildPrompt(desc, demos, f.query) << "\n";
  return 0;
}

int RunDecodeSim(const Flags &f) {
  ApiSpec spec = LoadSpec(f.spec);
  auto decoder = Decoder::Create(spec, LoadVocab(f.vocab), OptionsOf(f));
  std::vector<ViolationReport> reports;
  int incomplete = 0;
  for (int run = 0; run < f.runs; ++run) {
    MockDecodeResult r = MockDecode(*decoder, f.seed + run, f.max_steps);
    std::cout << (r.complete ? "ok" : "cut") << "\t" << r.steps << "\t"
              << r.text << "\n";
    if (!r.complete) {
      ++incomplete;
      continue;
    }
    reports.push_back(Check(r.text, spec));
  }
  int violations = 0;
  for (const ViolationReport &r : reports) violations += !r.signature.all_satisfied();
  std::cout << "runs\t" << f.runs << "\ncomplete\t" << reports.size()
            << "\nincomplete\t" << incomplete << "\nviolations\t" << violations
            << "\n"
            << FormatRateSummary(ComputeViolationRates(reports), reports.size());
  return violations ? 1 : 0;
}

std::vector<int> ReadTokenIds(const std::string &path) {
  std::string text = ReadInput(path);
  for (char &c : text) {
    if (c == ',') c = ' ';
  }
  std::istringstream in(text);
  std::vector<int> ids;
  std::string word;
  while (in >> word) {
    try {
      size_t used = 0;
      ids.push_back(std::stoi(word, &used));
      if (used != word.size()) throw std::invalid_argument(word);
    } catch (const std::logic_error &) {
      throw DomainError(path + ": not a token id: " + word);
    }
  }
  return ids;
}

// Line protocol: `<step>\t<allowed ids>` before each emitted token and once
// after the last; with --state-trace a third column holds the state.
int RunMask(const Flags &f) {
  auto decoder =
      Decoder::Create(LoadSpec(f.spec), LoadVocab(f.vocab), OptionsOf(f));
  std::vector<int> ids;
  if (!f.tokens.empty()) ids = ReadTokenIds(f.tokens);
  DecodeState state = decoder->Start();
  for (size_t step = 0;; ++step) {
    std::cout << step << "\t" << Ids(decoder->AllowedTokens(state));
    if (f.state_trace) std::cout << "\t" << state.Signature();
    std::cout << "\n";
    if (step == ids.size()) break;
    state = decoder->Advance(state, ids[step]);
  }
  return 0;
}

int RunDeriveSpec(const Flags &f) {
  std::vector<ApiCall> calls;
  for (const Example &e :
       ExamplesFromJsonLines(ReadInput(f.input), f.input)) {
    ParseResult r = Parse(e.api_call);
    if (!r.ok()) {
      throw DomainError(f.input + ": example " + e.id + ": " +
                        r.error().ToString());
    }
    calls.push_back(std::move(r.call()));
  }
  Emit(SpecToJsonText(DeriveFromCorpus(calls)), f.output);
  return 0;
}

int RunOverhead(const Flags &f) {
  OverheadReport r = MeasureOverhead(LoadSpec(f.spec), LoadVocab(f.vocab),
                                     f.steps, f.seed, OptionsOf(f));
  std::cout << FormatOverheadReport(r);
  return 0;
}

int Main(int argc, char **argv) {
  CLI::App app{"Validate, score and constrain generated API calls."};
  app.require_subcommand(1);
  Flags f;
  std::function<int(const Flags &)> run;

  auto command = [&](const char *name, const char *help,
                     int (*fn)(const Flags &)) {
    CLI::App *sub = app.add_subcommand(name, help);
    sub->callback([&run, fn] { run = fn; });
    return sub;
  };
  auto input = [&](CLI::App *sub, const char *help) {
    sub->add_option("--input,-i", f.input, help)->capture_default_str();
  };
  auto spec = [&](CLI::App *sub) {
    sub->add_option("--spec", f.spec, "API spec JSON")->required();
  };
  auto vocab = [&](CLI::App *sub) {
    sub->add_option("--vocab", f.vocab, "vocabulary file")->required();
  };
  auto decode = [&](CLI::App *sub) {
    spec(sub);
    vocab(sub);
    sub->add_option("--max-depth", f.max_depth, "call nesting limit")
        ->capture_default_str();
    sub->add_option("--max-string-length", f.max_string_length,
                    "string literal length limit")
        ->capture_default_str();
  };
  auto seed = [&](CLI::App *sub) {
    sub->add_option("--seed", f.seed, "random seed")->capture_default_str();
  };
  auto output = [&](CLI::App *sub) {
    sub->add_option("--output,-o", f.output, "output file (default stdout)");
  };
  auto retrieval = [&](CLI::App *sub) {
    sub->add_option("--pool", f.pool, "demonstration examples (JSON lines)")
        ->required();
    sub->add_option("--query", f.query, "test utterance")->required();
    sub->add_option("--query-id", f.query_id,
                    "id of the test utterance in the embeddings file");
    sub->add_option("--k", f.k, "demonstrations to retrieve")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    sub->add_option("--embeddings", f.embeddings,
                    "precomputed embeddings (default: hashing embedder)");
  };

  input(command("parse", "canonicalize one API call per line", RunParse),
        "API calls, one per line");
  input(command("flatten", "print the flattened form of each call", RunFlatten),
        "API calls, one per line");

  CLI::App *check = command("check", "constraint signatures per line", RunCheck);
  spec(check);
  input(check, "predicted API calls, one per line");

  CLI::App *eval = command("eval", "metrics and violation rates", RunEval);
  spec(eval);
  eval->add_option("--gold", f.gold, "gold examples (JSON lines)")->required();
  eval->add_option("--pred", f.pred, "predictions, one per line")->required();

  CLI::App *top = command("convert-top", "TOP trees to API calls", RunConvertTop);
  input(top, "records with top_parse (JSON lines)");
  output(top);

  CLI::App *spis = command("sample-spis", "samples-per-intent-slot pool",
                           RunSampleSpis);
  input(spis, "examples (JSON lines)");
  spis->add_option("--n", f.n, "examples per label")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  seed(spis);
  output(spis);

  retrieval(command("retrieve", "top-k similar demonstrations", RunRetrieve));
  CLI::App *prompt = command("prompt", "assemble an in-context prompt", RunPrompt);
  retrieval(prompt);
  prompt->add_option("--desc-file", f.desc_file, "task description text");

  CLI::App *sim = command("decode-sim", "constrained decoding with a mock sampler",
                          RunDecodeSim);
  decode(sim);
  seed(sim);
  sim->add_option("--runs", f.runs, "emissions")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  sim->add_option("--max-steps", f.max_steps, "token budget per emission")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);

  CLI::App *mask = command("mask", "allowed token ids per step", RunMask);
  decode(mask);
  mask->add_option("--tokens", f.tokens,
                   "token ids to emit, whitespace or comma separated ('-' for "
                   "stdin)");
  mask->add_flag("--state-trace", f.state_trace, "append the decoder state");

  CLI::App *derive = command("derive-spec", "spec from a corpus", RunDeriveSpec);
  input(derive, "examples (JSON lines)");
  output(derive);

  CLI::App *overhead = command("overhead", "mask cost per step", RunOverhead);
  decode(overhead);
  seed(overhead);
  overhead->add_option("--steps", f.steps, "timed steps")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    app.exit(e);
    return 2;
  }

  try {
    return run(f);
  } catch (const FormatError &e) {
    std::cerr << e.what() << "\n";
  } catch (const IoError &e) {
    std::cerr << e.what() << "\n";
  } catch (const DecodeError &e) {
    std::cerr << DecodeErrorKindName(e.kind()) << ": " << e.what() << "\n";
  } catch (const std::exception &e) {
    std::cerr << e.what() << "\n";
  }
  return 1;
}

}  // namespace
}  // namespace apiguard

int main(int argc, char **argv) { return apiguard::Main(argc, argv); }

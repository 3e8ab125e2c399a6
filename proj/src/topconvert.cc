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

#include "apiguard/topconvert.h"

#include <algorithm>
#include <map>
#include <set>

#include "apiguard/file_util.h"
#include "apiguard/rng.h"
#include "json.hpp"

namespace apiguard {

using json = nlohmann::ordered_json;

namespace {

bool IsSpace(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r';
}

class TopParser {
 public:
  explicit TopParser(std::string_view text) : text_(text) {}

  TopNode Run() {
    SkipSpace();
    if (pos_ == text_.size()) {
      throw TopParseError(TopErrorKind::kEmptyInput, 0, "empty input");
    }
    if (text_[pos_] == ']') {
      throw TopParseError(TopErrorKind::kUnbalancedBracket, pos_,
                          "unexpected ']'");
    }
    if (text_[pos_] != '[') {
      throw TopParseError(TopErrorKind::kUnexpectedText, pos_,
                          "parse must start with '['");
    }
    TopNode root = ParseBracket(0);
    SkipSpace();
    if (pos_ < text_.size()) {
      if (text_[pos_] == ']') {
        throw TopParseError(TopErrorKind::kUnbalancedBracket, pos_,
                            "unexpected ']'");
      }
      throw TopParseError(TopErrorKind::kUnexpectedText, pos_,
                          "text after the root bracket");
    }
    return root;
  }

 private:
  void SkipSpace() {
    while (pos_ < text_.size() && IsSpace(text_[pos_])) ++pos_;
  }

  bool AtWordEnd() const {
    char c = text_[pos_];
    return IsSpace(c) || c == '[' || c == ']';
  }

  TopNode ParseBracket(int depth) {
    size_t open = pos_++;
    if (depth >= kMaxParseNesting) {
      throw TopParseError(TopErrorKind::kInvalidNesting, open,
                          "nesting too deep");
    }
    size_t label_start = pos_;
    while (pos_ < text_.size() && !AtWordEnd()) ++pos_;
    std::string_view label = text_.substr(label_start, pos_ - label_start);
    TopNode node;
    if (label.size() > 3 && label.substr(0, 3) == "IN:") {
      node.kind = TopNode::Kind::kIntent;
    } else if (label.size() > 3 && label.substr(0, 3) == "SL:") {
      node.kind = TopNode::Kind::kSlot;
    } else {
      throw TopParseError(TopErrorKind::kBadPrefix, label_start,
                          "label must be IN:<name> or SL:<name>, got '" +
                              std::string(label) + "'");
    }
    node.label = std::string(label.substr(3));
    bool slot_has_intent = false;
    while (true) {
      SkipSpace();
      if (pos_ == text_.size()) {
        throw TopParseError(TopErrorKind::kUnbalancedBracket, open,
                            "unclosed '['");
      }
      char c = text_[pos_];
      if (c == ']') {
        ++pos_;
        return node;
      }
      if (c == '[') {
        size_t child_at = pos_;
        TopNode child = ParseBracket(depth + 1);
        if (child.kind == node.kind) {
          throw TopParseError(TopErrorKind::kInvalidNesting, child_at,
                              node.kind == TopNode::Kind::kIntent
                                  ? "intent directly inside intent"
                                  : "slot directly inside slot");
        }
        if (child.kind == TopNode::Kind::kIntent) {
          if (slot_has_intent) {
            throw TopParseError(TopErrorKind::kMultipleIntentsInSlot, child_at,
                                "slot holds more than one intent");
          }
          slot_has_intent = true;
        }
        node.children.push_back(std::move(child));
        continue;
      }
      size_t start = pos_;
      while (pos_ < text_.size() && !AtWordEnd()) ++pos_;
      node.children.push_back(
          TopNode::Token(std::string(text_.substr(start, pos_ - start))));
    }
  }

  std::string_view text_;
  size_t pos_ = 0;
};

const char *TopErrorKindName(TopErrorKind kind) {
  switch (kind) {
    case TopErrorKind::kEmptyInput:
      return "EmptyInput";
    case TopErrorKind::kUnbalancedBracket:
      return "UnbalancedBracket";
    case TopErrorKind::kBadPrefix:
      return "BadPrefix";
    case TopErrorKind::kMultipleIntentsInSlot:
      return "MultipleIntentsInSlot";
    case TopErrorKind::kInvalidNesting:
      return "InvalidNesting";
    case TopErrorKind::kUnexpectedText:
      return "UnexpectedText";
  }
  return "Unknown";
}

void CollectTokens(const TopNode &node, std::vector<std::string> *out) {
  for (const TopNode &child : node.children) {
    if (child.kind == TopNode::Kind::kToken) {
      out->push_back(child.label);
    } else {
      CollectTokens(child, out);
    }
  }
}

std::string RequireString(const json &record, const char *key,
                          const std::string &origin, int line) {
  auto it = record.find(key);
  if (it == record.end() || !it->is_string()) {
    throw FormatError(origin, line,
                      std::string("missing string field '") + key + "'");
  }
  return it->get<std::string>();
}

template <typename Fn>
std::vector<Example> ReadRecords(std::string_view text,
                                 const std::string &origin, Fn fill_call) {
  std::vector<Example> out;
  std::vector<std::string> lines = SplitLines(text);
  for (size_t i = 0; i < lines.size(); ++i) {
    int line = static_cast<int>(i) + 1;
    if (std::all_of(lines[i].begin(), lines[i].end(), IsSpace)) continue;
    json record;
    try {
      record = json::parse(lines[i]);
    } catch (const json::parse_error &e) {
      throw FormatError(origin, line, e.what());
    }
    if (!record.is_object()) {
      throw FormatError(origin, line, "record must be a JSON object");
    }
    Example ex;
    ex.id = RequireString(record, "id", origin, line);
    ex.domain = RequireString(record, "domain", origin, line);
    ex.utterance = RequireString(record, "utterance", origin, line);
    auto top = record.find("top_parse");
    if (top != record.end() && !top->is_null()) {
      if (!top->is_string()) {
        throw FormatError(origin, line, "top_parse must be a string");
      }
      ex.top_parse = top->get<std::string>();
    }
    fill_call(record, &ex, line);
    out.push_back(std::move(ex));
  }
  return out;
}

std::string Canonicalize(const std::string &text, const std::string &origin,
                         int line) {
  ParseResult parsed = Parse(text);
  if (!parsed.ok()) {
    throw FormatError(origin, line,
                      "api_call does not parse: " + parsed.error().ToString());
  }
  return Serialize(parsed.call());
}

}  // namespace

TopParseError::TopParseError(TopErrorKind kind, size_t offset,
                             const std::string &message)
    : std::runtime_error(std::string(TopErrorKindName(kind)) + " at byte " +
                         std::to_string(offset) + ": " + message),
      kind_(kind),
      offset_(offset) {}

TopNode ParseTop(std::string_view text) { return TopParser(text).Run(); }

ApiCall ToApiCall(const TopNode &tree) {
  if (tree.kind != TopNode::Kind::kIntent) {
    throw ConversionError("root of a parse must be an intent");
  }
  if (!IsIdentifier(tree.label)) {
    throw ConversionError("intent label '" + tree.label +
                          "' is not an identifier");
  }
  ApiCall call;
  call.function = tree.label;
  for (const TopNode &child : tree.children) {
    if (child.kind == TopNode::Kind::kToken) continue;
    if (child.kind != TopNode::Kind::kSlot) {
      throw ConversionError("intent '" + tree.label +
                            "' holds an intent directly");
    }
    if (!IsIdentifier(child.label)) {
      throw ConversionError("slot label '" + child.label +
                            "' is not an identifier");
    }
    const TopNode *intent = nullptr;
    int intents = 0;
    int tokens = 0;
    for (const TopNode &part : child.children) {
      if (part.kind == TopNode::Kind::kIntent) {
        intent = &part;
        ++intents;
      } else if (part.kind == TopNode::Kind::kToken) {
        ++tokens;
      } else {
        throw ConversionError("slot '" + child.label + "' holds a slot");
      }
    }
    if (intents > 1) {
      throw ConversionError("slot '" + child.label +
                            "' holds more than one intent");
    }
    if (intents == 1 && tokens > 0) {
      throw ConversionError("slot '" + child.label +
                            "' mixes an intent with tokens");
    }
    ArgPair arg;
    arg.name = child.label;
    if (intent != nullptr) {
      arg.value = Value::Call(ToApiCall(*intent));
    } else {
      std::vector<std::string> words;
      CollectTokens(child, &words);
      std::string text;
      for (size_t i = 0; i < words.size(); ++i) {
        if (i > 0) text += ' ';
        text += words[i];
      }
      arg.value = Value::String(std::move(text));
    }
    call.args.push_back(std::move(arg));
  }
  return call;
}

std::vector<Example> ExamplesFromJsonLines(std::string_view text,
                                           const std::string &origin) {
  return ReadRecords(text, origin, [&](const json &record, Example *ex,
                                       int line) {
    ex->api_call =
        Canonicalize(RequireString(record, "api_call", origin, line), origin,
                     line);
  });
}

std::vector<Example> TopExamplesFromJsonLines(std::string_view text,
                                              const std::string &origin) {
  return ReadRecords(text, origin, [&](const json &, Example *ex, int line) {
    if (!ex->top_parse) {
      throw FormatError(origin, line, "missing string field 'top_parse'");
    }
    try {
      ex->api_call = Serialize(ToApiCall(ParseTop(*ex->top_parse)));
    } catch (const TopParseError &e) {
      throw FormatError(origin, line, e.what());
    } catch (const ConversionError &e) {
      throw FormatError(origin, line, e.what());
    }
  });
}

std::vector<Example> LoadExamples(const std::string &path) {
  return ExamplesFromJsonLines(ReadFile(path), path);
}

std::vector<Example> LoadTopExamples(const std::string &path) {
  return TopExamplesFromJsonLines(ReadFile(path), path);
}

std::string ExamplesToJsonLines(std::span<const Example> examples) {
  std::string out;
  for (const Example &ex : examples) {
    json record = json::object();
    record["id"] = ex.id;
    record["domain"] = ex.domain;
    record["utterance"] = ex.utterance;
    record["api_call"] = ex.api_call;
    if (ex.top_parse) record["top_parse"] = *ex.top_parse;
    out += record.dump(-1, ' ', false, json::error_handler_t::replace);
    out += '\n';
  }
  return out;
}

void WriteExamples(std::span<const Example> examples, const std::string &path) {
  WriteFile(path, ExamplesToJsonLines(examples));
}

std::vector<std::string> LabelsOf(const ApiCall &call) {
  std::set<std::string> labels;
  for (const FlatCall &flat : Flatten(call)) {
    labels.insert("IN:" + flat.function);
    for (const FlatArg &arg : flat.args) labels.insert("SL:" + arg.name);
  }
  return {labels.begin(), labels.end()};
}

std::vector<Example> SpisSample(std::span<const Example> pool, int n,
                                uint64_t seed) {
  if (n <= 0) throw std::invalid_argument("SPIS n must be positive");
  if (pool.empty()) throw std::invalid_argument("SPIS pool is empty");

  std::vector<std::vector<std::string>> labels;
  labels.reserve(pool.size());
  std::map<std::string, int> available;
  for (const Example &ex : pool) {
    ParseResult parsed = Parse(ex.api_call);
    if (!parsed.ok()) {
      throw std::invalid_argument("example " + ex.id +
                                  " has an unparseable api_call");
    }
    labels.push_back(LabelsOf(parsed.call()));
    for (const std::string &label : labels.back()) ++available[label];
  }

  std::vector<size_t> order(pool.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  Rng rng(seed);
  rng.Shuffle(&order);

  std::map<std::string, int> selected_count;
  std::vector<bool> keep(pool.size(), false);
  for (size_t i : order) {
    bool needed = false;
    for (const std::string &label : labels[i]) {
      if (selected_count[label] < std::min(n, available[label])) {
        needed = true;
        break;
      }
    }
    if (!needed) continue;
    keep[i] = true;
    for (const std::string &label : labels[i]) ++selected_count[label];
  }

  std::vector<Example> out;
  for (size_t i = 0; i < pool.size(); ++i) {
    if (keep[i]) out.push_back(pool[i]);
  }
  return out;
}

}  // namespace apiguard

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

#ifndef APIGUARD_API_EXPR_H_
#define APIGUARD_API_EXPR_H_

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace apiguard {

// API-call expressions of the form
//
//   call  := IDENT '(' [arg (',' arg)*] ')'
//   arg   := IDENT '=' (STRING | call)
//   IDENT := [A-Z_][A-Z0-9_]*
//
// STRING is double-quoted; the only escapes are \" and \\. Whitespace between
// tokens is insignificant. The canonical text form separates every token by a
// single space, e.g.  F ( A = "v" , B = G ( ) ).

struct ApiCall;

// True if `name` matches [A-Z_][A-Z0-9_]*.
bool IsIdentifier(std::string_view name);

// Argument value: either a grounded string literal (stored unescaped) or a
// nested call.
class Value {
 public:
  Value();  // empty string literal
  static Value String(std::string text);
  static Value Call(ApiCall call);

  bool is_string() const { return std::holds_alternative<std::string>(v_); }
  bool is_call() const { return !is_string(); }

  // Requires is_string().
  const std::string &text() const { return std::get<std::string>(v_); }
  // Requires is_call().
  const ApiCall &call() const;

  bool operator==(const Value &other) const;

 private:
  std::variant<std::string, std::shared_ptr<const ApiCall>> v_;
};

struct ArgPair {
  std::string name;
  Value value;

  bool operator==(const ArgPair &other) const = default;
};

struct ApiCall {
  std::string function;
  std::vector<ArgPair> args;  // source order; duplicates allowed

  bool operator==(const ApiCall &other) const = default;
};

enum class ParseErrorKind {
  kUnexpectedToken,
  kUnbalancedParen,
  kUnterminatedString,
  kBadIdentifier,
  kTrailingInput,
  kEmptyInput,
};

const char *ParseErrorKindName(ParseErrorKind kind);

struct ParseError {
  ParseErrorKind kind = ParseErrorKind::kEmptyInput;
  size_t byte_offset = 0;

  bool operator==(const ParseError &other) const = default;
  std::string ToString() const;
};

// Outcome of Parse(). Exactly one of call/error is meaningful.
class ParseResult {
 public:
  ParseResult(ApiCall call) : call_(std::move(call)) {}
  ParseResult(ParseError error) : error_(error) {}

  bool ok() const { return call_.has_value(); }
  const ApiCall &call() const { return *call_; }
  ApiCall &call() { return *call_; }
  const ParseError &error() const { return error_; }

 private:
  std::optional<ApiCall> call_;
  ParseError error_;
};

// Calls nested deeper than this are rejected with kUnexpectedToken at the
// offending function name.
inline constexpr int kMaxParseNesting = 256;

ParseResult Parse(std::string_view text);

// Canonical single-line form. Parse(Serialize(c)) == c.
std::string Serialize(const ApiCall &call);

// Quotes and escapes a string literal.
std::string QuoteString(std::string_view text);

// Flattened list representation: one entry per function node in pre-order.
struct FlatValue {
  // Exactly one of the two is meaningful; child_index < 0 means grounded.
  std::string text;
  int child_index = -1;

  bool grounded() const { return child_index < 0; }
  static FlatValue Grounded(std::string text) { return {std::move(text), -1}; }
  static FlatValue ChildRef(int index) { return {std::string(), index}; }

  bool operator==(const FlatValue &other) const = default;
};

struct FlatArg {
  std::string name;
  FlatValue value;

  bool operator==(const FlatArg &other) const = default;
};

struct FlatCall {
  int index = 0;
  std::string function;
  std::vector<FlatArg> args;

  bool operator==(const FlatCall &other) const = default;
};

std::vector<FlatCall> Flatten(const ApiCall &call);

// Number of function nodes in the tree.
int CountCalls(const ApiCall &call);

// Depth of the tree; a call without nested values has depth 1.
int CallDepth(const ApiCall &call);

}  // namespace apiguard

#endif  // APIGUARD_API_EXPR_H_

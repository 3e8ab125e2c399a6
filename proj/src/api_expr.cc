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

#include "apiguard/api_expr.h"

#include <algorithm>

namespace apiguard {

namespace {

bool IsIdentStart(char c) { return (c >= 'A' && c <= 'Z') || c == '_'; }
bool IsIdentChar(char c) { return IsIdentStart(c) || (c >= '0' && c <= '9'); }
bool IsWordChar(char c) {
  return IsIdentChar(c) || (c >= 'a' && c <= 'z');
}
bool IsSpace(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
         c == '\v';
}

enum class TokenType {
  kIdent,
  kBadIdent,
  kLParen,
  kRParen,
  kComma,
  kEquals,
  kString,
  kEnd,
  kBadChar,
  kUnterminatedString,
  kBadEscape,
};

struct Token {
  TokenType type;
  size_t offset;
  std::string text;  // identifier or unescaped string contents
};

// Lexes the whole input up front. Lexing stops at the first malformed token,
// which is kept as the final element so the parser reports it only if it
// gets that far.
std::vector<Token> Lex(std::string_view in) {
  std::vector<Token> tokens;
  size_t i = 0;
  while (true) {
    while (i < in.size() && IsSpace(in[i])) ++i;
    if (i == in.size()) {
      tokens.push_back({TokenType::kEnd, i, {}});
      return tokens;
    }
    char c = in[i];
    size_t start = i;
    switch (c) {
      case '(':
        tokens.push_back({TokenType::kLParen, i++, {}});
        continue;
      case ')':
        tokens.push_back({TokenType::kRParen, i++, {}});
        continue;
      case ',':
        tokens.push_back({TokenType::kComma, i++, {}});
        continue;
      case '=':
        tokens.push_back({TokenType::kEquals, i++, {}});
        continue;
      default:
        break;
    }
    if (c == '"') {
      std::string text;
      ++i;
      while (true) {
        if (i == in.size()) {
          tokens.push_back({TokenType::kUnterminatedString, start, {}});
          return tokens;
        }
        char s = in[i];
        if (s == '"') {
          ++i;
          break;
        }
        if (s == '\\') {
          if (i + 1 == in.size()) {
            tokens.push_back({TokenType::kUnterminatedString, start, {}});
            return tokens;
          }
          char e = in[i + 1];
          if (e != '"' && e != '\\') {
            tokens.push_back({TokenType::kBadEscape, i, {}});
            return tokens;
          }
          text.push_back(e);
          i += 2;
          continue;
        }
        text.push_back(s);
        ++i;
      }
      tokens.push_back({TokenType::kString, start, std::move(text)});
      continue;
    }
    if (IsWordChar(c)) {
      while (i < in.size() && IsWordChar(in[i])) ++i;
      std::string word(in.substr(start, i - start));
      TokenType type =
          IsIdentifier(word) ? TokenType::kIdent : TokenType::kBadIdent;
      tokens.push_back({type, start, std::move(word)});
      continue;
    }
    tokens.push_back({TokenType::kBadChar, start, {}});
    return tokens;
  }
}

class Parser {
 public:
  Parser(std::vector<Token> tokens, size_t input_size)
      : tokens_(std::move(tokens)), input_size_(input_size) {}

  ParseResult Run() {
    if (tokens_.front().type == TokenType::kEnd) {
      return ParseError{ParseErrorKind::kEmptyInput, 0};
    }
    ApiCall call;
    if (!ParseCall(&call, 1)) return *error_;
    const Token &next = Peek();
    if (next.type != TokenType::kEnd) {
      return ParseError{ParseErrorKind::kTrailingInput, next.offset};
    }
    return call;
  }

 private:
  const Token &Peek() const { return tokens_[pos_]; }
  void Advance() {
    if (tokens_[pos_].type != TokenType::kEnd) ++pos_;
  }

  // Records the error for the current token given what the grammar wanted.
  bool Fail(bool want_identifier) {
    const Token &t = Peek();
    ParseErrorKind kind = ParseErrorKind::kUnexpectedToken;
    size_t offset = t.offset;
    switch (t.type) {
      case TokenType::kEnd:
        kind = open_parens_ > 0 ? ParseErrorKind::kUnbalancedParen
                                : ParseErrorKind::kUnexpectedToken;
        offset = input_size_;
        break;
      case TokenType::kUnterminatedString:
        kind = ParseErrorKind::kUnterminatedString;
        break;
      case TokenType::kBadIdent:
        if (want_identifier) kind = ParseErrorKind::kBadIdentifier;
        break;
      default:
        break;
    }
    error_ = ParseError{kind, offset};
    return false;
  }

  bool Expect(TokenType type) {
    if (Peek().type != type) return Fail(false);
    Advance();
    return true;
  }

  bool ParseCall(ApiCall *call, int depth) {
    const Token &name = Peek();
    if (name.type != TokenType::kIdent) return Fail(true);
    if (depth > kMaxParseNesting) {
      error_ = ParseError{ParseErrorKind::kUnexpectedToken, name.offset};
      return false;
    }
    call->function = name.text;
    Advance();
    if (!Expect(TokenType::kLParen)) return false;
    ++open_parens_;
    if (Peek().type == TokenType::kRParen) {
      Advance();
      --open_parens_;
      return true;
    }
    while (true) {
      const Token &arg = Peek();
      if (arg.type != TokenType::kIdent) return Fail(true);
      ArgPair pair;
      pair.name = arg.text;
      Advance();
      if (!Expect(TokenType::kEquals)) return false;
      const Token &value = Peek();
      if (value.type == TokenType::kString) {
        pair.value = Value::String(value.text);
        Advance();
      } else if (value.type == TokenType::kIdent) {
        ApiCall nested;
        if (!ParseCall(&nested, depth + 1)) return false;
        pair.value = Value::Call(std::move(nested));
      } else {
        return Fail(true);
      }
      call->args.push_back(std::move(pair));
      if (Peek().type == TokenType::kComma) {
        Advance();
        continue;
      }
      if (!Expect(TokenType::kRParen)) return false;
      --open_parens_;
      return true;
    }
  }

  std::vector<Token> tokens_;
  size_t input_size_;
  size_t pos_ = 0;
  int open_parens_ = 0;
  std::optional<ParseError> error_;
};

void SerializeTo(const ApiCall &call, std::string *out) {
  out->append(call.function);
  out->append(" (");
  bool first = true;
  for (const ArgPair &arg : call.args) {
    out->append(first ? " " : " , ");
    first = false;
    out->append(arg.name);
    out->append(" = ");
    if (arg.value.is_string()) {
      out->append(QuoteString(arg.value.text()));
    } else {
      SerializeTo(arg.value.call(), out);
    }
  }
  out->append(" )");
}

int FlattenInto(const ApiCall &call, std::vector<FlatCall> *out) {
  int index = static_cast<int>(out->size());
  out->push_back({index, call.function, {}});
  std::vector<FlatArg> args;
  args.reserve(call.args.size());
  for (const ArgPair &arg : call.args) {
    if (arg.value.is_string()) {
      args.push_back({arg.name, FlatValue::Grounded(arg.value.text())});
    } else {
      int child = FlattenInto(arg.value.call(), out);
      args.push_back({arg.name, FlatValue::ChildRef(child)});
    }
  }
  (*out)[index].args = std::move(args);
  return index;
}

}  // namespace

bool IsIdentifier(std::string_view name) {
  if (name.empty() || !IsIdentStart(name[0])) return false;
  return std::all_of(name.begin(), name.end(), IsIdentChar);
}

Value::Value() : v_(std::string()) {}

Value Value::String(std::string text) {
  Value v;
  v.v_ = std::move(text);
  return v;
}

Value Value::Call(ApiCall call) {
  Value v;
  v.v_ = std::make_shared<const ApiCall>(std::move(call));
  return v;
}

const ApiCall &Value::call() const {
  return *std::get<std::shared_ptr<const ApiCall>>(v_);
}

bool Value::operator==(const Value &other) const {
  if (is_string() != other.is_string()) return false;
  if (is_string()) return text() == other.text();
  return call() == other.call();
}

const char *ParseErrorKindName(ParseErrorKind kind) {
  switch (kind) {
    case ParseErrorKind::kUnexpectedToken:
      return "UnexpectedToken";
    case ParseErrorKind::kUnbalancedParen:
      return "UnbalancedParen";
    case ParseErrorKind::kUnterminatedString:
      return "UnterminatedString";
    case ParseErrorKind::kBadIdentifier:
      return "BadIdentifier";
    case ParseErrorKind::kTrailingInput:
      return "TrailingInput";
    case ParseErrorKind::kEmptyInput:
      return "EmptyInput";
  }
  return "Unknown";
}

std::string ParseError::ToString() const {
  return std::string(ParseErrorKindName(kind)) + " at byte " +
         std::to_string(byte_offset);
}

ParseResult Parse(std::string_view text) {
  Parser parser(Lex(text), text.size());
  return parser.Run();
}

std::string QuoteString(std::string_view text) {
  std::string out;
  out.reserve(text.size() + 2);
  out.push_back('"');
  for (char c : text) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

std::string Serialize(const ApiCall &call) {
  std::string out;
  SerializeTo(call, &out);
  return out;
}

std::vector<FlatCall> Flatten(const ApiCall &call) {
  std::vector<FlatCall> out;
  FlattenInto(call, &out);
  return out;
}

int CountCalls(const ApiCall &call) {
  int n = 1;
  for (const ArgPair &arg : call.args) {
    if (arg.value.is_call()) n += CountCalls(arg.value.call());
  }
  return n;
}

int CallDepth(const ApiCall &call) {
  int deepest = 0;
  for (const ArgPair &arg : call.args) {
    if (arg.value.is_call()) {
      deepest = std::max(deepest, CallDepth(arg.value.call()));
    }
  }
  return deepest + 1;
}

}  // namespace apiguard

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

#include "apiguard/vocab.h"

#include <algorithm>
#include <charconv>
#include <map>
#include <stdexcept>

#include "apiguard/file_util.h"

namespace apiguard {

namespace {

int HexDigit(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

bool ParseInt(std::string_view s, int *out) {
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), *out);
  return ec == std::errc() && p == s.data() + s.size();
}

}  // namespace

Vocab::Vocab(std::vector<VocabToken> tokens, int eos_id)
    : tokens_(std::move(tokens)), eos_id_(eos_id) {
  for (size_t i = 0; i < tokens_.size(); ++i) {
    if (!index_.emplace(tokens_[i].id, i).second) {
      throw std::invalid_argument("duplicate token id " +
                                  std::to_string(tokens_[i].id));
    }
  }
}

const std::string &Vocab::Text(int id) const {
  auto it = index_.find(id);
  if (it == index_.end()) {
    throw std::out_of_range("unknown token id " + std::to_string(id));
  }
  return tokens_[it->second].text;
}

std::string EscapeTokenText(std::string_view text) {
  static const char kHex[] = "0123456789abcdef";
  std::string out;
  for (unsigned char c : text) {
    switch (c) {
      case '\\':
        out += "\\\\";
        break;
      case '\t':
        out += "\\t";
        break;
      case '\n':
        out += "\\n";
        break;
      case '\r':
        out += "\\r";
        break;
      default:
        if (c < 0x20 || c == 0x7f) {
          out += "\\x";
          out += kHex[c >> 4];
          out += kHex[c & 15];
        } else {
          out += static_cast<char>(c);
        }
    }
  }
  return out;
}

std::string UnescapeTokenText(std::string_view text) {
  std::string out;
  for (size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (c != '\\') {
      out += c;
      continue;
    }
    if (i + 1 == text.size()) throw std::invalid_argument("dangling '\\'");
    char e = text[++i];
    switch (e) {
      case '\\':
        out += '\\';
        break;
      case 't':
        out += '\t';
        break;
      case 'n':
        out += '\n';
        break;
      case 'r':
        out += '\r';
        break;
      case 'x': {
        if (i + 2 >= text.size()) {
          throw std::invalid_argument("truncated \\x escape");
        }
        int hi = HexDigit(text[i + 1]);
        int lo = HexDigit(text[i + 2]);
        if (hi < 0 || lo < 0) throw std::invalid_argument("bad \\x escape");
        out += static_cast<char>(hi * 16 + lo);
        i += 2;
        break;
      }
      default:
        throw std::invalid_argument(std::string("unknown escape '\\") + e +
                                    "'");
    }
  }
  return out;
}

Vocab VocabFromText(std::string_view text, const std::string &origin) {
  std::vector<std::string> lines = SplitLines(text);
  if (lines.empty()) throw FormatError(origin, 1, "missing eos_id header");
  const std::string &header = lines[0];
  constexpr std::string_view kHeader = "eos_id\t";
  int eos = 0;
  if (header.compare(0, kHeader.size(), kHeader) != 0 ||
      !ParseInt(std::string_view(header).substr(kHeader.size()), &eos)) {
    throw FormatError(origin, 1, "expected 'eos_id<TAB><id>' header");
  }
  std::vector<VocabToken> tokens;
  for (size_t i = 1; i < lines.size(); ++i) {
    int line = static_cast<int>(i) + 1;
    std::string_view l = lines[i];
    if (l.empty()) continue;
    size_t tab = l.find('\t');
    int id = 0;
    if (tab == std::string_view::npos || !ParseInt(l.substr(0, tab), &id)) {
      throw FormatError(origin, line, "expected '<id><TAB><text>'");
    }
    try {
      tokens.push_back({id, UnescapeTokenText(l.substr(tab + 1))});
    } catch (const std::invalid_argument &e) {
      throw FormatError(origin, line, e.what());
    }
  }
  try {
    return Vocab(std::move(tokens), eos);
  } catch (const std::invalid_argument &e) {
    throw FormatError(origin, 0, e.what());
  }
}

std::string VocabToText(const Vocab &vocab) {
  std::string out = "eos_id\t" + std::to_string(vocab.eos_id()) + "\n";
  for (const VocabToken &t : vocab.tokens()) {
    out += std::to_string(t.id);
    out += '\t';
    out += EscapeTokenText(t.text);
    out += '\n';
  }
  return out;
}

Vocab LoadVocab(const std::string &path) {
  return VocabFromText(ReadFile(path), path);
}

void SaveVocab(const Vocab &vocab, const std::string &path) {
  WriteFile(path, VocabToText(vocab));
}

TokenTrie::TokenTrie(const Vocab &vocab) {
  // Build with ordered child maps, then flatten.
  struct Building {
    std::map<unsigned char, int> children;
    std::vector<int> token_ids;
  };
  std::vector<Building> tmp(1);
  for (const VocabToken &t : vocab.tokens()) {
    if (t.id == vocab.eos_id() || t.text.empty()) continue;
    int node = 0;
    for (unsigned char c : t.text) {
      auto it = tmp[node].children.find(c);
      if (it == tmp[node].children.end()) {
        tmp.push_back({});
        it = tmp[node].children.emplace(c, static_cast<int>(tmp.size()) - 1)
                 .first;
      }
      node = it->second;
    }
    tmp[node].token_ids.push_back(t.id);
  }
  nodes_.resize(tmp.size());
  for (size_t i = 0; i < tmp.size(); ++i) {
    nodes_[i].edge_begin = static_cast<uint32_t>(edges_.size());
    for (const auto &[byte, child] : tmp[i].children) {
      edges_.push_back({byte, child});
    }
    nodes_[i].edge_end = static_cast<uint32_t>(edges_.size());
    nodes_[i].token_ids = std::move(tmp[i].token_ids);
    std::sort(nodes_[i].token_ids.begin(), nodes_[i].token_ids.end());
  }
}

int TokenTrie::Child(int node, unsigned char byte) const {
  const Edge *b = edges_begin(node);
  const Edge *e = edges_end(node);
  const Edge *it = std::lower_bound(
      b, e, byte, [](const Edge &edge, unsigned char x) { return edge.byte < x; });
  return it != e && it->byte == byte ? it->child : -1;
}

}  // namespace apiguard

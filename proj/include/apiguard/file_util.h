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

#ifndef APIGUARD_FILE_UTIL_H_
#define APIGUARD_FILE_UTIL_H_

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace apiguard {

// Error reading one of the line- or document-oriented input files. `line` is
// 1-based, 0 when not applicable.
class FormatError : public std::runtime_error {
 public:
  FormatError(const std::string &path, int line, const std::string &message);

  const std::string &path() const { return path_; }
  int line() const { return line_; }

 private:
  std::string path_;
  int line_;
};

// Thrown when a file cannot be opened, read or written.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string ReadFile(const std::string &path);
void WriteFile(const std::string &path, std::string_view contents);

// Splits on '\n'; a trailing newline does not produce an empty last line and
// a trailing '\r' is stripped from every line.
std::vector<std::string> SplitLines(std::string_view text);

}  // namespace apiguard

#endif  // APIGUARD_FILE_UTIL_H_

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

#ifndef APIGUARD_CONSTRAINTS_H_
#define APIGUARD_CONSTRAINTS_H_

#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "apiguard/api_expr.h"
#include "apiguard/api_spec.h"

namespace apiguard {

// Hard 0/1 outcome of the four constraint categories for one generated call.
// 1 means satisfied. An unparseable call has every bit set to 0.
struct ConstraintSignature {
  int structural = 0;   // C_s: parses into a valid tree
  int function = 0;     // C_f: every function is in V_f
  int argument = 0;     // C_a: every argument name is in V_a
  int association = 0;  // C_fa: every (function, argument) pair is in V_fa

  bool all_satisfied() const {
    return structural && function && argument && association;
  }
  bool operator==(const ConstraintSignature &other) const = default;

  // "C_s C_f C_a C_fa", e.g. "1 0 1 0".
  std::string ToString() const;
};

struct ViolationReport {
  ConstraintSignature signature;
  // Offenders in order of first occurrence in the flattened call, without
  // repeats.
  std::vector<std::string> offending_functions;
  std::vector<std::string> offending_arguments;
  std::vector<std::pair<std::string, std::string>> offending_pairs;
};

ViolationReport Check(std::string_view text, const ApiSpec &spec);
ViolationReport Check(const ApiCall &call, const ApiSpec &spec);

// Fraction of reports violating each category.
struct ViolationRates {
  double structural = 0;
  double function = 0;
  double argument = 0;
  double association = 0;
};

// Throws std::invalid_argument on an empty batch.
ViolationRates ComputeViolationRates(std::span<const ViolationReport> reports);

// Grounded values of `call` that do not occur verbatim in `utterance`. Purely
// informational; does not feed any of the four bits.
std::vector<std::string> UngroundedValues(const ApiCall &call,
                                          std::string_view utterance);

// One CLI line: the four bits followed by offenders, for example
//   1 0 1 0 functions=SHOW_ALARMS pairs=SHOW_ALARMS.DATE_TIME
std::string FormatReportLine(const ViolationReport &report);

// Summary block with the four rates as percentages, two decimals.
std::string FormatRateSummary(const ViolationRates &rates, size_t count);

}  // namespace apiguard

#endif  // APIGUARD_CONSTRAINTS_H_

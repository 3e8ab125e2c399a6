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

#include "apiguard/constraints.h"

#include <algorithm>
#include <cstdio>
#include <stdexcept>

namespace apiguard {

namespace {

template <typename T>
void AppendUnique(std::vector<T> *list, const T &item) {
  if (std::find(list->begin(), list->end(), item) == list->end()) {
    list->push_back(item);
  }
}

void CollectValues(const ApiCall &call, std::vector<std::string> *out) {
  for (const ArgPair &arg : call.args) {
    if (arg.value.is_string()) {
      out->push_back(arg.value.text());
    } else {
      CollectValues(arg.value.call(), out);
    }
  }
}

std::string Percent(double rate) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f%%", rate * 100.0);
  return buf;
}

}  // namespace

std::string ConstraintSignature::ToString() const {
  return std::to_string(structural) + " " + std::to_string(function) + " " +
         std::to_string(argument) + " " + std::to_string(association);
}

ViolationReport Check(const ApiCall &call, const ApiSpec &spec) {
  ViolationReport report;
  for (const FlatCall &flat : Flatten(call)) {
    if (!spec.HasFunction(flat.function)) {
      AppendUnique(&report.offending_functions, flat.function);
    }
    for (const FlatArg &arg : flat.args) {
      if (!spec.HasArgument(arg.name)) {
        AppendUnique(&report.offending_arguments, arg.name);
      }
      if (!spec.HasAssociation(flat.function, arg.name)) {
        AppendUnique(&report.offending_pairs,
                     std::make_pair(flat.function, arg.name));
      }
    }
  }
  report.signature.structural = 1;
  report.signature.function = report.offending_functions.empty();
  report.signature.argument = report.offending_arguments.empty();
  report.signature.association = report.offending_pairs.empty();
  return report;
}

ViolationReport Check(std::string_view text, const ApiSpec &spec) {
  ParseResult parsed = Parse(text);
  if (!parsed.ok()) return ViolationReport{};
  return Check(parsed.call(), spec);
}

ViolationRates ComputeViolationRates(std::span<const ViolationReport> reports) {
  if (reports.empty()) {
    throw std::invalid_argument("violation rates need at least one report");
  }
  size_t s = 0, f = 0, a = 0, fa = 0;
  for (const ViolationReport &r : reports) {
    s += r.signature.structural == 0;
    f += r.signature.function == 0;
    a += r.signature.argument == 0;
    fa += r.signature.association == 0;
  }
  double n = static_cast<double>(reports.size());
  return {s / n, f / n, a / n, fa / n};
}

std::vector<std::string> UngroundedValues(const ApiCall &call,
                                          std::string_view utterance) {
  std::vector<std::string> values;
  CollectValues(call, &values);
  std::vector<std::string> missing;
  for (const std::string &v : values) {
    if (utterance.find(v) == std::string_view::npos) missing.push_back(v);
  }
  return missing;
}

std::string FormatReportLine(const ViolationReport &report) {
  std::string line = report.signature.ToString();
  if (!report.signature.structural) {
    line += " syntax";
    return line;
  }
  auto join = [&line](const char *label, const std::vector<std::string> &xs) {
    if (xs.empty()) return;
    line += ' ';
    line += label;
    line += '=';
    for (size_t i = 0; i < xs.size(); ++i) {
      if (i > 0) line += ',';
      line += xs[i];
    }
  };
  join("functions", report.offending_functions);
  join("arguments", report.offending_arguments);
  std::vector<std::string> pairs;
  for (const auto &[f, a] : report.offending_pairs) pairs.push_back(f + "." + a);
  join("pairs", pairs);
  return line;
}

std::string FormatRateSummary(const ViolationRates &rates, size_t count) {
  std::string out = "# examples " + std::to_string(count) + "\n";
  out += "# C_s  violation " + Percent(rates.structural) + "\n";
  out += "# C_f  violation " + Percent(rates.function) + "\n";
  out += "# C_a  violation " + Percent(rates.argument) + "\n";
  out += "# C_fa violation " + Percent(rates.association) + "\n";
  return out;
}

}  // namespace apiguard

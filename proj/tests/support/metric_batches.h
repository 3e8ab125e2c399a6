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


// Small evaluation batches with TP/FP/FN counted by hand.

#ifndef APIGUARD_TESTS_SUPPORT_METRIC_BATCHES_H_
#define APIGUARD_TESTS_SUPPORT_METRIC_BATCHES_H_

#include <string>
#include <vector>

#include "apiguard/sp_metrics.h"

namespace apiguard::testing {

struct HandCountedBatch {
  std::string name;
  std::vector<EvalPair> pairs;
  double exact_match;
  MatchCounts intents;
  MatchCounts slots;
  double intent_f1;
  double slot_f1;
};

inline std::vector<HandCountedBatch> HandCountedBatches() {
  const std::string directions =
      "GET_DIRECTIONS ( DESTINATION = GET_LOCATION ( CATEGORY_LOCATION = "
      "\"auditorium\" ) , PATH = \"1st ave\" )";
  return {
      {"identical",
       {{"GET_ALARMS ( DATE_TIME = \"tomorrow\" )",
         "GET_ALARMS ( DATE_TIME = \"tomorrow\" )", "alarms for tomorrow"}},
       1.0, {1, 0, 0}, {1, 0, 0}, 1.0, 1.0},
      {"right function, no slots",
       {{"CREATE_ALARM ( DATE_TIME = \"7am\" , NAME = \"gym\" )",
         "CREATE_ALARM ( )", "gym alarm at 7am"}},
       0.0, {1, 0, 0}, {0, 0, 2}, 1.0, 0.0},
      {"swapped slot names",
       {{"F ( A = \"x\" , B = \"y\" )", "F ( B = \"x\" , A = \"y\" )", ""},
        {"G ( C = \"z\" )", "G(C=\"z\")", ""}},
       0.5, {2, 0, 0}, {1, 2, 2}, 1.0, 1.0 / 3.0},
      {"nested and unparseable",
       {{directions,
         "GET_DIRECTIONS ( DESTINATION = GET_LOCATION ( CATEGORY_LOCATION = "
         "\"auditorium\" ) , PATH = \"2nd ave\" )",
         ""},
        {"GET_WEATHER ( LOCATION = \"Paris\" )", "GET_WEATHER ( LOCATION = ",
         ""}},
       0.0, {2, 0, 1}, {2, 1, 2}, 0.8, 4.0 / 7.0},
      {"multisets and wrong children",
       {{"F ( A = \"1\" , A = \"1\" )", "F ( A = \"1\" )", ""},
        {"F ( )", "H ( A = \"1\" )", ""},
        {"K ( B = G ( ) )", "K ( B = H ( ) )", ""}},
       0.0, {2, 2, 2}, {1, 2, 2}, 0.5, 1.0 / 3.0},
  };
}

}  // namespace apiguard::testing

#endif  // APIGUARD_TESTS_SUPPORT_METRIC_BATCHES_H_

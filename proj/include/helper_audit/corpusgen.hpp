// Copyright 2026 The helper-audit Authors
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


// Synthetic corpora with injected helper/service inconsistencies, and the
// hand-named pattern fixtures.

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "helper_audit/inconsistency.hpp"
#include "helper_audit/ir.hpp"

namespace helper_audit {

struct GroundTruthLabel {
  std::string ipcSignature;
  std::string helper;
  VulnClass vulnClass = VulnClass::IllegalParameter;

  friend auto operator<=>(const GroundTruthLabel&, const GroundTruthLabel&) = default;
  friend bool operator==(const GroundTruthLabel&, const GroundTruthLabel&) = default;
};

struct GroundTruth {
  std::vector<GroundTruthLabel> labels;      // sorted
  std::vector<GroundTruthLabel> suppressed;  // subset of labels, sorted
};

struct GenSpec {
  std::uint64_t seed = 1;
  std::map<VulnClass, int> perClassCounts;
  int consistentPairs = 0;
  int noiseClasses = 0;
  double permissionMix = 0.0;  // share of vulnerable pairs behind signature permissions
};

// {"seed", "perClassCounts": {"<class>"|"each": n}, "consistentPairs",
//  "noiseClasses", "permissionMix"}; throws InvalidSpec.
GenSpec parse_gen_spec(std::string_view text);
void check_gen_spec(const GenSpec& spec);  // throws InvalidSpec

struct GenResult {
  CorpusDocument corpus;
  GroundTruth truth;
  std::string permissionsJson;
  std::string restrictionsJson;
  // Pairs the corpus yields. Each envBypass instance adds the pair of its
  // gating IPC method, which never carries a label.
  std::size_t expectedPairs = 0;
};

GenResult generate(const GenSpec& spec);

std::string ground_truth_json(const GroundTruth& truth);

struct FixturePattern {
  std::string name;
  std::string document;  // corpus JSON
  std::optional<GroundTruthLabel> expected;
};

// The five canonical patterns followed by their five consistent twins.
std::vector<FixturePattern> fixture_patterns();

}  // namespace helper_audit

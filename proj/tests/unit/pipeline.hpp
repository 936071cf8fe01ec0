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


#pragma once

#include <algorithm>
#include <memory>
#include <stdexcept>
#include <string>

#include "helper_audit/analysis.hpp"
#include "helper_audit/corpus_io.hpp"
#include "helper_audit/corpusgen.hpp"
#include "helper_audit/detectors.hpp"
#include "json.hpp"

namespace test_support {

inline nlohmann::json fixture_json(const std::string& name) {
  for (const auto& f : helper_audit::fixture_patterns()) {
    if (f.name == name) return nlohmann::json::parse(f.document);
  }
  throw std::runtime_error("no fixture " + name);
}

inline nlohmann::json& class_named(nlohmann::json& doc, const std::string& name) {
  for (auto& c : doc["classes"]) {
    if (c["name"] == name) return c;
  }
  throw std::runtime_error("no class " + name);
}

inline nlohmann::json& method_named(nlohmann::json& doc, const std::string& cls, const std::string& name) {
  for (auto& m : class_named(doc, cls)["methods"]) {
    if (m["name"] == name) return m;
  }
  throw std::runtime_error("no method " + name);
}

// Pairing plus a detector context over one corpus, with no mined names.
struct Pipeline {
  helper_audit::Corpus corpus;
  helper_audit::SeedList seeds = helper_audit::SeedList::defaults();
  helper_audit::PairingStage stage;
  std::unique_ptr<helper_audit::DetectorContext> ctx;

  explicit Pipeline(const nlohmann::json& doc) : corpus(helper_audit::parse_corpus(doc.dump())) {
    helper_audit::AnalysisInputs inputs;
    stage = helper_audit::run_pairing(corpus, inputs, {});
    ctx.reset(new helper_audit::DetectorContext{corpus, stage.registry, seeds, {}, stage.table});
  }

  const helper_audit::MethodPair& pair(const std::string& ipcSignature) const {
    for (const auto& p : stage.pairing.pairs) {
      if (p.ipcSignature == ipcSignature) return p;
    }
    throw std::runtime_error("no pair for " + ipcSignature);
  }

  helper_audit::EnforcementSet helper(const std::string& ipcSignature) const {
    return helper_audit::detect_helper_enforcements(*ctx, pair(ipcSignature));
  }
  helper_audit::EnforcementSet service(const std::string& ipcSignature) const {
    return helper_audit::detect_service_enforcements(*ctx, pair(ipcSignature).service);
  }
};

// Unsuppressed and suppressed findings of a report, as ground-truth labels.
struct LabelSets {
  std::vector<helper_audit::GroundTruthLabel> labels;
  std::vector<helper_audit::GroundTruthLabel> suppressed;
};

inline LabelSets label_sets(const helper_audit::AnalysisReport& report) {
  LabelSets out;
  for (const auto& f : report.findings) {
    helper_audit::GroundTruthLabel l{f.pair.ipcSignature, f.pair.helper, f.vulnClass};
    out.labels.push_back(l);
    if (f.suppressed) out.suppressed.push_back(l);
  }
  std::sort(out.labels.begin(), out.labels.end());
  std::sort(out.suppressed.begin(), out.suppressed.end());
  return out;
}

}  // namespace test_support

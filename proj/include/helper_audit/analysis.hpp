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


// End-to-end pipeline: pairing, graphs, mining, detectors, comparison,
// filtering and tallies.

#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "helper_audit/callgraph.hpp"
#include "helper_audit/detectors.hpp"
#include "helper_audit/inconsistency.hpp"
#include "helper_audit/ir.hpp"
#include "helper_audit/mining.hpp"
#include "helper_audit/seeds.hpp"
#include "helper_audit/service_model.hpp"

namespace helper_audit {

struct AnalysisOptions {
  std::size_t minSupport = 3;
  std::size_t seedBoost = 1000;
  std::size_t maxDepth = 12;
  std::size_t chainLimit = 256;
  std::size_t parallel = 1;
  bool strengthen = true;
};

struct AnalysisInputs {
  SeedList seeds = SeedList::defaults();
  PermissionMap permissions;
  RestrictionList restrictions;
  std::vector<CallbackEntry> callbacks;  // in addition to the corpus ones
};

struct PairingStage {
  CallbackTable table;
  ServiceRegistry registry;
  std::set<std::string> helpers;
  PairingResult pairing;
};

PairingStage run_pairing(const Corpus& corpus, const AnalysisInputs& inputs, const AnalysisOptions& options);

struct MiningResult {
  std::vector<Transaction> transactions;
  std::vector<FrequentItemset> itemsets;
  MinedVocabulary vocabulary;
};

// Transactions are the helper chains of every pair plus one pseudo-chain per
// paired service method.
MiningResult run_mining(const Corpus& corpus, const PairingStage& stage, const AnalysisInputs& inputs,
                        const AnalysisOptions& options);

struct AnalysisReport {
  std::string corpusDigest;
  std::vector<MethodPair> pairs;
  std::vector<std::string> directOnly;
  MinedVocabulary vocabulary;
  std::vector<Finding> findings;  // suppressed ones included
  RestrictionTally tallies;

  std::size_t unsuppressed() const;
  std::size_t suppressed() const;
};

// Throws the module errors; InvalidConfig for out-of-range options.
AnalysisReport analyze(const Corpus& corpus, const AnalysisInputs& inputs, const AnalysisOptions& options = {});

// Runs fn(0..n-1) on up to `threads` workers; rethrows the first exception.
void parallel_for(std::size_t n, std::size_t threads, const std::function<void(std::size_t)>& fn);

}  // namespace helper_audit

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

// Seeded frequent-itemset mining over call-chain method names.

#pragma once

#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "helper_audit/callgraph.hpp"
#include "helper_audit/ir.hpp"
#include "helper_audit/seeds.hpp"

namespace helper_audit {

struct Transaction {
  std::string ipcSignature;
  std::set<std::string> items;

  friend bool operator==(const Transaction&, const Transaction&) = default;
};

struct SignedChain {
  std::string ipcSignature;
  CallChain chain;
};

// One transaction per chain: simple names of the chain methods and of every
// invoke target inside them.
std::vector<Transaction> build_transactions(const Corpus& corpus, const std::vector<SignedChain>& chains);

struct FrequentItemset {
  std::vector<std::string> items;  // sorted
  std::size_t support = 0;         // true count

  friend bool operator==(const FrequentItemset&, const FrequentItemset&) = default;
  friend auto operator<=>(const FrequentItemset&, const FrequentItemset&) = default;
};

struct MiningOptions {
  std::size_t minSupport = 3;
  std::size_t seedBoost = 1000;
  std::size_t maxItemsetSize = 4;
};

// FP-Growth. An itemset is reported when every non-seed item is frequent on
// its own and the itemset either contains a seed or is itself frequent. Seed
// items are ordered as if their count were max(actual, seedBoost).
// Output is sorted by support descending, then items. Throws InvalidConfig
// when minSupport < 1 or seedBoost < minSupport.
std::vector<FrequentItemset> fp_growth(const std::vector<Transaction>& transactions,
                                       const std::set<std::string>& seeds,
                                       const MiningOptions& options = {});

struct SeedVocabulary {
  std::set<std::string> identityAccess;
  std::set<std::string> identityEnforce;
  std::set<std::string> binderSources;  // simple names
  std::set<std::string> keywords;
  std::set<std::string> classifyAccessTokens;
  std::set<std::string> classifyEnforceTokens;

  static SeedVocabulary from_seeds(const SeedList& seeds);
  // Items exempt from support pruning.
  std::set<std::string> seed_items() const;
};

struct MinedVocabulary {
  std::set<std::string> identityAccessMined;
  std::set<std::string> identityEnforceMined;
  std::map<std::string, std::size_t> supportCounts;

  friend bool operator==(const MinedVocabulary&, const MinedVocabulary&) = default;
};

MinedVocabulary keyword_filter(const std::vector<FrequentItemset>& candidates,
                               const SeedVocabulary& vocab);

}  // namespace helper_audit

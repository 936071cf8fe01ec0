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

#include "helper_audit/mining.hpp"

#include <algorithm>
#include <cctype>

#include "helper_audit/error.hpp"

namespace helper_audit {

std::vector<Transaction> build_transactions(const Corpus& corpus, const std::vector<SignedChain>& chains) {
  std::vector<Transaction> out;
  for (const auto& sc : chains) {
    Transaction t;
    t.ipcSignature = sc.ipcSignature;
    for (const auto& ref : sc.chain.methods) {
      t.items.insert(simple_name(ref));
      const auto* m = corpus.method(ref);
      if (!m) continue;
      for (const auto& fs : m->flat) {
        if (const auto* call = fs.stmt->as<Invoke>()) t.items.insert(simple_name(call->target));
      }
    }
    if (!t.items.empty()) out.push_back(std::move(t));
  }
  return out;
}

// ---------------------------------------------------------------------------

namespace {

struct FpTree {
  struct Node {
    int item = -1;
    std::size_t count = 0;
    int parent = -1;
    std::map<int, int> children;
  };
  std::vector<Node> nodes{Node{}};
  std::map<int, std::vector<int>> header;  // item -> nodes

  void insert(const std::vector<int>& path, std::size_t count) {
    int cur = 0;
    for (int item : path) {
      auto it = nodes[cur].children.find(item);
      int next;
      if (it == nodes[cur].children.end()) {
        next = static_cast<int>(nodes.size());
        nodes.push_back(Node{item, 0, cur, {}});
        nodes[cur].children[item] = next;
        header[item].push_back(next);
      } else {
        next = it->second;
      }
      nodes[next].count += count;
      cur = next;
    }
  }
};

struct Miner {
  const std::vector<std::string>& names;  // by rank
  const std::vector<bool>& isSeed;
  const MiningOptions& opt;
  std::vector<FrequentItemset>& out;

  void mine(const FpTree& tree, std::vector<int>& suffix, bool suffixHasSeed) {
    for (const auto& [item, list] : tree.header) {
      std::size_t support = 0;
      for (int n : list) support += tree.nodes[n].count;
      if (support == 0) continue;
      bool hasSeed = suffixHasSeed || isSeed[item];
      suffix.push_back(item);
      if (hasSeed || support >= opt.minSupport) {
        FrequentItemset fi;
        for (int i : suffix) fi.items.push_back(names[i]);
        std::sort(fi.items.begin(), fi.items.end());
        fi.support = support;
        out.push_back(std::move(fi));
      }
      if (suffix.size() < opt.maxItemsetSize) {
        std::vector<std::pair<std::vector<int>, std::size_t>> base;
        std::map<int, std::size_t> counts;
        bool baseHasSeed = false;
        for (int n : list) {
          std::vector<int> path;
          for (int p = tree.nodes[n].parent; p > 0; p = tree.nodes[p].parent) path.push_back(tree.nodes[p].item);
          std::reverse(path.begin(), path.end());
          for (int i : path) {
            counts[i] += tree.nodes[n].count;
            baseHasSeed = baseHasSeed || isSeed[i];
          }
          if (!path.empty()) base.emplace_back(std::move(path), tree.nodes[n].count);
        }
        // Low-support items stay when a seed can still join the itemset.
        bool lenient = hasSeed || baseHasSeed;
        std::set<int> keep;
        for (const auto& [i, c] : counts) {
          if (c >= opt.minSupport || (lenient && c >= 1)) keep.insert(i);
        }
        if (!keep.empty()) {
          FpTree cond;
          for (const auto& [path, c] : base) {
            std::vector<int> filtered;
            for (int i : path) {
              if (keep.count(i)) filtered.push_back(i);
            }
            if (!filtered.empty()) cond.insert(filtered, c);
          }
          mine(cond, suffix, hasSeed);
        }
      }
      suffix.pop_back();
    }
  }
};

}  // namespace

std::vector<FrequentItemset> fp_growth(const std::vector<Transaction>& transactions,
                                       const std::set<std::string>& seeds,
                                       const MiningOptions& options) {
  if (options.minSupport < 1) throw InvalidConfig("min support must be at least 1");
  if (options.seedBoost < options.minSupport) throw InvalidConfig("seed boost must be at least min support");
  if (options.maxItemsetSize < 1) throw InvalidConfig("itemset size cap must be at least 1");

  std::map<std::string, std::size_t> support;
  for (const auto& t : transactions) {
    for (const auto& i : t.items) ++support[i];
  }
  struct Ranked {
    std::string name;
    std::size_t key;
    bool seed;
  };
  std::vector<Ranked> ranked;
  for (const auto& [name, s] : support) {
    bool seed = seeds.count(name) != 0;
    if (!seed && s < options.minSupport) continue;
    ranked.push_back(Ranked{name, seed ? std::max(s, options.seedBoost) : s, seed});
  }
  std::sort(ranked.begin(), ranked.end(), [](const Ranked& a, const Ranked& b) {
    if (a.key != b.key) return a.key > b.key;
    return a.name < b.name;
  });
  std::map<std::string, int> rankOf;
  std::vector<std::string> names;
  std::vector<bool> isSeed;
  for (const auto& r : ranked) {
    rankOf[r.name] = static_cast<int>(names.size());
    names.push_back(r.name);
    isSeed.push_back(r.seed);
  }

  FpTree tree;
  for (const auto& t : transactions) {
    std::vector<int> path;
    for (const auto& i : t.items) {
      auto it = rankOf.find(i);
      if (it != rankOf.end()) path.push_back(it->second);
    }
    std::sort(path.begin(), path.end());
    if (!path.empty()) tree.insert(path, 1);
  }

  std::vector<FrequentItemset> out;
  Miner miner{names, isSeed, options, out};
  std::vector<int> suffix;
  miner.mine(tree, suffix, false);
  std::sort(out.begin(), out.end(), [](const FrequentItemset& a, const FrequentItemset& b) {
    if (a.support != b.support) return a.support > b.support;
    return a.items < b.items;
  });
  return out;
}

// ---------------------------------------------------------------------------

SeedVocabulary SeedVocabulary::from_seeds(const SeedList& seeds) {
  SeedVocabulary v;
  v.identityAccess.insert(seeds.identityAccess.begin(), seeds.identityAccess.end());
  v.identityEnforce.insert(seeds.identityEnforce.begin(), seeds.identityEnforce.end());
  for (const auto& b : seeds.binderIdentitySources) v.binderSources.insert(simple_name(b));
  v.keywords.insert(seeds.keywords.begin(), seeds.keywords.end());
  v.classifyAccessTokens.insert(seeds.classifyAccessTokens.begin(), seeds.classifyAccessTokens.end());
  v.classifyEnforceTokens.insert(seeds.classifyEnforceTokens.begin(), seeds.classifyEnforceTokens.end());
  return v;
}

std::set<std::string> SeedVocabulary::seed_items() const {
  std::set<std::string> s = identityAccess;
  s.insert(identityEnforce.begin(), identityEnforce.end());
  s.insert(binderSources.begin(), binderSources.end());
  return s;
}

namespace {

bool intersects(const std::set<std::string>& a, const std::set<std::string>& b) {
  for (const auto& x : a) {
    if (b.count(x)) return true;
  }
  return false;
}

std::string leading_token(const std::string& name) {
  std::string out;
  for (char c : name) {
    if (c == '_' || (!out.empty() && std::isupper(static_cast<unsigned char>(c)))) break;
    out += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  return out;
}

}  // namespace

MinedVocabulary keyword_filter(const std::vector<FrequentItemset>& candidates, const SeedVocabulary& vocab) {
  auto seeds = vocab.seed_items();
  std::set<std::string> cooccurring;
  std::map<std::string, std::size_t> singleSupport, bestSupport;
  for (const auto& c : candidates) {
    if (c.items.size() == 1) singleSupport[c.items[0]] = c.support;
    bool withSeed = false;
    for (const auto& i : c.items) withSeed = withSeed || seeds.count(i);
    for (const auto& i : c.items) {
      bestSupport[i] = std::max(bestSupport[i], c.support);
      if (withSeed && !seeds.count(i) && c.items.size() > 1) cooccurring.insert(i);
    }
  }
  MinedVocabulary out;
  for (const auto& name : cooccurring) {
    auto tokens = tokenize_identifier(name);
    if (!intersects(tokens, vocab.keywords)) continue;
    // The leading verb decides when it is a classifier token; otherwise any
    // access token wins over enforce tokens.
    auto lead = leading_token(name);
    bool access;
    if (vocab.classifyEnforceTokens.count(lead)) {
      access = false;
    } else if (vocab.classifyAccessTokens.count(lead) || intersects(tokens, vocab.classifyAccessTokens)) {
      access = true;
    } else if (intersects(tokens, vocab.classifyEnforceTokens)) {
      access = false;
    } else {
      continue;
    }
    (access ? out.identityAccessMined : out.identityEnforceMined).insert(name);
    auto it = singleSupport.find(name);
    out.supportCounts[name] = it != singleSupport.end() ? it->second : bestSupport[name];
  }
  return out;
}

}  // namespace helper_audit

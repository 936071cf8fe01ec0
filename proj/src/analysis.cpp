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


#include "helper_audit/analysis.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <map>
#include <mutex>
#include <thread>

#include "helper_audit/digest.hpp"
#include "helper_audit/error.hpp"

namespace helper_audit {

void parallel_for(std::size_t n, std::size_t threads, const std::function<void(std::size_t)>& fn) {
  threads = std::max<std::size_t>(1, std::min(threads, n));
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex errorMutex;
  auto worker = [&]() {
    while (true) {
      auto i = next.fetch_add(1);
      if (i >= n) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(errorMutex);
        if (!error) error = std::current_exception();
        next = n;
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

std::size_t AnalysisReport::unsuppressed() const {
  return static_cast<std::size_t>(
      std::count_if(findings.begin(), findings.end(), [](const Finding& f) { return !f.suppressed; }));
}

std::size_t AnalysisReport::suppressed() const { return findings.size() - unsuppressed(); }

namespace {

void check_options(const AnalysisOptions& o) {
  if (o.minSupport < 1) throw InvalidConfig("min support must be at least 1");
  if (o.seedBoost < o.minSupport) throw InvalidConfig("seed boost must be at least min support");
  if (o.maxDepth < 1) throw InvalidConfig("max depth must be at least 1");
  if (o.parallel < 1) throw InvalidConfig("parallel must be at least 1");
}

}  // namespace

PairingStage run_pairing(const Corpus& corpus, const AnalysisInputs& inputs, const AnalysisOptions& options) {
  check_options(options);
  PairingStage s;
  s.table = CallbackTable::merged(corpus, inputs.callbacks);
  s.registry = identify_services(corpus, inputs.seeds);
  s.helpers = identify_helpers(corpus, s.registry, inputs.seeds, s.table, options.maxDepth);
  s.pairing = pair_methods(corpus, s.registry, s.helpers, s.table, options.maxDepth);
  return s;
}

MiningResult run_mining(const Corpus& corpus, const PairingStage& stage, const AnalysisInputs& inputs,
                        const AnalysisOptions& options) {
  check_options(options);
  const auto& pairs = stage.pairing.pairs;
  std::vector<std::vector<SignedChain>> perPair(pairs.size());
  parallel_for(pairs.size(), options.parallel, [&](std::size_t i) {
    const auto& pair = pairs[i];
    auto g = build_graph(corpus, pair.helper, stage.table, options.maxDepth, &stage.registry.boundary);
    for (auto& chain : enumerate_chains(g, options.chainLimit).chains) {
      if (chain.methods.back() == pair.proxy) perPair[i].push_back(SignedChain{pair.ipcSignature, std::move(chain)});
    }
  });
  std::vector<SignedChain> chains;
  for (auto& v : perPair) {
    for (auto& c : v) chains.push_back(std::move(c));
  }
  std::map<std::string, std::string> services;  // service method -> ipc
  for (const auto& p : pairs) services.emplace(p.service, p.ipcSignature);
  for (const auto& [service, ipc] : services) {
    CallChain pseudo;
    pseudo.methods = {service};
    chains.push_back(SignedChain{ipc, std::move(pseudo)});
  }

  MiningResult r;
  r.transactions = build_transactions(corpus, chains);
  auto vocab = SeedVocabulary::from_seeds(inputs.seeds);
  MiningOptions mo;
  mo.minSupport = options.minSupport;
  mo.seedBoost = options.seedBoost;
  r.itemsets = fp_growth(r.transactions, vocab.seed_items(), mo);
  r.vocabulary = keyword_filter(r.itemsets, vocab);
  return r;
}

AnalysisReport analyze(const Corpus& corpus, const AnalysisInputs& inputs, const AnalysisOptions& options) {
  auto stage = run_pairing(corpus, inputs, options);
  auto mining = run_mining(corpus, stage, inputs, options);

  AnalysisReport report;
  report.corpusDigest = corpus_digest(corpus.document());
  report.pairs = stage.pairing.pairs;
  report.directOnly = stage.pairing.directOnly;
  report.vocabulary = mining.vocabulary;

  DetectorContext ctx{corpus, stage.registry, inputs.seeds, mining.vocabulary, stage.table,
                      options.maxDepth, options.chainLimit};

  std::vector<std::string> services;
  for (const auto& p : report.pairs) services.push_back(p.service);
  std::sort(services.begin(), services.end());
  services.erase(std::unique(services.begin(), services.end()), services.end());
  std::vector<EnforcementSet> serviceSets(services.size());
  parallel_for(services.size(), options.parallel,
               [&](std::size_t i) { serviceSets[i] = detect_service_enforcements(ctx, services[i]); });

  CompareOptions co;
  co.strengthen = options.strengthen;
  std::vector<std::vector<Finding>> perPair(report.pairs.size());
  parallel_for(report.pairs.size(), options.parallel, [&](std::size_t i) {
    const auto& pair = report.pairs[i];
    auto helper = detect_helper_enforcements(ctx, pair);
    auto idx = std::lower_bound(services.begin(), services.end(), pair.service) - services.begin();
    perPair[i] = make_findings(pair, helper, serviceSets[idx], co);
  });
  std::vector<Finding> findings;
  for (auto& v : perPair) {
    for (auto& f : v) findings.push_back(std::move(f));
  }
  findings = apply_permission_filter(std::move(findings), inputs.permissions);
  annotate_restrictions(findings, inputs.restrictions);
  sort_findings(findings);
  report.tallies = tally_restrictions(findings, inputs.restrictions);
  report.findings = std::move(findings);
  return report;
}

}  // namespace helper_audit

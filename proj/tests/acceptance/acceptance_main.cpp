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


// Acceptance checks 1-8. Prints one line per criterion and exits nonzero
// when any of them fails.

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "../oracles.hpp"
#include "helper_audit/analysis.hpp"
#include "helper_audit/callgraph.hpp"
#include "helper_audit/cli.hpp"
#include "helper_audit/corpus_io.hpp"
#include "helper_audit/corpusgen.hpp"
#include "helper_audit/inconsistency.hpp"
#include "helper_audit/mining.hpp"
#include "helper_audit/seeds.hpp"
#include "json.hpp"

using namespace helper_audit;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void fail(const std::string& why) {
    if (pass) detail = why;
    pass = false;
  }
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void spill(const fs::path& p, const std::string& text) { std::ofstream(p, std::ios::binary) << text; }

struct Scratch {
  fs::path root;
  Scratch() {
    std::random_device rd;
    root = fs::temp_directory_path() / ("helper_audit_acceptance_" + std::to_string(rd()));
    fs::create_directories(root);
    spill(root / "seeds.json", seed_list_to_json(SeedList::defaults()).dump(2));
  }
  ~Scratch() {
    std::error_code ec;
    fs::remove_all(root, ec);
  }
};

int cli(std::vector<std::string> args, std::string* out = nullptr, std::string* err = nullptr) {
  args.insert(args.begin(), "helper-audit");
  std::ostringstream o, e;
  int code = run_cli(args, o, e);
  if (out) *out = o.str();
  if (err) *err = e.str();
  return code;
}

using LabelSet = std::set<std::tuple<std::string, std::string, std::string>>;

LabelSet labels_of(const json& list) {
  LabelSet out;
  for (const auto& l : list) {
    out.insert({l.at("ipcSignature").get<std::string>(), l.at("helper").get<std::string>(),
                l.at("vulnClass").get<std::string>()});
  }
  return out;
}

GenSpec random_spec(std::mt19937_64& rng) {
  GenSpec s;
  s.seed = rng();
  for (auto c : all_vuln_classes()) s.perClassCounts[c] = static_cast<int>(rng() % 4);
  s.consistentPairs = static_cast<int>(rng() % 8);
  s.noiseClasses = static_cast<int>(rng() % 6);
  s.permissionMix = static_cast<double>(rng() % 5) / 4.0;
  return s;
}

AnalysisReport analyze_generated(const GenResult& g, const PermissionMap& pmap) {
  AnalysisInputs in;
  in.permissions = pmap;
  in.restrictions = parse_restriction_list(g.restrictionsJson);
  return analyze(Corpus(g.corpus), in);
}

// 1. Generated corpora: the report matches the ground truth exactly.
Outcome labeled_corpora() {
  Outcome o;
  Scratch s;
  double slowest = 0;
  for (int i = 0; i < 20; ++i) {
    auto dir = s.root / ("run" + std::to_string(i));
    json spec = {{"seed", 1000 + i},
                 {"perClassCounts", {{"each", 5}}},
                 {"consistentPairs", 20},
                 {"noiseClasses", 50},
                 {"permissionMix", 0.2}};
    spill(s.root / "spec.json", spec.dump());
    if (cli({"gen", "--spec", (s.root / "spec.json").string(), "--out", dir.string()}) != 0) {
      o.fail("gen failed for seed " + std::to_string(1000 + i));
      continue;
    }
    auto start = std::chrono::steady_clock::now();
    std::string err;
    int code = cli({"analyze", "--corpus", (dir / "corpus.json").string(), "--seeds", (s.root / "seeds.json").string(),
                    "--permissions", (dir / "permissions.json").string(), "--restrictions",
                    (dir / "restrictions.json").string(), "--out", (dir / "report.json").string()},
                   nullptr, &err);
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    slowest = std::max(slowest, secs);
    if (code != kExitFindings) {
      o.fail("analyze exit " + std::to_string(code) + ": " + err);
      continue;
    }
    auto truth = json::parse(slurp(dir / "ground_truth.json"));
    auto report = json::parse(slurp(dir / "report.json"));
    LabelSet found, suppressed;
    for (const auto& f : report.at("findings")) {
      std::tuple<std::string, std::string, std::string> l{f.at("ipcSignature"), f.at("helper"), f.at("vulnClass")};
      found.insert(l);
      if (f.at("suppressed").get<bool>()) suppressed.insert(l);
    }
    if (found != labels_of(truth.at("labels"))) o.fail("label mismatch for seed " + std::to_string(1000 + i));
    if (suppressed != labels_of(truth.at("suppressed"))) {
      o.fail("suppression mismatch for seed " + std::to_string(1000 + i));
    }
    if (secs >= 5.0) o.fail("run took " + std::to_string(secs) + " s");
  }
  if (o.pass) {
    std::ostringstream d;
    d.precision(3);
    d << "20 corpora exact, slowest " << slowest << " s";
    o.detail = d.str();
  }
  return o;
}

// 2. The pattern fixtures and their consistent twins.
Outcome fixtures() {
  Outcome o;
  for (const auto& f : fixture_patterns()) {
    auto report = analyze(parse_corpus(f.document), {});
    std::vector<GroundTruthLabel> got;
    for (const auto& x : report.findings) got.push_back({x.pair.ipcSignature, x.pair.helper, x.vulnClass});
    std::vector<GroundTruthLabel> want;
    if (f.expected) want.push_back(*f.expected);
    if (got != want) o.fail(f.name + " produced " + std::to_string(got.size()) + " findings");
  }
  if (o.pass) o.detail = "5 patterns flagged, 5 twins clean";
  return o;
}

// 3. FP-Growth against brute-force Apriori.
Outcome fp_growth_oracle() {
  Outcome o;
  std::mt19937_64 rng(2024);
  int rounds = 0;
  for (; rounds < 400; ++rounds) {
    auto txs = oracle::random_transactions(rng);
    std::size_t minSupport = 1 + rng() % 3;
    std::set<std::string> seeds;
    if (rounds >= 200) {
      for (char ch = 'a'; ch <= 'f'; ++ch) {
        if (rng() % 3 == 0) seeds.insert(std::string(1, ch));
      }
    }
    auto got = fp_growth(txs, seeds, {minSupport, 1000, 4});
    std::sort(got.begin(), got.end());
    if (got != oracle::apriori(txs, seeds, minSupport)) o.fail("round " + std::to_string(rounds) + " differs");
  }
  if (o.pass) o.detail = std::to_string(rounds) + " transaction sets, half with seeds";
  return o;
}

// 4. Virtual dispatch against the subtype-walk oracle.
Outcome cha_oracle() {
  Outcome o;
  std::mt19937_64 rng(77);
  std::size_t calls = 0;
  for (int round = 0; round < 200; ++round) {
    CorpusDocument doc;
    doc.classes = oracle::random_hierarchy(rng);
    Corpus c(doc);
    for (const auto& k : doc.classes) {
      for (const std::string sig : {"m()", "n()", "k(int)"}) {
        Invoke inv;
        inv.dispatch = k.kind == ClassKind::Interface ? Dispatch::Interface : Dispatch::Virtual;
        inv.target = k.name + "." + sig;
        inv.receiver = "r";
        auto got = resolve_call(c, inv, CallbackTable{}, nullptr);
        ++calls;
        if (std::set<std::string>(got.begin(), got.end()) != oracle::virtual_callees(doc.classes, k.name, sig)) {
          o.fail("hierarchy " + std::to_string(round) + " call " + inv.target);
        }
      }
    }
  }
  if (o.pass) o.detail = "200 hierarchies, " + std::to_string(calls) + " call sites";
  return o;
}

// 5. illegalParameter fires iff the helper validates a position the service
// does not.
Outcome superset_rule() {
  Outcome o;
  std::mt19937_64 rng(5150);
  for (int i = 0; i < 2000; ++i) {
    auto c = oracle::random_param_case(rng);
    for (bool strengthen : {false, true}) {
      auto expected = oracle::missing_params(c, strengthen);
      std::set<std::size_t> got;
      bool emitted = false;
      for (const auto& inc : compare_pair(c.helper, c.service, {.strengthen = strengthen})) {
        if (inc.vulnClass != VulnClass::IllegalParameter) continue;
        emitted = true;
        got = inc.missing.params;
      }
      if (emitted != !expected.empty() || got != expected) {
        o.fail("case " + std::to_string(i) + (strengthen ? " strengthened" : " plain"));
      }
    }
  }
  if (o.pass) o.detail = "2000 (H, S) pairs, strengthening on and off";
  return o;
}

// 6. Signature-level permissions suppress, and extra map entries never add
// unsuppressed findings.
Outcome permission_suppression() {
  Outcome o;
  std::mt19937_64 rng(606);
  static const char* levels[] = {"normal", "dangerous", "signature", "signatureOrSystem"};
  for (int round = 0; round < 30; ++round) {
    auto spec = random_spec(rng);
    auto g = generate(spec);
    auto report = analyze_generated(g, parse_permission_map(g.permissionsJson));
    auto pmap = parse_permission_map(g.permissionsJson);
    for (const auto& f : report.findings) {
      auto level = pmap.level_of(f.pair.ipcSignature);
      bool protectedSig = level && *level >= PermissionLevel::Signature;
      if (f.suppressed != protectedSig) o.fail("round " + std::to_string(round) + ": " + f.pair.ipcSignature);
    }

    // Grow an empty map one random entry at a time.
    std::vector<std::string> sigs;
    for (const auto& p : report.pairs) sigs.push_back(p.ipcSignature);
    json grown = json::object();
    auto previous = analyze_generated(g, {}).unsuppressed();
    for (int step = 0; step < 6 && !sigs.empty(); ++step) {
      grown[sigs[rng() % sigs.size()]].push_back({{"permission", "p.X"}, {"level", levels[rng() % 4]}});
      auto now = analyze_generated(g, parse_permission_map(grown.dump())).unsuppressed();
      if (now > previous) o.fail("round " + std::to_string(round) + " grew at step " + std::to_string(step));
      previous = now;
    }
  }
  if (o.pass) o.detail = "30 corpora, suppression exact and monotone";
  return o;
}

// 7. Reports are byte-identical across runs and worker counts.
Outcome determinism() {
  Outcome o;
  Scratch s;
  spill(s.root / "spec.json", R"({"seed": 7, "perClassCounts": {"each": 5}, "consistentPairs": 20,
                                  "noiseClasses": 50, "permissionMix": 0.2})");
  auto dir = s.root / "gen";
  if (cli({"gen", "--spec", (s.root / "spec.json").string(), "--out", dir.string()}) != 0) {
    o.fail("gen failed");
    return o;
  }
  std::vector<std::string> reports;
  for (const char* parallel : {"1", "8", "1", "8"}) {
    auto out = s.root / ("report" + std::to_string(reports.size()) + ".json");
    cli({"analyze", "--corpus", (dir / "corpus.json").string(), "--seeds", (s.root / "seeds.json").string(),
         "--permissions", (dir / "permissions.json").string(), "--restrictions", (dir / "restrictions.json").string(),
         "--parallel", parallel, "--out", out.string()});
    reports.push_back(slurp(out));
  }
  if (reports[0].empty()) o.fail("empty report");
  for (const auto& r : reports) {
    if (r != reports[0]) o.fail("reports differ");
  }
  if (o.pass) o.detail = "4 runs, " + std::to_string(reports[0].size()) + " identical bytes";
  return o;
}

// 8. Restriction tallies add up to the unsuppressed findings.
Outcome tally_conservation() {
  Outcome o;
  std::mt19937_64 rng(808);
  for (int round = 0; round < 50; ++round) {
    auto g = generate(random_spec(rng));
    auto report = analyze_generated(g, parse_permission_map(g.permissionsJson));
    const auto& t = report.tallies;
    std::size_t cells = 0, byClass = 0, byRestriction = 0;
    for (const auto& [v, row] : t.cells) {
      std::size_t rowSum = 0;
      for (const auto& [r, n] : row) rowSum += n;
      if (rowSum != t.byClass.at(v)) o.fail("row sum for " + std::string(to_string(v)));
      cells += rowSum;
    }
    for (const auto& [v, n] : t.byClass) byClass += n;
    for (const auto& [r, n] : t.byRestriction) byRestriction += n;
    auto expected = report.unsuppressed();
    if (t.total != expected || cells != expected || byClass != expected || byRestriction != expected) {
      o.fail("round " + std::to_string(round) + ": total " + std::to_string(t.total) + " vs " +
             std::to_string(expected));
    }
  }
  if (o.pass) o.detail = "50 corpora";
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"labeled corpora exact", labeled_corpora},
      {"pattern fixtures", fixtures},
      {"fp-growth vs apriori", fp_growth_oracle},
      {"cha vs subtype walk", cha_oracle},
      {"superset rule", superset_rule},
      {"permission suppression", permission_suppression},
      {"determinism", determinism},
      {"tally conservation", tally_conservation},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    if (!o.pass) ++failures;
    std::cout << "criterion " << i + 1 << ": " << (o.pass ? "PASS" : "FAIL") << " " << criteria[i].first << " ("
              << o.detail << ")" << std::endl;
  }
  return failures == 0 ? 0 : 1;
}

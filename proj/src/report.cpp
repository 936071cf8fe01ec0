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


#include "helper_audit/report.hpp"

#include <sstream>

namespace helper_audit {

namespace {

std::string locus_text(const Locus& l) { return l.method + "#" + std::to_string(l.statement); }

ordered_json loci_json(const std::vector<Locus>& loci) {
  auto out = ordered_json::array();
  for (const auto& l : loci) out.push_back(locus_text(l));
  return out;
}

}  // namespace

ordered_json pair_to_json(const MethodPair& p) {
  ordered_json j;
  j["helper"] = p.helper;
  j["ipcSignature"] = p.ipcSignature;
  j["service"] = p.service;
  j["helperClass"] = p.helperClass;
  j["proxy"] = p.proxy;
  j["native"] = p.native;
  return j;
}

ordered_json vocabulary_to_json(const MinedVocabulary& v) {
  ordered_json j;
  j["identityAccessMined"] = v.identityAccessMined;
  j["identityEnforceMined"] = v.identityEnforceMined;
  j["supportCounts"] = ordered_json::object();
  for (const auto& [name, s] : v.supportCounts) j["supportCounts"][name] = s;
  return j;
}

ordered_json finding_to_json(const Finding& f) {
  ordered_json j;
  j["ipcSignature"] = f.pair.ipcSignature;
  j["helper"] = f.pair.helper;
  j["service"] = f.pair.service;
  j["helperClass"] = f.pair.helperClass;
  j["vulnClass"] = to_string(f.vulnClass);
  ordered_json missing;
  missing["mechanisms"] = ordered_json::array();
  for (auto k : f.missingOnService.mechanisms) missing["mechanisms"].push_back(to_string(k));
  missing["parameters"] = f.missingOnService.params;
  j["missingOnService"] = missing;
  j["evidence"] = {{"helper", loci_json(f.helperEvidence)}, {"service", loci_json(f.serviceEvidence)}};
  j["escapeHazard"] = f.escapeHazard;
  j["permissionLevel"] = f.permissionLevel ? ordered_json(to_string(*f.permissionLevel)) : ordered_json();
  j["restriction"] = f.restriction ? ordered_json(to_string(*f.restriction)) : ordered_json();
  j["suppressed"] = f.suppressed;
  j["suppressionReason"] = f.suppressed ? ordered_json(f.suppressionReason) : ordered_json();
  j["rank"] = severity_rank(f);
  return j;
}

ordered_json tally_to_json(const RestrictionTally& t) {
  ordered_json j;
  ordered_json cells;
  for (auto v : all_vuln_classes()) {
    ordered_json row;
    for (auto r : all_restrictions()) row[to_string(r)] = t.cells.count(v) ? t.cells.at(v).at(r) : 0;
    cells[to_string(v)] = row;
  }
  j["cells"] = cells;
  ordered_json byClass, byRestriction;
  for (auto v : all_vuln_classes()) byClass[to_string(v)] = t.byClass.count(v) ? t.byClass.at(v) : 0;
  for (auto r : all_restrictions()) byRestriction[to_string(r)] = t.byRestriction.count(r) ? t.byRestriction.at(r) : 0;
  j["byClass"] = byClass;
  j["byRestriction"] = byRestriction;
  j["total"] = t.total;
  return j;
}

ordered_json report_to_json(const AnalysisReport& r) {
  ordered_json j;
  j["version"] = 1;
  j["corpusDigest"] = r.corpusDigest;
  j["pairs"] = ordered_json::array();
  for (const auto& p : r.pairs) j["pairs"].push_back(pair_to_json(p));
  j["vocabulary"] = vocabulary_to_json(r.vocabulary);
  j["findings"] = ordered_json::array();
  for (const auto& f : r.findings) j["findings"].push_back(finding_to_json(f));
  j["tallies"] = tally_to_json(r.tallies);
  j["directOnly"] = r.directOnly;
  return j;
}

std::string render_json(const ordered_json& j) { return j.dump(2) + "\n"; }

std::string summary_line(const ordered_json& report) {
  std::size_t findings = 0, suppressed = 0;
  for (const auto& f : report.at("findings")) {
    if (f.at("suppressed").get<bool>()) {
      ++suppressed;
    } else {
      ++findings;
    }
  }
  return "pairs=" + std::to_string(report.at("pairs").size()) + " findings=" + std::to_string(findings) +
         " suppressed=" + std::to_string(suppressed);
}

namespace {

std::string cell(const ordered_json& v) {
  if (v.is_null()) return "-";
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

std::string joined(const ordered_json& arr) {
  std::string out;
  for (const auto& v : arr) {
    if (!out.empty()) out += ", ";
    out += cell(v);
  }
  return out.empty() ? "-" : out;
}

}  // namespace

std::string render_markdown(const ordered_json& r) {
  std::ostringstream md;
  md << "# helper-audit report\n\n";
  md << "- corpus: `" << r.at("corpusDigest").get<std::string>() << "`\n";
  md << "- " << summary_line(r) << "\n\n";

  md << "## Findings\n\n";
  // Severity rank first; ties keep the report order.
  std::vector<const ordered_json*> order;
  for (const auto& f : r.at("findings")) order.push_back(&f);
  std::stable_sort(order.begin(), order.end(), [](const ordered_json* a, const ordered_json* b) {
    return a->at("rank").get<int>() < b->at("rank").get<int>();
  });
  if (order.empty()) {
    md << "None.\n\n";
  } else {
    md << "| class | IPC method | helper | missing on service | permission | list | suppressed |\n";
    md << "|---|---|---|---|---|---|---|\n";
    for (const auto* f : order) {
      const auto& m = f->at("missingOnService");
      std::string missing = joined(m.at("mechanisms"));
      if (!m.at("parameters").empty()) missing += " (params " + joined(m.at("parameters")) + ")";
      md << "| " << cell(f->at("vulnClass")) << " | `" << cell(f->at("ipcSignature")) << "` | `"
         << cell(f->at("helper")) << "` | " << missing << " | " << cell(f->at("permissionLevel")) << " | "
         << cell(f->at("restriction")) << " | " << (f->at("suppressed").get<bool>() ? "yes" : "no") << " |\n";
    }
    md << "\n";
  }

  md << "## Restriction tally\n\n| class | whitelist | greylist | blacklist | total |\n|---|---|---|---|---|\n";
  const auto& t = r.at("tallies");
  for (const auto& [cls, row] : t.at("cells").items()) {
    md << "| " << cls << " | " << row.at("whitelist") << " | " << row.at("greylist") << " | "
       << row.at("blacklist") << " | " << t.at("byClass").at(cls) << " |\n";
  }
  md << "| total | " << t.at("byRestriction").at("whitelist") << " | " << t.at("byRestriction").at("greylist")
     << " | " << t.at("byRestriction").at("blacklist") << " | " << t.at("total") << " |\n\n";

  md << "## Pairs\n\n";
  if (r.at("pairs").empty()) {
    md << "None.\n\n";
  } else {
    md << "| IPC method | helper | service | native |\n|---|---|---|---|\n";
    for (const auto& p : r.at("pairs")) {
      md << "| `" << cell(p.at("ipcSignature")) << "` | `" << cell(p.at("helper")) << "` | `"
         << cell(p.at("service")) << "` | " << (p.at("native").get<bool>() ? "yes" : "no") << " |\n";
    }
    md << "\n";
  }

  md << "## Mined vocabulary\n\n";
  const auto& v = r.at("vocabulary");
  md << "- identity access: " << joined(v.at("identityAccessMined")) << "\n";
  md << "- identity enforce: " << joined(v.at("identityEnforceMined")) << "\n\n";

  md << "## Direct-only IPC methods\n\n";
  if (r.at("directOnly").empty()) {
    md << "None.\n";
  } else {
    for (const auto& d : r.at("directOnly")) md << "- `" << d.get<std::string>() << "`\n";
  }
  return md.str();
}

}  // namespace helper_audit

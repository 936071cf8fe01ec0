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


#include "helper_audit/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "CLI11.hpp"
#include "helper_audit/analysis.hpp"
#include "helper_audit/corpus_io.hpp"
#include "helper_audit/corpusgen.hpp"
#include "helper_audit/digest.hpp"
#include "helper_audit/error.hpp"
#include "helper_audit/report.hpp"
#include "helper_audit/validate.hpp"

namespace helper_audit {

namespace fs = std::filesystem;

namespace {

struct RunConfig {
  std::string corpusPath;
  std::string seedListPath;
  std::string permissionMapPath;
  std::string restrictionListPath;
  std::string callbackTablePath;
  std::size_t minSupport = 3;
  std::size_t seedBoost = 1000;
  std::size_t maxDepth = 12;
  std::size_t parallel = 1;
  std::string outputPath;
  std::string format = "json";
  std::string specPath;
};

std::string read_file(const std::string& path, const char* what) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(std::string("cannot read ") + what + " '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Corpus load_corpus(const RunConfig& c) {
  if (c.corpusPath.empty()) throw ConfigError("--corpus is required");
  return parse_corpus(read_file(c.corpusPath, "corpus"));
}

AnalysisInputs load_inputs(const RunConfig& c) {
  AnalysisInputs in;
  std::string seeds = c.seedListPath;
  if (seeds.empty()) {
    if (const char* env = std::getenv("HELPER_AUDIT_SEEDS"); env && *env) seeds = env;
  }
  if (seeds.empty()) throw ConfigError("no seed list configured (--seeds or HELPER_AUDIT_SEEDS)");
  in.seeds = parse_seed_list(read_file(seeds, "seed list"));
  if (!c.permissionMapPath.empty()) {
    in.permissions = parse_permission_map(read_file(c.permissionMapPath, "permission map"));
  }
  if (!c.restrictionListPath.empty()) {
    in.restrictions = parse_restriction_list(read_file(c.restrictionListPath, "restriction list"));
  }
  if (!c.callbackTablePath.empty()) {
    in.callbacks = parse_callback_table(read_file(c.callbackTablePath, "callback table"));
  }
  return in;
}

AnalysisOptions load_options(const RunConfig& c) {
  AnalysisOptions o;
  o.minSupport = c.minSupport;
  o.seedBoost = c.seedBoost;
  o.maxDepth = c.maxDepth;
  o.parallel = c.parallel;
  if (o.minSupport < 1) throw InvalidConfig("--min-support must be at least 1");
  if (o.maxDepth < 1) throw InvalidConfig("--max-depth must be at least 1");
  if (o.parallel < 1) throw InvalidConfig("--parallel must be at least 1");
  return o;
}

void emit(const RunConfig& c, const std::string& content, std::ostream& out) {
  if (c.outputPath.empty()) {
    out << content;
  } else {
    write_file_atomic(c.outputPath, content);
  }
}

std::string pairs_markdown(const ordered_json& j) {
  std::ostringstream md;
  md << "| IPC method | helper | service | native |\n|---|---|---|---|\n";
  for (const auto& p : j.at("pairs")) {
    md << "| `" << p.at("ipcSignature").get<std::string>() << "` | `" << p.at("helper").get<std::string>()
       << "` | `" << p.at("service").get<std::string>() << "` | " << (p.at("native").get<bool>() ? "native" : "")
       << " |\n";
  }
  md << "\nDirect-only IPC methods:\n\n";
  for (const auto& s : j.at("directOnly")) md << "- `" << s.get<std::string>() << "`\n";
  return md.str();
}

std::string vocabulary_markdown(const ordered_json& j) {
  std::ostringstream md;
  for (const char* key : {"identityAccessMined", "identityEnforceMined"}) {
    md << "## " << key << "\n\n";
    for (const auto& name : j.at(key)) {
      auto n = name.get<std::string>();
      auto support = j.at("supportCounts").contains(n) ? j.at("supportCounts").at(n).get<std::size_t>() : 0;
      md << "- `" << n << "` (support " << support << ")\n";
    }
    md << "\n";
  }
  return md.str();
}

int cmd_validate(const RunConfig& c, std::ostream& out) {
  auto corpus = load_corpus(c);
  auto diags = validate_corpus(corpus);
  for (const auto& d : diags) out << d.to_string() << "\n";
  return diags.empty() ? kExitClean : kExitDiagnostics;
}

int cmd_pairs(const RunConfig& c, std::ostream& out) {
  auto corpus = load_corpus(c);
  auto stage = run_pairing(corpus, load_inputs(c), load_options(c));
  ordered_json j;
  j["pairs"] = ordered_json::array();
  for (const auto& p : stage.pairing.pairs) j["pairs"].push_back(pair_to_json(p));
  j["directOnly"] = stage.pairing.directOnly;
  emit(c, c.format == "markdown" ? pairs_markdown(j) : render_json(j), out);
  return kExitClean;
}

int cmd_mine(const RunConfig& c, std::ostream& out) {
  auto corpus = load_corpus(c);
  auto inputs = load_inputs(c);
  if (inputs.seeds.identityAccess.empty() && inputs.seeds.identityEnforce.empty()) {
    throw ConfigError("seed list has no identity_access or identity_enforce names to mine from");
  }
  auto options = load_options(c);
  auto stage = run_pairing(corpus, inputs, options);
  auto mined = run_mining(corpus, stage, inputs, options);
  auto j = vocabulary_to_json(mined.vocabulary);
  emit(c, c.format == "markdown" ? vocabulary_markdown(j) : render_json(j), out);
  return kExitClean;
}

int cmd_analyze(const RunConfig& c, std::ostream& out, std::ostream& err) {
  auto corpus = load_corpus(c);
  auto report = analyze(corpus, load_inputs(c), load_options(c));
  auto j = report_to_json(report);
  emit(c, c.format == "markdown" ? render_markdown(j) : render_json(j), out);
  (c.outputPath.empty() ? err : out) << summary_line(j) << "\n";
  return report.unsuppressed() > 0 ? kExitFindings : kExitClean;
}

int cmd_gen(const RunConfig& c, std::ostream& out, std::ostream& err) {
  if (c.specPath.empty()) throw ConfigError("--spec is required");
  if (c.outputPath.empty()) throw ConfigError("--out is required");
  auto spec = parse_gen_spec(read_file(c.specPath, "gen spec"));
  auto result = generate(spec);
  fs::create_directories(c.outputPath);
  fs::path dir(c.outputPath);
  write_file_atomic((dir / "corpus.json").string(), serialize_corpus(result.corpus, 2) + "\n");
  write_file_atomic((dir / "ground_truth.json").string(), ground_truth_json(result.truth));
  write_file_atomic((dir / "permissions.json").string(), result.permissionsJson);
  write_file_atomic((dir / "restrictions.json").string(), result.restrictionsJson);
  err << "wrote 4 files to " << dir.string() << "\n";
  out << corpus_digest(result.corpus) << "\n";
  return kExitClean;
}

}  // namespace

void write_file_atomic(const std::string& path, const std::string& content) {
  fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream o(tmp, std::ios::binary | std::ios::trunc);
    if (!o) throw ConfigError("cannot write '" + tmp.string() + "'");
    o << content;
    o.flush();
    if (!o) throw ConfigError("write failed for '" + tmp.string() + "'");
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw ConfigError("cannot rename onto '" + path + "'");
  }
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Finds security checks that service helpers enforce but system services do not."};
  app.name(args.empty() ? "helper-audit" : fs::path(args[0]).filename().string());
  app.set_config("--config", "", "TOML or INI file with default option values");
  app.require_subcommand(1);

  RunConfig c;
  auto corpus_opt = [&](CLI::App* s) { s->add_option("--corpus", c.corpusPath, "Corpus JSON file"); };
  auto analysis_opts = [&](CLI::App* s) {
    corpus_opt(s);
    s->add_option("--seeds", c.seedListPath, "Seed list JSON (fallback: HELPER_AUDIT_SEEDS)");
    s->add_option("--callbacks", c.callbackTablePath, "Extra callback edges JSON");
    s->add_option("--max-depth", c.maxDepth, "Call graph depth bound");
    s->add_option("--out", c.outputPath, "Output file (default: standard output)");
    s->add_option("--format", c.format, "json or markdown")->check(CLI::IsMember({"json", "markdown"}));
  };

  auto* validate = app.add_subcommand("validate", "Parse and check a corpus");
  corpus_opt(validate);
  auto* pairs = app.add_subcommand("pairs", "List helper/service method pairs");
  analysis_opts(pairs);
  auto* mine = app.add_subcommand("mine", "Mine identity vocabulary");
  analysis_opts(mine);
  mine->add_option("--min-support", c.minSupport, "Minimum itemset support");
  mine->add_option("--seed-boost", c.seedBoost, "Ordering boost for seed items");
  auto* an = app.add_subcommand("analyze", "Run the full analysis");
  analysis_opts(an);
  an->add_option("--min-support", c.minSupport, "Minimum itemset support");
  an->add_option("--seed-boost", c.seedBoost, "Ordering boost for seed items");
  an->add_option("--permissions", c.permissionMapPath, "Permission map JSON");
  an->add_option("--restrictions", c.restrictionListPath, "Restriction list JSON");
  an->add_option("--parallel", c.parallel, "Worker threads");
  auto* gen = app.add_subcommand("gen", "Generate a labeled synthetic corpus");
  gen->add_option("--spec", c.specPath, "Generator spec JSON");
  gen->add_option("--out", c.outputPath, "Output directory");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  if (!reversed.empty()) reversed.pop_back();
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitClean : kExitInputError;
  }

  try {
    if (validate->parsed()) return cmd_validate(c, out);
    if (pairs->parsed()) return cmd_pairs(c, out);
    if (mine->parsed()) return cmd_mine(c, out);
    if (an->parsed()) return cmd_analyze(c, out, err);
    if (gen->parsed()) return cmd_gen(c, out, err);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  }
  return kExitInputError;
}

}  // namespace helper_audit

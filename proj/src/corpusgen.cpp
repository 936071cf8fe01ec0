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


#include "helper_audit/corpusgen.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <random>
#include <set>

#include "helper_audit/corpus_io.hpp"
#include "helper_audit/error.hpp"
#include "json.hpp"
#include "patterns.hpp"

namespace helper_audit {

using nlohmann::json;

namespace {

// Consonant-vowel syllables; no combination spells a seed keyword.
const char* kOnsets = "bdfklmnrstvz";
const char* kVowels = "aeiou";

class NameSource {
 public:
  explicit NameSource(std::mt19937_64& rng) : rng_(rng) {}

  // Fresh capitalized word of `syllables` syllables.
  std::string word(int syllables = 3) {
    for (;;) {
      std::string w;
      for (int i = 0; i < syllables; ++i) {
        w += kOnsets[rng_() % 12];
        w += kVowels[rng_() % 5];
      }
      w[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(w[0])));
      if (used_.insert(w).second) return w;
    }
  }

 private:
  std::mt19937_64& rng_;
  std::set<std::string> used_;
};

std::string lower(std::string s) {
  for (auto& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

std::string upper(std::string s) {
  for (auto& c : s) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return s;
}

patterns::InstanceNames random_names(VulnClass c, NameSource& names, std::mt19937_64& rng) {
  patterns::InstanceNames n;
  auto base = names.word();
  auto topic = names.word(2);
  n.helperPkg = "android." + lower(names.word(2));
  n.servicePkg = "com.android.server." + lower(names.word(2));
  n.iface = "I" + base + "Manager";
  n.helper = base + "Manager";
  n.service = base + "Service";
  n.registeredName = lower(base);
  n.variant = static_cast<int>(rng() % 2);
  switch (c) {
    case VulnClass::IllegalParameter:
      n.helperMethod = n.ipcMethod = "register" + topic;
      n.auxMethod = "isValid" + topic;
      break;
    case VulnClass::FakeIdentity:
      n.helperMethod = n.ipcMethod = "open" + topic;
      n.auxMethod = "resolve" + topic;
      break;
    case VulnClass::FakeStatus:
      n.helperMethod = "enable" + topic;
      n.ipcMethod = "set" + topic;
      break;
    case VulnClass::EnvBypass:
      n.helperMethod = "peek" + topic;
      n.ipcMethod = "get" + topic;
      n.auxMethod = "isSupported" + topic;
      break;
    case VulnClass::IpcFlood:
      if (n.variant == 0) {
        n.helperMethod = "acquire";
        n.ipcMethod = "acquire" + topic + "Lock";
        n.auxMethod = topic + "Lock";
      } else {
        n.helperMethod = "add" + topic + "Listener";
        n.ipcMethod = "register" + topic + "Callback";
        n.auxMethod = topic;
      }
      break;
  }
  return n;
}

std::vector<Statement> parse_body(const json& j) {
  // Small bodies are easier to read as corpus JSON than as builder calls.
  json doc = {{"version", 1},
              {"externals", json::array()},
              {"classes", {{{"name", "T"}, {"kind", "class"}, {"methods", {{{"name", "m"}, {"signature", "m()"}, {"body", j}}}}}}},
              {"callback_edges", json::array()}};
  return document_from_json(doc).classes[0].methods[0].body;
}

MethodDef noise_method(const std::string& name, std::vector<Param> params, const json& body) {
  MethodDef m;
  m.name = name;
  m.params = std::move(params);
  m.signature = make_signature(name, m.params);
  m.body = parse_body(body);
  return m;
}

// Filler: decoy guards next to collection and identity calls that never
// reach an IPC proxy.
std::vector<ClassDef> noise_class(int i, NameSource& names) {
  auto word = names.word();
  std::string pkg = i % 2 == 0 ? "android." + lower(names.word(2)) : "com.android.internal." + lower(names.word(2));
  std::string cls = pkg + "." + word + (i % 2 == 0 ? "Util" : "Tracker");
  std::string task = cls + "$" + names.word(2) + "Task";

  ClassDef outer;
  outer.name = cls;
  outer.package = pkg;
  outer.methods.push_back(noise_method(
      "update" + names.word(2), {{"value", "int"}},
      json::array({{{"op", "if"},
                    {"cond", {{"left", "value"}, {"relation", "gt"}, {"right", {{"const", 10}}}}},
                    {"thenBlock", json::array({{{"op", "assign"}, {"lhs", "this.mValue"}, {"rhs", "value"}}})}},
                   {{"op", "return"}}})));
  outer.methods.push_back(noise_method(
      "store" + names.word(2), {{"item", "java.lang.String"}},
      json::array({{{"op", "assign"}, {"lhs", "items"}, {"rhs", "this.mItems"}},
                   {{"op", "invoke"}, {"dispatch", "virtual"}, {"target", "java.util.ArrayList.size()"},
                    {"receiver", "items"}, {"result", "n"}},
                   {{"op", "if"},
                    {"cond", {{"left", "n"}, {"relation", "ge"}, {"right", {{"const", 100}}}}},
                    {"thenBlock", json::array({{{"op", "throw"}, {"exceptionType", "java.lang.IllegalStateException"}}})}},
                   {{"op", "invoke"}, {"dispatch", "virtual"}, {"target", "java.util.ArrayList.add(java.lang.Object)"},
                    {"receiver", "items"}, {"args", json::array({"item"})}}})));
  outer.methods.push_back(noise_method(
      "schedule" + names.word(2), {},
      json::array({{{"op", "invoke"}, {"dispatch", "special"}, {"target", task + ".<init>()"}, {"result", "t"}},
                   {{"op", "assign"}, {"lhs", "handler"}, {"rhs", "this.mHandler"}},
                   {{"op", "invoke"}, {"dispatch", "virtual"}, {"target", "android.os.Handler.post(java.lang.Runnable)"},
                    {"receiver", "handler"}, {"args", json::array({"t"})}}})));

  ClassDef inner;
  inner.name = task;
  inner.package = pkg;
  inner.interfaces = {"java.lang.Runnable"};
  inner.enclosing = cls;
  inner.methods.push_back(noise_method(
      "run", {},
      json::array({{{"op", "assign"}, {"lhs", "context"}, {"rhs", "this.mContext"}},
                   {{"op", "invoke"}, {"dispatch", "virtual"}, {"target", "android.content.Context.getPackageName()"},
                    {"receiver", "context"}, {"result", "p"}},
                   {{"op", "if"},
                    {"cond", {{"left", "p"}, {"relation", "eq"}, {"right", nullptr}}},
                    {"thenBlock", json::array({{{"op", "return"}}})}},
                   {{"op", "assign"}, {"lhs", "this.mOwner"}, {"rhs", "p"}}})));
  return {outer, inner};
}

json label_json(const GroundTruthLabel& l) {
  return json{{"ipcSignature", l.ipcSignature}, {"helper", l.helper}, {"vulnClass", to_string(l.vulnClass)}};
}

int read_count(const json& v, const std::string& key) {
  if (!v.is_number_integer()) throw InvalidSpec("gen spec: '" + key + "' must be an integer");
  auto n = v.get<std::int64_t>();
  if (n < 0) throw InvalidSpec("gen spec: '" + key + "' must be non-negative");
  if (n > 100000) throw InvalidSpec("gen spec: '" + key + "' is too large");
  return static_cast<int>(n);
}

}  // namespace

void check_gen_spec(const GenSpec& spec) {
  for (const auto& [c, n] : spec.perClassCounts) {
    if (n < 0) throw InvalidSpec(std::string("gen spec: negative count for ") + to_string(c));
  }
  if (spec.consistentPairs < 0) throw InvalidSpec("gen spec: negative consistentPairs");
  if (spec.noiseClasses < 0) throw InvalidSpec("gen spec: negative noiseClasses");
  if (!(spec.permissionMix >= 0.0 && spec.permissionMix <= 1.0)) {
    throw InvalidSpec("gen spec: permissionMix must lie in [0, 1]");
  }
}

GenSpec parse_gen_spec(std::string_view text) {
  json j;
  try {
    j = parse_json_text(text);
  } catch (const SyntaxError& e) {
    throw InvalidSpec(std::string("gen spec: ") + e.what());
  }
  if (!j.is_object()) throw InvalidSpec("gen spec must be a JSON object");
  GenSpec spec;
  for (const auto& [key, v] : j.items()) {
    if (key == "seed") {
      if (!v.is_number_unsigned()) throw InvalidSpec("gen spec: 'seed' must be a non-negative integer");
      spec.seed = v.get<std::uint64_t>();
    } else if (key == "perClassCounts") {
      if (!v.is_object()) throw InvalidSpec("gen spec: 'perClassCounts' must be an object");
      if (v.contains("each")) {
        int n = read_count(v["each"], "each");
        for (auto c : all_vuln_classes()) spec.perClassCounts[c] = n;
      }
      for (const auto& [name, count] : v.items()) {
        if (name == "each") continue;
        auto c = parse_vuln_class(name);
        if (!c) throw InvalidSpec("gen spec: unknown vulnerability class '" + name + "'");
        spec.perClassCounts[*c] = read_count(count, name);
      }
    } else if (key == "consistentPairs") {
      spec.consistentPairs = read_count(v, key);
    } else if (key == "noiseClasses") {
      spec.noiseClasses = read_count(v, key);
    } else if (key == "permissionMix") {
      if (!v.is_number()) throw InvalidSpec("gen spec: 'permissionMix' must be a number");
      spec.permissionMix = v.get<double>();
    } else {
      throw InvalidSpec("gen spec: unknown key '" + key + "'");
    }
  }
  check_gen_spec(spec);
  return spec;
}

GenResult generate(const GenSpec& spec) {
  check_gen_spec(spec);
  std::mt19937_64 rng(spec.seed);
  NameSource names(rng);

  std::vector<patterns::Instance> instances;
  std::size_t envInstances = 0;
  GenResult out;
  json permissions = json::object();
  json restrictions = json::object();
  const char* categories[] = {"whitelist", "greylist", "blacklist"};

  auto permission = [&](const std::string& sig, const char* level) {
    permissions[sig] = json::array({{{"permission", "android.permission." + upper(names.word(2))}, {"level", level}}});
  };

  std::size_t k = 0, suppressedCount = 0;
  for (auto c : all_vuln_classes()) {
    auto it = spec.perClassCounts.find(c);
    int count = it == spec.perClassCounts.end() ? 0 : it->second;
    for (int i = 0; i < count; ++i, ++k) {
      auto inst = patterns::emit(c, true, random_names(c, names, rng));
      const auto& label = inst.label;
      out.truth.labels.push_back(label);
      bool suppressed = std::floor(static_cast<double>(k + 1) * spec.permissionMix) >
                        std::floor(static_cast<double>(k) * spec.permissionMix);
      if (suppressed) {
        permission(label.ipcSignature, suppressedCount++ % 2 == 0 ? "signature" : "signatureOrSystem");
        out.truth.suppressed.push_back(label);
      } else if (k % 3 == 0) {
        permission(label.ipcSignature, "normal");
      } else if (k % 3 == 1) {
        permission(label.ipcSignature, "dangerous");
      }
      restrictions[label.ipcSignature] = categories[rng() % 3];
      if (c == VulnClass::EnvBypass) ++envInstances;
      instances.push_back(std::move(inst));
    }
  }

  // Consistent twins cycle through the patterns. With three or more
  // identity twins the check uses a name outside the seed list, so only the
  // mined vocabulary recognizes it.
  const auto& classes = all_vuln_classes();
  int identityTwins = 0;
  for (int j = 0; j < spec.consistentPairs; ++j) {
    if (classes[j % classes.size()] == VulnClass::FakeIdentity) ++identityTwins;
  }
  for (int j = 0; j < spec.consistentPairs; ++j) {
    auto c = classes[j % classes.size()];
    auto n = random_names(c, names, rng);
    if (c == VulnClass::FakeIdentity && identityTwins >= 3) {
      n.variant += 2;
      n.auxMethod = "enforceCallerBinding";
    }
    auto inst = patterns::emit(c, false, n);
    if (j % 4 == 0) permission(inst.label.ipcSignature, "normal");
    restrictions[inst.label.ipcSignature] = categories[rng() % 3];
    if (c == VulnClass::EnvBypass) ++envInstances;
    instances.push_back(std::move(inst));
  }

  CorpusDocument doc;
  doc.externals = patterns::externals();
  for (auto& inst : instances) {
    for (auto& cls : inst.classes) doc.classes.push_back(std::move(cls));
  }
  for (int i = 0; i < spec.noiseClasses; ++i) {
    for (auto& cls : noise_class(i, names)) doc.classes.push_back(std::move(cls));
  }
  if (spec.noiseClasses > 0) {
    doc.callbackEdges.push_back({"android.os.Handler.post(java.lang.Runnable)", "java.lang.Runnable", "run()"});
  }
  if (!instances.empty()) doc.classes.push_back(patterns::system_server(instances, "com.android.server.SystemServer"));

  std::sort(out.truth.labels.begin(), out.truth.labels.end());
  std::sort(out.truth.suppressed.begin(), out.truth.suppressed.end());
  out.corpus = std::move(doc);
  out.permissionsJson = permissions.dump(2) + "\n";
  out.restrictionsJson = restrictions.dump(2) + "\n";
  out.expectedPairs = instances.size() + envInstances;
  return out;
}

std::string ground_truth_json(const GroundTruth& truth) {
  json j = {{"labels", json::array()}, {"suppressed", json::array()}};
  for (const auto& l : truth.labels) j["labels"].push_back(label_json(l));
  for (const auto& l : truth.suppressed) j["suppressed"].push_back(label_json(l));
  return j.dump(2) + "\n";
}

}  // namespace helper_audit

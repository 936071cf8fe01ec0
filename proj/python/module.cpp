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


#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <sstream>

#include "helper_audit/analysis.hpp"
#include "helper_audit/cli.hpp"
#include "helper_audit/corpus_io.hpp"
#include "helper_audit/corpusgen.hpp"
#include "helper_audit/digest.hpp"
#include "helper_audit/error.hpp"
#include "helper_audit/report.hpp"
#include "helper_audit/seeds.hpp"
#include "helper_audit/validate.hpp"

namespace py = pybind11;
using namespace helper_audit;

namespace {

std::string analyze_text(const std::string& corpus, const std::optional<std::string>& seeds,
                         const std::optional<std::string>& permissions,
                         const std::optional<std::string>& restrictions, std::size_t minSupport,
                         std::size_t seedBoost, std::size_t maxDepth, std::size_t parallel) {
  AnalysisInputs inputs;
  if (seeds) inputs.seeds = parse_seed_list(*seeds);
  if (permissions) inputs.permissions = parse_permission_map(*permissions);
  if (restrictions) inputs.restrictions = parse_restriction_list(*restrictions);
  AnalysisOptions options;
  options.minSupport = minSupport;
  options.seedBoost = seedBoost;
  options.maxDepth = maxDepth;
  options.parallel = parallel;
  py::gil_scoped_release release;
  return render_json(report_to_json(analyze(parse_corpus(corpus), inputs, options)));
}

std::vector<std::string> validate_text(const std::string& corpus) {
  std::vector<std::string> out;
  for (const auto& d : validate_corpus(parse_corpus(corpus))) out.push_back(d.to_string());
  return out;
}

py::dict generate_text(const std::string& spec) {
  auto r = generate(parse_gen_spec(spec));
  py::dict d;
  d["corpus"] = serialize_corpus(r.corpus, 2) + "\n";
  d["ground_truth"] = ground_truth_json(r.truth);
  d["permissions"] = r.permissionsJson;
  d["restrictions"] = r.restrictionsJson;
  d["expected_pairs"] = r.expectedPairs;
  d["digest"] = corpus_digest(r.corpus);
  return d;
}

py::list fixtures() {
  py::list out;
  for (const auto& f : fixture_patterns()) {
    py::dict d;
    d["name"] = f.name;
    d["document"] = f.document;
    if (f.expected) {
      d["expected"] = py::make_tuple(f.expected->ipcSignature, f.expected->helper, to_string(f.expected->vulnClass));
    } else {
      d["expected"] = py::none();
    }
    out.append(d);
  }
  return out;
}

py::tuple cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  std::vector<std::string> full{"helper-audit"};
  full.insert(full.end(), args.begin(), args.end());
  int code = run_cli(full, out, err);
  return py::make_tuple(code, out.str(), err.str());
}

}  // namespace

PYBIND11_MODULE(_helper_audit, m) {
  m.doc() = "Native core of helper_audit.";
  py::register_exception<Error>(m, "Error", PyExc_ValueError);

  m.def("analyze", &analyze_text, py::arg("corpus"), py::arg("seeds") = py::none(),
        py::arg("permissions") = py::none(), py::arg("restrictions") = py::none(), py::arg("min_support") = 3,
        py::arg("seed_boost") = 1000, py::arg("max_depth") = 12, py::arg("parallel") = 1,
        "Run the full pipeline on corpus JSON text; returns the report as JSON text.");
  m.def("validate", &validate_text, py::arg("corpus"), "Diagnostics for corpus JSON text.");
  m.def("generate", &generate_text, py::arg("spec"), "Generate a labeled corpus from a spec JSON text.");
  m.def("fixtures", &fixtures, "Hand-named pattern fixtures.");
  m.def("run_cli", &cli, py::arg("args"), "Run the command line; returns (exit code, stdout, stderr).");
  m.def("default_seeds", [] { return seed_list_to_json(SeedList::defaults()).dump(2) + "\n"; },
        "Built-in seed list as JSON text.");
}

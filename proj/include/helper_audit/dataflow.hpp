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

// Function-level def-use, alias and taint analyses.
//
// Aliasing is flow-insensitive and scoped to one method: every copy
// "a = b" (b a variable or field path) puts a and b in the same class.
// Field paths are compared textually.

#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "helper_audit/callgraph.hpp"
#include "helper_audit/ir.hpp"

namespace helper_audit {

struct DefUseIndex {
  std::map<std::string, std::vector<std::size_t>> defs;
  std::map<std::string, std::vector<std::size_t>> uses;
};

DefUseIndex def_use(const MethodDef& method);

class AliasMap {
 public:
  AliasMap() = default;
  explicit AliasMap(const FlatBody& body);

  // Reflexive: always contains `name`.
  std::set<std::string> class_of(const std::string& name) const;
  bool aliased(const std::string& a, const std::string& b) const;

 private:
  std::string find(const std::string& name) const;
  std::map<std::string, std::string> parent_;
  std::map<std::string, std::set<std::string>> members_;
};

// The root variable of a field path ("v" for "v.mList"), or the name itself.
std::string root_of(const std::string& name);
// True when `name` or its root is one of `names`.
bool mentions(const std::set<std::string>& names, const std::string& name);
bool mentions(const std::set<std::string>& names, const Operand& o);

enum class Fact { Copied, Compared, PassedAsArg, StoredToField, Returned };
const char* to_string(Fact f);

struct TraceStep {
  std::string method;
  std::size_t statement = 0;
  Fact fact = Fact::Copied;

  friend bool operator==(const TraceStep&, const TraceStep&) = default;
};

struct TraceOrigin {
  enum class Kind { Parameter, Literal, CallResult, Field, Unknown };
  Kind kind = Kind::Unknown;
  std::string name;    // parameter, literal text, called method, or field path
  std::string method;  // method holding the origin
  std::size_t statement = 0;

  friend bool operator==(const TraceOrigin&, const TraceOrigin&) = default;
};

// Names carrying the tracked value in one chain method, and the statement
// the value leaves through (the next hop of the chain).
struct TrackedFrame {
  std::string method;
  std::size_t cutoff = 0;
  std::set<std::string> names;

  friend bool operator==(const TrackedFrame&, const TrackedFrame&) = default;
};

struct TaintTrace {
  TraceOrigin origin;
  std::vector<TraceStep> steps;  // entry-most method first, statement order
  std::set<std::string> sinks;
  std::vector<TrackedFrame> frames;  // entry-most method first

  friend bool operator==(const TaintTrace&, const TaintTrace&) = default;
};

// Follows argument `ipcArgIndex` of the final call of `chain` backwards
// through copies and parameter bindings. Throws Error when the chain has no
// call into its last method or the index is out of range.
TaintTrace backward_track(const Corpus& corpus, const CallChain& chain, std::size_t ipcArgIndex);

struct EscapeSite {
  enum class Kind { Field, Collection, Callback };
  Kind kind = Kind::Field;
  std::string location;  // field path, collection, or registration method
  std::size_t statement = 0;

  friend bool operator==(const EscapeSite&, const EscapeSite&) = default;
};

struct EscapeReport {
  std::string parameter;
  std::size_t position = 0;
  bool escapes = false;
  std::vector<EscapeSite> escapeSites;

  friend bool operator==(const EscapeReport&, const EscapeReport&) = default;
};

struct EscapeConfig {
  std::vector<std::string> collectionMutators{".add", ".put", ".offer"};
  std::set<std::string> callbackRegistrations;
};

// Throws UnknownParameter.
EscapeReport escape_analysis(const MethodDef& method, const std::string& parameter,
                             const EscapeConfig& config = {});

}  // namespace helper_audit

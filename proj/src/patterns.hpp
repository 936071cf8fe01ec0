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


// Emitters for the five hazard patterns and their consistent twins, shared
// by the pattern fixtures and the corpus generator.

#pragma once

#include <string>
#include <vector>

#include "helper_audit/corpusgen.hpp"
#include "helper_audit/ir.hpp"

namespace helper_audit::patterns {

// Every name a pattern instance needs. Simple names except the packages.
struct InstanceNames {
  std::string helperPkg;   // e.g. "android.app"
  std::string servicePkg;  // e.g. "com.android.server.wallpaper"
  std::string iface;       // IPC interface simple name
  std::string helper;      // helper class simple name
  std::string service;     // service class simple name
  std::string helperMethod;
  std::string ipcMethod;
  std::string auxMethod;   // env gate, identity resolver, or inner class name
  std::string registeredName;
  int variant = 0;         // pattern-specific variation
};

struct Instance {
  std::vector<ClassDef> classes;
  std::string serviceClass;  // qualified
  std::string registeredName;
  GroundTruthLabel label;    // the pair the pattern targets
};

Instance emit(VulnClass pattern, bool vulnerable, const InstanceNames& names);

// Externals every pattern may reference.
// Invoke receivers must be variables: each field receiver is first loaded
// into a local named after the field.
void lower_field_receivers(std::vector<Statement>& body);

std::vector<std::string> externals();

// A class whose single method registers each service with the service
// manager.
ClassDef system_server(const std::vector<Instance>& instances, const std::string& className);

}  // namespace helper_audit::patterns

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

#pragma once

#include <stdexcept>
#include <string>

namespace helper_audit {

// Base of every error the library raises. The CLI maps all of them to exit
// status 2.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed corpus or config document. `where` is either "line:column" for
// JSON syntax errors or a JSON pointer for schema errors.
class SyntaxError : public Error {
 public:
  SyntaxError(const std::string& where, const std::string& what)
      : Error(where + ": " + what), where_(where) {}
  const std::string& where() const { return where_; }

 private:
  std::string where_;
};

class ResolutionError : public Error {
 public:
  ResolutionError(const std::string& name, const std::string& context)
      : Error("unresolved reference '" + name + "' in " + context), name_(name) {}
  const std::string& name() const { return name_; }

 private:
  std::string name_;
};

class CycleError : public Error {
 public:
  using Error::Error;
};

class UnknownClass : public Error {
 public:
  explicit UnknownClass(const std::string& name) : Error("unknown class '" + name + "'") {}
};

class UnknownMethod : public Error {
 public:
  explicit UnknownMethod(const std::string& ref) : Error("unknown method '" + ref + "'") {}
};

class UnknownParameter : public Error {
 public:
  UnknownParameter(const std::string& param, const std::string& method)
      : Error("method '" + method + "' has no parameter '" + param + "'") {}
};

// Missing or unusable configuration (seed list, registration names, ...).
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Numeric option outside its domain, e.g. min support below 1.
class InvalidConfig : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

class InvalidSpec : public Error {
 public:
  using Error::Error;
};

}  // namespace helper_audit

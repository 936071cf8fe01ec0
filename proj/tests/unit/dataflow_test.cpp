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


#include <gtest/gtest.h>

#include <random>

#include "helper_audit/corpus_io.hpp"
#include "helper_audit/dataflow.hpp"
#include "support.hpp"

using namespace helper_audit;
using nlohmann::json;

namespace {

json param(const std::string& name, const std::string& type = "java.lang.String") {
  return {{"name", name}, {"type", type}};
}

json invoke(const std::string& target, json args, const std::string& receiver = "", const std::string& result = "") {
  json j = {{"op", "invoke"}, {"dispatch", receiver.empty() ? "static" : "virtual"}, {"target", target}, {"args", args}};
  if (!receiver.empty()) j["receiver"] = receiver;
  if (!result.empty()) j["result"] = result;
  return j;
}

json assign(const std::string& lhs, json rhs) { return {{"op", "assign"}, {"lhs", lhs}, {"rhs", rhs}}; }

json guard(const std::string& var, json then) {
  return {{"op", "if"}, {"cond", {{"left", var}, {"relation", "eq"}, {"right", nullptr}}}, {"thenBlock", then}};
}

json throw_iae() { return {{"op", "throw"}, {"exceptionType", "java.lang.IllegalArgumentException"}}; }

// One helper method `h` on a.H calling the static proxy a.P.reg(String).
Corpus helper_corpus(json params, json body) {
  std::string sig = "h(";
  for (std::size_t i = 0; i < params.size(); ++i) sig += (i ? "," : "") + params[i]["type"].get<std::string>();
  sig += ")";
  json h = {{"name", "a.H"}, {"kind", "class"},
            {"methods", json::array({{{"name", "h"}, {"signature", sig}, {"params", params}, {"body", body}}})}};
  json p = {{"name", "a.P"}, {"kind", "class"},
            {"methods", json::array({{{"name", "reg"}, {"signature", "reg(java.lang.String)"},
                                      {"params", json::array({param("s")})}, {"modifiers", json::array({"static"})}}})}};
  return test_support::corpus(json::array({h, p}), json::array({"android.content.Context", "java.lang.String", "java.util.ArrayList", "x.V", "x.Bus"}));
}

CallChain chain_to_proxy(const Corpus& c, const std::string& helper) {
  const auto& m = c.require_method(helper);
  for (const auto& fs : m.flat) {
    if (const auto* call = fs.stmt->as<Invoke>(); call && call->target == "a.P.reg(java.lang.String)") {
      return CallChain{{helper, "a.P.reg(java.lang.String)"}, {{fs.index}}};
    }
  }
  throw std::runtime_error("no proxy call");
}

MethodDef method_of(json params, json body) {
  auto c = helper_corpus(params, body);
  return *c.require_method(c.method_refs().front()).def;
}

}  // namespace

TEST(DefUse, CopyThenCompare) {
  auto m = method_of(json::array({param("p0")}),
                     json::array({assign("v", "p0"), guard("v", json::array({{{"op", "return"}}})),
                                  invoke("a.P.reg(java.lang.String)", json::array({"v"}))}));
  auto du = def_use(m);
  EXPECT_EQ(du.uses["p0"], (std::vector<std::size_t>{0}));
  EXPECT_EQ(du.uses["v"], (std::vector<std::size_t>{1, 3}));
  EXPECT_EQ(du.defs["v"], (std::vector<std::size_t>{0}));
}

TEST(DefUse, UnreadParameter) {
  auto m = method_of(json::array({param("p")}), json::array({{{"op", "return"}}}));
  EXPECT_TRUE(def_use(m).uses["p"].empty());
}

TEST(DefUse, ArgumentUsesInOrder) {
  auto m = method_of(json::array({param("p0")}),
                     json::array({invoke("x.V.check(java.lang.String)", json::array({"p0"})),
                                  invoke("a.P.reg(java.lang.String)", json::array({"p0"}))}));
  EXPECT_EQ(def_use(m).uses["p0"], (std::vector<std::size_t>{0, 1}));
}

TEST(BackwardTrack, NullCheckedParameter) {
  auto c = helper_corpus(json::array({param("name")}),
                         json::array({guard("name", json::array({throw_iae()})),
                                      invoke("a.P.reg(java.lang.String)", json::array({"name"}))}));
  auto t = backward_track(c, chain_to_proxy(c, "a.H.h(java.lang.String)"), 0);
  EXPECT_EQ(t.origin.kind, TraceOrigin::Kind::Parameter);
  EXPECT_EQ(t.origin.name, "name");
  ASSERT_EQ(t.steps.size(), 2u);
  EXPECT_EQ(t.steps[0].fact, Fact::Compared);
  EXPECT_EQ(t.steps[1].fact, Fact::PassedAsArg);
  EXPECT_EQ(t.sinks, (std::set<std::string>{"guard:a.H.h(java.lang.String)#0"}));
}

TEST(BackwardTrack, PassThrough) {
  auto c = helper_corpus(json::array({param("x")}), json::array({invoke("a.P.reg(java.lang.String)", json::array({"x"}))}));
  auto t = backward_track(c, chain_to_proxy(c, "a.H.h(java.lang.String)"), 0);
  ASSERT_EQ(t.steps.size(), 1u);
  EXPECT_EQ(t.steps[0].fact, Fact::PassedAsArg);
  EXPECT_TRUE(t.sinks.empty());
}

TEST(BackwardTrack, IdentityCallOrigin) {
  auto c = helper_corpus(json::array(), json::array({assign("ctx", "this.mContext"),
                                                     invoke("android.content.Context.getPackageName()", json::array(),
                                                            "ctx", "id"),
                                                     invoke("a.P.reg(java.lang.String)", json::array({"id"}))}));
  auto t = backward_track(c, chain_to_proxy(c, "a.H.h()"), 0);
  EXPECT_EQ(t.origin.kind, TraceOrigin::Kind::CallResult);
  EXPECT_EQ(t.origin.name, "android.content.Context.getPackageName()");
  EXPECT_EQ(t.origin.statement, 1u);
}

TEST(BackwardTrack, LiteralArgument) {
  auto c = helper_corpus(json::array(), json::array({invoke("a.P.reg(java.lang.String)", json::array({{{"const", "x"}}}))}));
  auto t = backward_track(c, chain_to_proxy(c, "a.H.h()"), 0);
  EXPECT_EQ(t.origin.kind, TraceOrigin::Kind::Literal);
}

TEST(Escape, StoredIntoCollection) {
  auto m = method_of(json::array({param("p")}), json::array({assign("configs", "this.mConfigs"),
                                                             invoke("java.util.ArrayList.add(java.lang.Object)",
                                                                    json::array({"p"}), "configs")}));
  auto r = escape_analysis(m, "p");
  EXPECT_TRUE(r.escapes);
  ASSERT_EQ(r.escapeSites.size(), 1u);
  EXPECT_EQ(r.escapeSites[0].kind, EscapeSite::Kind::Collection);
  EXPECT_EQ(r.escapeSites[0].location, "this.mConfigs");
}

TEST(Escape, ComparedAndForwardedOnly) {
  auto m = method_of(json::array({param("p")}), json::array({guard("p", json::array({throw_iae()})),
                                                             invoke("a.P.reg(java.lang.String)", json::array({"p"}))}));
  EXPECT_FALSE(escape_analysis(m, "p").escapes);
}

TEST(Escape, AliasStoredToField) {
  auto m = method_of(json::array({param("p")}), json::array({assign("v", "p"), assign("this.mLast", "v")}));
  auto r = escape_analysis(m, "p");
  EXPECT_TRUE(r.escapes);
  ASSERT_EQ(r.escapeSites.size(), 1u);
  EXPECT_EQ(r.escapeSites[0].kind, EscapeSite::Kind::Field);
  EXPECT_EQ(r.escapeSites[0].location, "this.mLast");
}

TEST(Escape, CallbackRegistration) {
  auto m = method_of(json::array({param("p")}), json::array({invoke("x.Bus.post(java.lang.String)", json::array({"p"}))}));
  EscapeConfig config;
  config.callbackRegistrations = {"x.Bus.post(java.lang.String)"};
  auto r = escape_analysis(m, "p", config);
  ASSERT_TRUE(r.escapes);
  EXPECT_EQ(r.escapeSites[0].kind, EscapeSite::Kind::Callback);
}

// Union-find classes against a naive fixpoint over copy statements.
TEST(AliasMap, RandomMatchesFixpointClosure) {
  std::mt19937_64 rng(3);
  const std::vector<std::string> names = {"a", "b", "c", "d", "e", "this.mF", "this.mG"};
  for (int round = 0; round < 300; ++round) {
    json body = json::array();
    std::vector<std::pair<std::string, std::string>> copies;
    std::set<std::string> defined = {"a"};
    std::size_t n = rng() % 8;
    for (std::size_t i = 0; i < n; ++i) {
      auto lhs = names[rng() % names.size()];
      auto rhs = names[rng() % names.size()];
      if (rhs.find('.') == std::string::npos && !defined.count(rhs)) rhs = "a";
      body.push_back(assign(lhs, rhs));
      copies.emplace_back(lhs, rhs);
      defined.insert(lhs);
    }
    auto m = method_of(json::array({param("a")}), body);
    AliasMap aliases(flatten(m.body));
    for (const auto& start : names) {
      std::set<std::string> closure{start};
      bool changed = true;
      while (changed) {
        changed = false;
        for (const auto& [l, r] : copies) {
          if (closure.count(l) != closure.count(r)) {
            closure.insert(l);
            closure.insert(r);
            changed = true;
          }
        }
      }
      ASSERT_EQ(aliases.class_of(start), closure) << start;
    }
  }
}

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

#include "../oracles.hpp"
#include "helper_audit/error.hpp"
#include "helper_audit/inconsistency.hpp"

using namespace helper_audit;

namespace {

EnforcementSet helper_with(std::set<std::size_t> validated, std::set<std::size_t> guarded = {}) {
  EnforcementSet h;
  h.validatedParams = std::move(validated);
  h.throwGuardedParams = std::move(guarded);
  if (!h.validatedParams.empty()) h.add(EnforcementKind::ParamValidation, {Locus{"a.H.m()", 0}});
  return h;
}

EnforcementSet service_with(std::set<std::size_t> validated, std::vector<std::size_t> hazards = {}) {
  EnforcementSet s;
  s.side = Side::Service;
  s.validatedParams = std::move(validated);
  for (auto p : hazards) {
    EscapeReport e;
    e.position = p;
    e.escapes = true;
    e.escapeSites.push_back(EscapeSite{EscapeSite::Kind::Field, "a.S.mState", 3});
    s.escapeHazards.push_back(e);
  }
  return s;
}

std::optional<Inconsistency> find(const std::vector<Inconsistency>& v, VulnClass c) {
  for (const auto& i : v) {
    if (i.vulnClass == c) return i;
  }
  return std::nullopt;
}

Finding finding(const std::string& ipc, VulnClass c) {
  Finding f;
  f.pair.ipcSignature = ipc;
  f.pair.helper = "a.H." + ipc;
  f.pair.service = "a.S." + ipc;
  f.pair.proxy = "a.P." + ipc;
  f.vulnClass = c;
  return f;
}

}  // namespace

TEST(ComparePair, HelperChecksMoreThanService) {
  auto out = compare_pair(helper_with({0, 1}, {0, 1}), service_with({1}));
  auto inc = find(out, VulnClass::IllegalParameter);
  ASSERT_TRUE(inc);
  EXPECT_EQ(inc->missing.params, (std::set<std::size_t>{0}));
  EXPECT_EQ(inc->missing.mechanisms, (std::set<EnforcementKind>{EnforcementKind::ParamValidation}));
}

TEST(ComparePair, ServiceSupersetIsClean) {
  EXPECT_TRUE(compare_pair(helper_with({0}, {0}), service_with({0, 1})).empty());
  EXPECT_TRUE(compare_pair(helper_with({}), service_with({})).empty());
}

TEST(ComparePair, StrengtheningNeedsHazardOrThrow) {
  auto h = helper_with({0});
  EXPECT_TRUE(compare_pair(h, service_with({})).empty());
  EXPECT_EQ(compare_pair(h, service_with({}), {.strengthen = false}).size(), 1u);
  auto out = compare_pair(h, service_with({}, {0}));
  ASSERT_EQ(out.size(), 1u);
  EXPECT_TRUE(out[0].escapeHazard);
}

TEST(ComparePair, IdentityCoveredByBinderCheck) {
  EnforcementSet h;
  h.identitiesPassed = {{IdentityKind::PackageName, 1}};
  EnforcementSet s;
  s.side = Side::Service;
  auto out = compare_pair(h, s);
  auto id = find(out, VulnClass::FakeIdentity);
  ASSERT_TRUE(id);
  EXPECT_EQ(id->missing.params, (std::set<std::size_t>{1}));
  s.binderIdentityChecked = true;
  EXPECT_FALSE(find(compare_pair(h, s), VulnClass::FakeIdentity));
  s.binderIdentityChecked = false;
  s.identityCoveredParams = {1};
  EXPECT_FALSE(find(compare_pair(h, s), VulnClass::FakeIdentity));
}

TEST(ComparePair, MechanismClasses) {
  EnforcementSet h;
  h.add(EnforcementKind::CallerStatus, {Locus{"a.H.m()", 1}});
  h.add(EnforcementKind::EnvCheck, {Locus{"a.H.m()", 2}});
  h.add(EnforcementKind::DupConstraint, {Locus{"a.H.m()", 3}});
  EnforcementSet s;
  s.side = Side::Service;
  EXPECT_EQ(compare_pair(h, s).size(), 3u);
  s.add(EnforcementKind::IdentityCheck, {Locus{"a.S.m()", 0}});
  s.add(EnforcementKind::EnvCheck, {Locus{"a.S.m()", 1}});
  auto out = compare_pair(h, s);
  ASSERT_EQ(out.size(), 1u);
  EXPECT_EQ(out[0].vulnClass, VulnClass::IpcFlood);
}

TEST(ComparePair, RandomSupersetProperty) {
  std::mt19937_64 rng(41);
  for (int i = 0; i < 500; ++i) {
    auto c = oracle::random_param_case(rng);
    for (bool strengthen : {true, false}) {
      auto expected = oracle::missing_params(c, strengthen);
      auto inc = find(compare_pair(c.helper, c.service, {.strengthen = strengthen}), VulnClass::IllegalParameter);
      ASSERT_EQ(inc.has_value(), !expected.empty()) << "case " << i;
      if (inc) EXPECT_EQ(inc->missing.params, expected);
    }
  }
}

TEST(Findings, EvidenceIncludesEscapeSites) {
  MethodPair pair{"a.H.m()", "a.I.m(int)", "a.S.m(int)", "a.H", "a.I$Stub$Proxy.m(int)", false};
  auto fs = make_findings(pair, helper_with({0}), service_with({}, {0}));
  ASSERT_EQ(fs.size(), 1u);
  EXPECT_EQ(fs[0].helperEvidence, (std::vector<Locus>{{"a.H.m()", 0}}));
  EXPECT_EQ(fs[0].serviceEvidence, (std::vector<Locus>{{"a.S.m(int)", 3}}));
  EXPECT_EQ(severity_rank(fs[0]), 0);
}

TEST(PermissionFilter, SignatureLevelsSuppress) {
  auto pmap = parse_permission_map(R"j({
    "a.I.sig()": [{"permission": "p.A", "level": "normal"}, {"permission": "p.B", "level": "signature"}],
    "a.I.sos()": [{"level": "signatureOrSystem"}],
    "a.I.dang()": [{"permission": "p.C", "level": "dangerous"}]})j");
  std::vector<Finding> in{finding("a.I.sig()", VulnClass::FakeStatus), finding("a.I.sos()", VulnClass::IpcFlood),
                          finding("a.I.dang()", VulnClass::EnvBypass), finding("a.I.none()", VulnClass::EnvBypass)};
  auto out = apply_permission_filter(in, pmap);
  ASSERT_EQ(out.size(), 4u);
  EXPECT_TRUE(out[0].suppressed);
  EXPECT_EQ(out[0].permissionLevel, PermissionLevel::Signature);
  EXPECT_TRUE(out[1].suppressed);
  EXPECT_FALSE(out[2].suppressed);
  EXPECT_EQ(out[2].permissionLevel, PermissionLevel::Dangerous);
  EXPECT_FALSE(out[3].suppressed);
  EXPECT_FALSE(out[3].permissionLevel);
}

TEST(PermissionFilter, ParseErrors) {
  EXPECT_THROW(parse_permission_map("[]"), ConfigError);
  EXPECT_THROW(parse_permission_map("{\"a\": {}}"), ConfigError);
  EXPECT_THROW(parse_permission_map("{\"a\": [{\"level\": \"root\"}]}"), ConfigError);
  EXPECT_THROW(parse_permission_map("{\"a\": [{\"level\": \"normal\", \"x\": 1}]}"), ConfigError);
  EXPECT_THROW(parse_permission_map("{"), ConfigError);
}

TEST(Restrictions, LookupOrder) {
  auto list = parse_restriction_list(R"j({"a.I.x()": "blacklist", "a.S.a.I.y()": "greylist"})j");
  EXPECT_EQ(list.lookup(finding("a.I.x()", VulnClass::IpcFlood).pair), Restriction::Blacklist);
  EXPECT_EQ(list.lookup(finding("a.I.y()", VulnClass::IpcFlood).pair), Restriction::Greylist);
  EXPECT_EQ(list.lookup(finding("a.I.z()", VulnClass::IpcFlood).pair), Restriction::Whitelist);
  EXPECT_THROW(parse_restriction_list(R"j({"a": "purple"})j"), ConfigError);
  EXPECT_THROW(parse_restriction_list(R"j({"a": 3})j"), ConfigError);
}

TEST(Restrictions, TallySkipsSuppressed) {
  auto list = parse_restriction_list(R"j({"a.I.x()": "blacklist", "a.I.y()": "greylist"})j");
  std::vector<Finding> fs{finding("a.I.x()", VulnClass::IpcFlood), finding("a.I.x()", VulnClass::FakeStatus),
                          finding("a.I.y()", VulnClass::IpcFlood), finding("a.I.z()", VulnClass::EnvBypass),
                          finding("a.I.y()", VulnClass::FakeIdentity)};
  fs[4].suppressed = true;
  auto t = tally_restrictions(fs, list);
  EXPECT_EQ(t.total, 4u);
  EXPECT_EQ(t.cells[VulnClass::IpcFlood][Restriction::Blacklist], 1u);
  EXPECT_EQ(t.cells[VulnClass::IpcFlood][Restriction::Greylist], 1u);
  EXPECT_EQ(t.cells[VulnClass::FakeIdentity][Restriction::Greylist], 0u);
  EXPECT_EQ(t.byClass[VulnClass::IpcFlood], 2u);
  EXPECT_EQ(t.byRestriction[Restriction::Whitelist], 1u);
  EXPECT_EQ(t.cells.size(), 5u);
  for (const auto& [v, row] : t.cells) EXPECT_EQ(row.size(), 3u);
}

TEST(Findings, SortOrder) {
  std::vector<Finding> fs{finding("b()", VulnClass::FakeStatus), finding("a()", VulnClass::IpcFlood),
                          finding("a()", VulnClass::IllegalParameter)};
  sort_findings(fs);
  EXPECT_EQ(fs[0].vulnClass, VulnClass::IllegalParameter);
  EXPECT_EQ(fs[1].vulnClass, VulnClass::IpcFlood);
  EXPECT_EQ(fs[2].pair.ipcSignature, "b()");
}

TEST(Names, RoundTrip) {
  for (auto v : all_vuln_classes()) EXPECT_EQ(parse_vuln_class(to_string(v)), v);
  for (auto r : all_restrictions()) EXPECT_EQ(parse_restriction(to_string(r)), r);
  EXPECT_FALSE(parse_permission_level("system"));
}

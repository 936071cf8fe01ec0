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

#include "helper_audit/corpusgen.hpp"
#include "helper_audit/detectors.hpp"
#include "helper_audit/error.hpp"
#include "pipeline.hpp"

using namespace helper_audit;
using nlohmann::json;
using test_support::fixture_json;
using test_support::method_named;
using test_support::Pipeline;

namespace {

const std::string kHealthIpc = "android.bluetooth.IBluetoothHealth.registerAppConfiguration(java.lang.String)";
const std::string kNfcIpc = "android.nfc.INfcAdapter.setForegroundDispatch(android.content.Intent)";
const std::string kFingerprintIpc = "android.hardware.fingerprint.IFingerprintService.authenticate(java.lang.String,int)";
const std::string kWallpaperIpc = "android.app.IWallpaperManager.getWallpaper()";
const std::string kMulticastIpc = "android.net.wifi.IWifiManager.acquireMulticastLock(android.os.IBinder,java.lang.String)";
const std::string kNotificationIpc = "android.app.INotificationManager.cancelNotificationWithTag(java.lang.String,int)";

json invoke(const std::string& dispatch, const std::string& target, const std::string& receiver, json args,
            const std::string& result) {
  json j = {{"op", "invoke"}, {"dispatch", dispatch}, {"target", target}, {"args", args}};
  if (!receiver.empty()) j["receiver"] = receiver;
  if (!result.empty()) j["result"] = result;
  return j;
}

GenResult generated(VulnClass c, int count, int consistent = 0) {
  GenSpec spec;
  spec.seed = 9;
  spec.perClassCounts[c] = count;
  spec.consistentPairs = consistent;
  return generate(spec);
}

}  // namespace

TEST(ParamValidation, NullCheckBeforeCall) {
  Pipeline p(fixture_json("code3-health"));
  auto h = p.helper(kHealthIpc);
  EXPECT_EQ(h.validatedParams, (std::set<std::size_t>{0}));
  EXPECT_EQ(h.throwGuardedParams, (std::set<std::size_t>{0}));
  EXPECT_TRUE(h.has(EnforcementKind::ParamValidation));
}

TEST(ParamValidation, UnconditionalCall) {
  Pipeline p(fixture_json("code1-2-fingerprint"));
  EXPECT_TRUE(p.helper(kFingerprintIpc).validatedParams.empty());
}

TEST(ParamValidation, EveryGeneratedHelperValidates) {
  // Half the generated helpers validate through a boolean method.
  auto g = generated(VulnClass::IllegalParameter, 6);
  Pipeline p(json::parse(serialize_corpus(g.corpus)));
  for (const auto& label : g.truth.labels) {
    EXPECT_EQ(p.helper(label.ipcSignature).validatedParams, (std::set<std::size_t>{0})) << label.helper;
  }
}

TEST(CallerStatus, ResumedCheckFires) {
  Pipeline p(fixture_json("code2-nfc"));
  EXPECT_TRUE(p.helper(kNfcIpc).has(EnforcementKind::CallerStatus));
}

TEST(CallerStatus, IgnoredResultDoesNotFire) {
  auto doc = fixture_json("code2-nfc");
  auto& body = method_named(doc, "android.nfc.NfcAdapter", "enableForegroundDispatch")["body"];
  ASSERT_EQ(body[1]["op"], "if");
  body.erase(1);
  Pipeline p(doc);
  EXPECT_FALSE(p.helper(kNfcIpc).has(EnforcementKind::CallerStatus));
}

TEST(CallerStatus, NoStatusCall) {
  Pipeline p(fixture_json("code3-health"));
  EXPECT_FALSE(p.helper(kHealthIpc).has(EnforcementKind::CallerStatus));
}

TEST(IdentityPassing, PackageNameArgument) {
  Pipeline p(fixture_json("code1-2-fingerprint"));
  auto h = p.helper(kFingerprintIpc);
  EXPECT_EQ(h.identitiesPassed, (std::set<std::pair<IdentityKind, std::size_t>>{{IdentityKind::PackageName, 0}}));
}

TEST(IdentityPassing, ConstantArguments) {
  auto doc = fixture_json("code1-2-fingerprint");
  auto& body = method_named(doc, "android.hardware.fingerprint.FingerprintManager", "authenticate")["body"];
  body.back()["args"] = json::array({{{"const", "com.example"}}, 0});
  Pipeline p(doc);
  EXPECT_TRUE(p.helper(kFingerprintIpc).identitiesPassed.empty());
}

TEST(IdentityPassing, UidThroughLocalCopy) {
  auto doc = fixture_json("code1-2-fingerprint");
  auto& body = method_named(doc, "android.hardware.fingerprint.FingerprintManager", "authenticate")["body"];
  ASSERT_EQ(body[1]["result"], "id");
  body[1] = invoke("static", "android.os.Process.myUid()", "", json::array(), "uid");
  body.insert(body.begin() + 2, json{{"op", "assign"}, {"lhs", "id"}, {"rhs", "uid"}});
  Pipeline p(doc);
  EXPECT_EQ(p.helper(kFingerprintIpc).identitiesPassed,
            (std::set<std::pair<IdentityKind, std::size_t>>{{IdentityKind::Uid, 0}}));
}

TEST(IdentityKinds, TableThenTokens) {
  auto seeds = SeedList::defaults();
  EXPECT_EQ(identity_kind_of("getOpPackageName", seeds), IdentityKind::PackageName);
  EXPECT_EQ(identity_kind_of("getCallingUserId", seeds), IdentityKind::Uid);
  EXPECT_EQ(identity_kind_of("getParentPidOf", seeds), IdentityKind::Pid);
  EXPECT_FALSE(identity_kind_of("drawFrame", seeds));
}

TEST(EnvCheck, SupportedGateFires) {
  Pipeline p(fixture_json("code1-wallpaper"));
  auto h = p.helper(kWallpaperIpc);
  EXPECT_TRUE(h.has(EnforcementKind::EnvCheck));
  EXPECT_EQ(h.envGates, (std::set<std::string>{"android.app.IWallpaperManager.isWallpaperSupported()"}));
}

TEST(EnvCheck, UncheckedGateResult) {
  auto doc = fixture_json("code1-wallpaper");
  auto& m = method_named(doc, "android.app.WallpaperManager", "peekWallpaperBitmap");
  m["body"] = json::array(
      {{{"op", "assign"}, {"lhs", "service"}, {"rhs", "this.mService"}},
       invoke("interface", "android.app.IWallpaperManager.isWallpaperSupported()", "service", json::array(), "supported"),
       invoke("interface", kWallpaperIpc, "service", json::array(), "data"),
       {{"op", "return"}, {"value", "supported"}}});
  Pipeline p(doc);
  EXPECT_FALSE(p.helper(kWallpaperIpc).has(EnforcementKind::EnvCheck));
}

TEST(EnvCheck, LocalBooleanIsNoGate) {
  auto doc = fixture_json("code1-wallpaper");
  test_support::class_named(doc, "android.app.WallpaperManager")["methods"].push_back(
      {{"name", "hasCache"}, {"signature", "hasCache()"}, {"returnType", "boolean"},
       {"body", json::array({{{"op", "return"}, {"value", "this.mHasCache"}}})}});
  auto& body = method_named(doc, "android.app.WallpaperManager", "peekWallpaperBitmap")["body"];
  ASSERT_EQ(body[1]["result"], "supported");
  body[1] = invoke("virtual", "android.app.WallpaperManager.hasCache()", "this", json::array(), "supported");
  Pipeline p(doc);
  EXPECT_FALSE(p.helper(kWallpaperIpc).has(EnforcementKind::EnvCheck));
}

TEST(DupConstraint, CounterGuardFires) {
  Pipeline p(fixture_json("code4-multicast"));
  EXPECT_TRUE(p.helper(kMulticastIpc).has(EnforcementKind::DupConstraint));
}

TEST(DupConstraint, EveryGeneratedVariantFires) {
  auto g = generated(VulnClass::IpcFlood, 6);
  Pipeline p(json::parse(serialize_corpus(g.corpus)));
  bool listenerVariant = false;
  for (const auto& label : g.truth.labels) {
    listenerVariant = listenerVariant || label.helper.find("Listener") != std::string::npos;
    EXPECT_TRUE(p.helper(label.ipcSignature).has(EnforcementKind::DupConstraint)) << label.helper;
  }
  EXPECT_TRUE(listenerVariant);
}

TEST(DupConstraint, PlainCallDoesNotFire) {
  Pipeline p(fixture_json("code3-health"));
  EXPECT_FALSE(p.helper(kHealthIpc).has(EnforcementKind::DupConstraint));
}

TEST(ServiceSide, CheckPackageWithBinderUid) {
  Pipeline p(fixture_json("code5-fixed"));
  auto s = p.service(kNotificationIpc);
  EXPECT_TRUE(s.has(EnforcementKind::IdentityCheck));
  EXPECT_TRUE(s.validatedParams.count(0));
  EXPECT_TRUE(s.binderIdentityChecked);
}

TEST(ServiceSide, ConstantComparisonIsNoCheck) {
  Pipeline p(fixture_json("code1-2-fingerprint"));
  auto s = p.service(kFingerprintIpc);
  EXPECT_FALSE(s.has(EnforcementKind::IdentityCheck));
  EXPECT_TRUE(s.validatedParams.empty());
  EXPECT_FALSE(s.binderIdentityChecked);
}

TEST(ServiceSide, StoredParameterIsHazard) {
  Pipeline p(fixture_json("code3-health"));
  auto s = p.service(kHealthIpc);
  ASSERT_EQ(s.escapeHazards.size(), 1u);
  EXPECT_EQ(s.escapeHazards[0].position, 0u);
  EXPECT_TRUE(s.validatedParams.empty());
}

TEST(ServiceSide, FixedTwinsMirrorTheHelper) {
  EXPECT_TRUE(Pipeline(fixture_json("code2-nfc-fixed")).service(kNfcIpc).has(EnforcementKind::CallerStatus));
  EXPECT_TRUE(Pipeline(fixture_json("code1-wallpaper-fixed")).service(kWallpaperIpc).has(EnforcementKind::EnvCheck));
  EXPECT_TRUE(Pipeline(fixture_json("code4-multicast-fixed")).service(kMulticastIpc).has(EnforcementKind::DupConstraint));
  auto health = Pipeline(fixture_json("code3-health-fixed")).service(kHealthIpc);
  EXPECT_EQ(health.validatedParams, (std::set<std::size_t>{0}));
  EXPECT_TRUE(health.escapeHazards.empty());
}

TEST(ServiceSide, UnknownMethodThrows) {
  Pipeline p(fixture_json("code3-health"));
  EXPECT_THROW(detect_service_enforcements(*p.ctx, "a.B.none()"), UnknownMethod);
}

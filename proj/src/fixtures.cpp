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


// Hand-named instances of the five hazard patterns and their fixed twins.

#include "helper_audit/corpus_io.hpp"
#include "helper_audit/corpusgen.hpp"
#include "patterns.hpp"

namespace helper_audit {

namespace {

patterns::InstanceNames names(std::string helperPkg, std::string servicePkg, std::string iface, std::string helper,
                              std::string service, std::string helperMethod, std::string ipcMethod,
                              std::string auxMethod, std::string registered) {
  patterns::InstanceNames n;
  n.helperPkg = std::move(helperPkg);
  n.servicePkg = std::move(servicePkg);
  n.iface = std::move(iface);
  n.helper = std::move(helper);
  n.service = std::move(service);
  n.helperMethod = std::move(helperMethod);
  n.ipcMethod = std::move(ipcMethod);
  n.auxMethod = std::move(auxMethod);
  n.registeredName = std::move(registered);
  return n;
}

FixturePattern fixture(std::string name, VulnClass c, bool vulnerable, const patterns::InstanceNames& n) {
  auto inst = patterns::emit(c, vulnerable, n);
  CorpusDocument doc;
  doc.externals = patterns::externals();
  doc.classes = inst.classes;
  doc.classes.push_back(patterns::system_server({inst}, "com.android.server.SystemServer"));
  FixturePattern f;
  f.name = std::move(name);
  f.document = serialize_corpus(doc, 2) + "\n";
  if (vulnerable) f.expected = inst.label;
  return f;
}

}  // namespace

std::vector<FixturePattern> fixture_patterns() {
  auto wallpaper = names("android.app", "com.android.server.wallpaper", "IWallpaperManager", "WallpaperManager",
                         "WallpaperManagerService", "peekWallpaperBitmap", "getWallpaper", "isWallpaperSupported",
                         "wallpaper");
  auto fingerprint = names("android.hardware.fingerprint", "com.android.server.fingerprint", "IFingerprintService",
                           "FingerprintManager", "FingerprintService", "authenticate", "authenticate",
                           "resolveFingerprintUser", "fingerprint");
  auto nfc = names("android.nfc", "com.android.server.nfc", "INfcAdapter", "NfcAdapter", "NfcService",
                   "enableForegroundDispatch", "setForegroundDispatch", "", "nfc");
  auto health = names("android.bluetooth", "com.android.bluetooth.hdp", "IBluetoothHealth", "BluetoothHealth",
                      "HealthService", "registerAppConfiguration", "registerAppConfiguration", "", "bluetooth_health");
  auto multicast = names("android.net.wifi", "com.android.server.wifi", "IWifiManager", "WifiManager",
                         "WifiServiceImpl", "acquire", "acquireMulticastLock", "MulticastLock", "wifi");
  auto notification = names("android.app", "com.android.server.notification", "INotificationManager",
                            "NotificationManager", "NotificationManagerService", "cancel", "cancelNotificationWithTag",
                            "resolveNotificationUid", "notification");

  return {
      fixture("code1-wallpaper", VulnClass::EnvBypass, true, wallpaper),
      fixture("code1-2-fingerprint", VulnClass::FakeIdentity, true, fingerprint),
      fixture("code2-nfc", VulnClass::FakeStatus, true, nfc),
      fixture("code3-health", VulnClass::IllegalParameter, true, health),
      fixture("code4-multicast", VulnClass::IpcFlood, true, multicast),
      fixture("code1-wallpaper-fixed", VulnClass::EnvBypass, false, wallpaper),
      fixture("code5-fixed", VulnClass::FakeIdentity, false, notification),
      fixture("code2-nfc-fixed", VulnClass::FakeStatus, false, nfc),
      fixture("code3-health-fixed", VulnClass::IllegalParameter, false, health),
      fixture("code4-multicast-fixed", VulnClass::IpcFlood, false, multicast),
  };
}

}  // namespace helper_audit

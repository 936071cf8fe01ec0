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

#include "patterns.hpp"

#include <cctype>
#include <optional>

namespace helper_audit::patterns {

namespace {

const char* kList = "java.util.ArrayList";
const char* kBinderUid = "android.os.Binder.getCallingUid()";

Operand V(const std::string& name) { return Operand::name(name); }
Operand S(const std::string& s) { return Operand::string_constant(s); }
Operand I(std::int64_t v) { return Operand::integer_constant(v); }
Operand B(bool v) { return Operand::boolean_constant(v); }

Statement invoke(Dispatch d, const std::string& target, std::optional<std::string> receiver,
                 std::vector<Operand> args, const std::string& result) {
  Invoke inv;
  inv.dispatch = d;
  inv.target = target;
  inv.receiver = std::move(receiver);
  inv.args = std::move(args);
  if (!result.empty()) inv.result = result;
  return Statement{inv};
}

Statement virt(const std::string& recv, const std::string& target, std::vector<Operand> args = {},
               const std::string& result = "") {
  return invoke(Dispatch::Virtual, target, recv, std::move(args), result);
}

Statement icall(const std::string& recv, const std::string& target, std::vector<Operand> args = {},
                const std::string& result = "") {
  return invoke(Dispatch::Interface, target, recv, std::move(args), result);
}

Statement stat(const std::string& target, std::vector<Operand> args = {}, const std::string& result = "") {
  return invoke(Dispatch::Static, target, std::nullopt, std::move(args), result);
}

Statement assign(const std::string& lhs, Operand rhs) { return Statement{Assign{lhs, rhs}}; }

Statement increment(const std::string& field) {
  return Statement{Assign{field, BinOp{V(field), "+", I(1)}}};
}

Statement when(Operand l, Relation r, Operand rhs, std::vector<Statement> then, std::vector<Statement> otherwise = {}) {
  If branch;
  branch.cond = Condition{std::move(l), r, std::move(rhs)};
  branch.thenBlock = std::move(then);
  branch.elseBlock = std::move(otherwise);
  return Statement{branch};
}

Statement raise(const std::string& type) { return Statement{Throw{"java.lang." + type}}; }
Statement ret() { return Statement{Return{}}; }
Statement ret(Operand v) { return Statement{Return{std::move(v)}}; }

MethodDef method(const std::string& name, std::vector<Param> params, const std::string& returnType,
                 std::vector<Statement> body) {
  lower_field_receivers(body);
  MethodDef m;
  m.name = name;
  m.params = std::move(params);
  m.signature = make_signature(name, m.params);
  m.returnType = returnType;
  m.body = std::move(body);
  return m;
}

MethodDef abstract_method(const std::string& name, std::vector<Param> params, const std::string& returnType) {
  auto m = method(name, std::move(params), returnType, {});
  m.isAbstract = true;
  return m;
}

std::string package_of(const std::string& cls) {
  auto cut = cls.find_last_of('.');
  return cut == std::string::npos ? std::string() : cls.substr(0, cut);
}

ClassDef make_class(const std::string& name, ClassKind kind, std::optional<std::string> super,
                    std::vector<std::string> interfaces, std::optional<std::string> enclosing,
                    std::vector<MethodDef> methods) {
  ClassDef c;
  c.name = name;
  c.package = package_of(name);
  c.kind = kind;
  c.superclass = std::move(super);
  c.interfaces = std::move(interfaces);
  c.enclosing = std::move(enclosing);
  c.methods = std::move(methods);
  return c;
}

// Default body of a proxy stub: return a neutral value.
std::vector<Statement> proxy_body(const std::string& returnType) {
  if (returnType == "void") return {};
  if (returnType == "boolean") return {ret(B(false))};
  if (returnType == "int") return {ret(I(0))};
  return {ret(Operand::null())};
}

struct IpcMethod {
  std::string name;
  std::vector<Param> params;
  std::string returnType = "void";
};

struct Skeleton {
  std::string iface, stub, proxy, service, helper;
};

// Interface, stub and proxy for the given IPC methods.
std::vector<ClassDef> ipc_classes(const Skeleton& k, const std::vector<IpcMethod>& ipc) {
  std::vector<MethodDef> decls, impls;
  for (const auto& m : ipc) {
    decls.push_back(abstract_method(m.name, m.params, m.returnType));
    impls.push_back(method(m.name, m.params, m.returnType, proxy_body(m.returnType)));
  }
  return {make_class(k.iface, ClassKind::Interface, std::nullopt, {"android.os.IInterface"}, std::nullopt, decls),
          make_class(k.stub, ClassKind::Abstract, "android.os.Binder", {k.iface, "android.os.IBinder"}, k.iface, {}),
          make_class(k.proxy, ClassKind::Class, std::nullopt, {k.iface}, k.stub, impls)};
}

std::string ref(const std::string& cls, const std::string& name, const std::vector<Param>& params) {
  return make_method_ref(cls, make_signature(name, params));
}

}  // namespace

void lower_field_receivers(std::vector<Statement>& body) {
  std::vector<Statement> out;
  for (auto& s : body) {
    if (auto* inv = std::get_if<Invoke>(&s.node); inv && inv->receiver && inv->receiver->find('.') != std::string::npos) {
      // "this.mService" -> local "service"
      auto field = *inv->receiver;
      auto local = field.substr(field.find_last_of('.') + 1);
      if (local.size() > 1 && local[0] == 'm' && std::isupper(static_cast<unsigned char>(local[1]))) {
        local = local.substr(1);
      }
      local[0] = static_cast<char>(std::tolower(static_cast<unsigned char>(local[0])));
      out.push_back(Statement{Assign{local, Operand::name(field)}});
      inv->receiver = local;
    } else if (auto* branch = std::get_if<If>(&s.node)) {
      lower_field_receivers(branch->thenBlock);
      lower_field_receivers(branch->elseBlock);
    }
    out.push_back(std::move(s));
  }
  body = std::move(out);
}

std::vector<std::string> externals() {
  return {"android.app.Activity",      "android.app.ActivityManager", "android.app.AppOpsManager",
          "android.content.Context",   "android.content.Intent",      "android.os.Binder",
          "android.os.Handler",        "android.os.IBinder",          "android.os.IInterface",
          "android.os.Process",        "android.os.ServiceManager",   "java.lang.Object",
          "java.lang.Runnable",        "java.lang.String",            "java.util.ArrayList"};
}

Instance emit(VulnClass pattern, bool vulnerable, const InstanceNames& n) {
  Skeleton k;
  k.iface = n.helperPkg + "." + n.iface;
  k.stub = k.iface + "$Stub";
  k.proxy = k.stub + "$Proxy";
  k.service = n.servicePkg + "." + n.service;
  k.helper = n.helperPkg + "." + n.helper;

  Instance out;
  out.serviceClass = k.service;
  out.registeredName = n.registeredName;
  out.label.vulnClass = pattern;

  std::vector<IpcMethod> ipc;
  std::vector<MethodDef> helperMethods, serviceMethods;
  std::vector<ClassDef> extra;
  const std::string add = std::string(kList) + ".add(java.lang.Object)";
  const std::string size = std::string(kList) + ".size()";

  switch (pattern) {
    case VulnClass::IllegalParameter: {
      std::vector<Param> p{{"name", "java.lang.String"}};
      ipc.push_back({n.ipcMethod, p, "void"});
      auto target = ref(k.iface, n.ipcMethod, p);
      std::vector<Statement> body;
      if (n.variant % 2 == 0) {
        body.push_back(when(V("name"), Relation::Eq, Operand::null(), {raise("IllegalArgumentException")}));
      } else {
        // Validation through a boolean helper method.
        helperMethods.push_back(method(n.auxMethod, p, "boolean",
                                       {when(V("name"), Relation::Eq, Operand::null(), {ret(B(false))}),
                                        ret(B(true))}));
        body.push_back(virt("this", ref(k.helper, n.auxMethod, p), {V("name")}, "ok"));
        body.push_back(when(V("ok"), Relation::Eq, B(false), {raise("IllegalArgumentException")}));
      }
      body.push_back(icall("this.mService", target, {V("name")}));
      helperMethods.push_back(method(n.helperMethod, p, "void", body));

      std::vector<Statement> svc;
      if (!vulnerable) svc.push_back(when(V("name"), Relation::Eq, Operand::null(), {raise("IllegalArgumentException")}));
      svc.push_back(virt("this.mConfigs", add, {V("name")}));
      serviceMethods.push_back(method(n.ipcMethod, p, "void", svc));
      out.label.ipcSignature = target;
      out.label.helper = ref(k.helper, n.helperMethod, p);
      break;
    }

    case VulnClass::FakeIdentity: {
      bool byUid = n.variant % 2 == 1;
      bool direct = (n.variant / 2) % 2 == 1;
      std::string idType = byUid ? "int" : "java.lang.String";
      std::vector<Param> p{{"caller", idType}, {"flags", "int"}};
      ipc.push_back({n.ipcMethod, p, "void"});
      auto target = ref(k.iface, n.ipcMethod, p);
      std::vector<Param> hp{{"flags", "int"}};
      std::vector<Statement> body;
      if (byUid) {
        body.push_back(stat("android.os.Process.myUid()", {}, "id"));
      } else {
        body.push_back(virt("this.mContext", "android.content.Context.getOpPackageName()", {}, "id"));
      }
      body.push_back(icall("this.mService", target, {V("id"), V("flags")}));
      helperMethods.push_back(method(n.helperMethod, hp, "void", body));

      std::vector<Statement> svc;
      if (vulnerable) {
        Operand trusted = byUid ? I(1000) : S("com.android.keyguard");
        svc.push_back(when(V("caller"), Relation::Eq, trusted, {assign("this.mTrusted", B(true))}));
      } else if (direct) {
        svc.push_back(stat(kBinderUid, {}, "uid"));
        svc.push_back(virt("this.mAppOps", "android.app.AppOpsManager." + n.auxMethod + "(int," + idType + ")",
                           {V("uid"), V("caller")}));
      } else {
        // The uid comes from Binder and the check runs in a resolver.
        std::vector<Param> rp{{"caller", idType}, {"uid", "int"}};
        serviceMethods.push_back(method(
            n.auxMethod, rp, "void",
            {virt("this.mAppOps", "android.app.AppOpsManager.checkPackage(int," + idType + ")",
                  {V("uid"), V("caller")})}));
        svc.push_back(stat(kBinderUid, {}, "uid"));
        svc.push_back(virt("this", ref(k.service, n.auxMethod, rp), {V("caller"), V("uid")}));
      }
      svc.push_back(assign("this.mLastFlags", V("flags")));
      serviceMethods.push_back(method(n.ipcMethod, p, "void", svc));
      out.label.ipcSignature = target;
      out.label.helper = ref(k.helper, n.helperMethod, hp);
      break;
    }

    case VulnClass::FakeStatus: {
      std::vector<Param> p{{"intent", "android.content.Intent"}};
      ipc.push_back({n.ipcMethod, p, "void"});
      auto target = ref(k.iface, n.ipcMethod, p);
      std::vector<Param> hp{{"activity", "android.app.Activity"}, {"intent", "android.content.Intent"}};
      std::vector<Statement> body{virt("activity", "android.app.Activity.isResumed()", {}, "resumed")};
      if (n.variant % 2 == 0) {
        body.push_back(when(V("resumed"), Relation::Eq, B(false), {raise("IllegalStateException")}));
        body.push_back(icall("this.mService", target, {V("intent")}));
      } else {
        body.push_back(when(V("resumed"), Relation::Eq, B(true), {icall("this.mService", target, {V("intent")})}));
      }
      helperMethods.push_back(method(n.helperMethod, hp, "void", body));

      std::vector<Statement> svc;
      if (!vulnerable) {
        svc.push_back(stat(kBinderUid, {}, "uid"));
        svc.push_back(virt("this.mActivityManager", "android.app.ActivityManager.isUidForeground(int)", {V("uid")},
                           "foreground"));
        svc.push_back(when(V("foreground"), Relation::Eq, B(false), {raise("SecurityException")}));
      }
      svc.push_back(assign("this.mDispatch", V("intent")));
      serviceMethods.push_back(method(n.ipcMethod, p, "void", svc));
      out.label.ipcSignature = target;
      out.label.helper = ref(k.helper, n.helperMethod, hp);
      break;
    }

    case VulnClass::EnvBypass: {
      ipc.push_back({n.auxMethod, {}, "boolean"});
      ipc.push_back({n.ipcMethod, {}, "java.lang.Object"});
      auto gate = ref(k.iface, n.auxMethod, {});
      auto target = ref(k.iface, n.ipcMethod, {});
      std::vector<Statement> body{icall("this.mService", gate, {}, "supported")};
      if (n.variant % 2 == 0) {
        body.push_back(when(V("supported"), Relation::Eq, B(true),
                            {icall("this.mService", target, {}, "data"), ret(V("data"))}));
        body.push_back(ret(Operand::null()));
      } else {
        body.push_back(when(V("supported"), Relation::Eq, B(false), {ret(Operand::null())}));
        body.push_back(icall("this.mService", target, {}, "data"));
        body.push_back(ret(V("data")));
      }
      helperMethods.push_back(method(n.helperMethod, {}, "java.lang.Object", body));

      serviceMethods.push_back(method(n.auxMethod, {}, "boolean", {ret(V("this.mSupported"))}));
      std::vector<Statement> svc;
      if (!vulnerable) {
        svc.push_back(virt("this", ref(k.service, n.auxMethod, {}), {}, "ok"));
        svc.push_back(when(V("ok"), Relation::Eq, B(false), {raise("SecurityException")}));
      }
      svc.push_back(ret(V("this.mData")));
      serviceMethods.push_back(method(n.ipcMethod, {}, "java.lang.Object", svc));
      out.label.ipcSignature = target;
      out.label.helper = ref(k.helper, n.helperMethod, {});
      break;
    }

    case VulnClass::IpcFlood: {
      if (n.variant % 2 == 0) {
        // A lock object nested in the helper counts its own acquisitions.
        std::vector<Param> p{{"binder", "android.os.IBinder"}, {"tag", "java.lang.String"}};
        ipc.push_back({n.ipcMethod, p, "void"});
        auto target = ref(k.iface, n.ipcMethod, p);
        auto inner = k.helper + "$" + n.auxMethod;
        extra.push_back(make_class(
            inner, ClassKind::Class, std::nullopt, {}, k.helper,
            {method(n.helperMethod, {}, "void",
                    {when(V("this.mRefCount"), Relation::Ge, I(50), {ret()}), increment("this.mRefCount"),
                     icall("this.mService", target, {V("this.mBinder"), V("this.mTag")})})}));
        std::vector<Statement> svc;
        if (!vulnerable) {
          svc.push_back(when(V("this.mLockCount"), Relation::Ge, I(50), {raise("IllegalStateException")}));
          svc.push_back(increment("this.mLockCount"));
        }
        svc.push_back(virt("this.mLocks", add, {V("binder")}));
        serviceMethods.push_back(method(n.ipcMethod, p, "void", svc));
        out.label.ipcSignature = target;
        out.label.helper = ref(inner, n.helperMethod, {});
      } else {
        // Listeners are queued locally; only the first one reaches the service.
        std::vector<Param> p{{"callback", "android.os.IBinder"}};
        ipc.push_back({n.ipcMethod, p, "void"});
        auto target = ref(k.iface, n.ipcMethod, p);
        auto listener = k.helper + "$On" + n.auxMethod + "Listener";
        extra.push_back(make_class(listener, ClassKind::Interface, std::nullopt, {}, k.helper,
                                   {abstract_method("on" + n.auxMethod, {}, "void")}));
        std::vector<Param> hp{{"listener", listener}};
        helperMethods.push_back(method(
            n.helperMethod, hp, "void",
            {virt("this.mListeners", add, {V("listener")}), virt("this.mListeners", size, {}, "count"),
             when(V("count"), Relation::Eq, I(1), {icall("this.mService", target, {V("this.mCallback")})})}));
        std::vector<Statement> svc;
        if (!vulnerable) {
          svc.push_back(virt("this.mCallbacks", size, {}, "count"));
          svc.push_back(when(V("count"), Relation::Ge, I(8), {raise("IllegalStateException")}));
        }
        svc.push_back(virt("this.mCallbacks", add, {V("callback")}));
        serviceMethods.push_back(method(n.ipcMethod, p, "void", svc));
        out.label.ipcSignature = target;
        out.label.helper = ref(k.helper, n.helperMethod, hp);
      }
      break;
    }
  }

  out.classes = ipc_classes(k, ipc);
  out.classes.push_back(make_class(k.helper, ClassKind::Class, std::nullopt, {}, std::nullopt, helperMethods));
  for (auto& c : extra) out.classes.push_back(std::move(c));
  out.classes.push_back(make_class(k.service, ClassKind::Class, k.stub, {}, std::nullopt, serviceMethods));
  return out;
}

ClassDef system_server(const std::vector<Instance>& instances, const std::string& className) {
  std::vector<Statement> body;
  for (std::size_t i = 0; i < instances.size(); ++i) {
    auto var = "s" + std::to_string(i);
    body.push_back(invoke(Dispatch::Special, instances[i].serviceClass + ".<init>()", std::nullopt, {}, var));
    body.push_back(stat("android.os.ServiceManager.addService(java.lang.String,android.os.IBinder)",
                        {S(instances[i].registeredName), V(var)}));
  }
  auto m = method("startServices", {}, "void", body);
  m.isStatic = true;
  return make_class(className, ClassKind::Class, std::nullopt, {}, std::nullopt, {m});
}

}  // namespace helper_audit::patterns

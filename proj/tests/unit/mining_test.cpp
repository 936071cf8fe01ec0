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
#include "helper_audit/corpus_io.hpp"
#include "helper_audit/mining.hpp"
#include "helper_audit/seeds.hpp"
#include "support.hpp"

using namespace helper_audit;
using nlohmann::json;

namespace {

Transaction tx(std::set<std::string> items) { return Transaction{"", std::move(items)}; }

std::vector<FrequentItemset> sorted(std::vector<FrequentItemset> v) {
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace

TEST(Transactions, ChainItemsIncludeCallees) {
  json call = {{"op", "invoke"}, {"dispatch", "static"}, {"target", "x.AppOps.checkOp(int)"}, {"args", json::array({1})}};
  json toG = {{"op", "invoke"}, {"dispatch", "static"}, {"target", "a.A.g()"}};
  json toP = {{"op", "invoke"}, {"dispatch", "static"}, {"target", "a.P.proxy()"}};
  auto st = json::array({"static"});
  auto c = test_support::corpus(
      json::array({{{"name", "a.A"}, {"kind", "class"},
                    {"methods", json::array({{{"name", "h"}, {"signature", "h()"}, {"modifiers", st}, {"body", json::array({toG})}},
                                             {{"name", "g"}, {"signature", "g()"}, {"modifiers", st}, {"body", json::array({call, toP})}}})}},
                   {{"name", "a.P"}, {"kind", "class"},
                    {"methods", json::array({{{"name", "proxy"}, {"signature", "proxy()"}, {"modifiers", st}}})}}}),
      json::array({"x.AppOps"}));
  CallChain chain{{"a.A.h()", "a.A.g()", "a.P.proxy()"}, {{0}, {1}}};
  auto txs = build_transactions(c, {{"a.I.p()", chain}, {"a.I.p()", chain}});
  ASSERT_EQ(txs.size(), 2u);
  EXPECT_EQ(txs[0], txs[1]);
  for (const char* item : {"h", "g", "proxy", "checkOp"}) EXPECT_TRUE(txs[0].items.count(item)) << item;
  EXPECT_TRUE(build_transactions(c, {}).empty());
}

TEST(FpGrowth, Empty) { EXPECT_TRUE(fp_growth({}, {}).empty()); }

TEST(FpGrowth, SmallExample) {
  std::vector<Transaction> txs = {tx({"a", "b"}), tx({"a", "b"}), tx({"a", "b"}), tx({"a", "c"})};
  auto got = sorted(fp_growth(txs, {}, {3, 1000, 4}));
  std::vector<FrequentItemset> want = {{{"a"}, 4}, {{"a", "b"}, 3}, {{"b"}, 3}};
  EXPECT_EQ(got, sorted(want));
  EXPECT_EQ(got, oracle::apriori(txs, {}, 3));
}

TEST(FpGrowth, SeedExemption) {
  std::vector<Transaction> txs = {tx({"a", "b"}), tx({"a", "b"}), tx({"a", "b"}), tx({"a", "c"})};
  auto got = sorted(fp_growth(txs, {"c"}, {3, 1000, 4}));
  std::vector<FrequentItemset> want = {{{"a"}, 4}, {{"a", "b"}, 3}, {{"a", "c"}, 1}, {{"b"}, 3}, {{"c"}, 1}};
  EXPECT_EQ(got, sorted(want));
  EXPECT_EQ(got, oracle::apriori(txs, {"c"}, 3));
}

TEST(FpGrowth, SizeCap) {
  std::vector<Transaction> txs(3, tx({"a", "b", "c", "d", "e"}));
  for (const auto& s : fp_growth(txs, {}, {3, 1000, 2})) EXPECT_LE(s.items.size(), 2u);
  EXPECT_EQ(sorted(fp_growth(txs, {}, {3, 1000, 2})), oracle::apriori(txs, {}, 3, 2));
}

TEST(FpGrowth, RandomAgainstApriori) {
  std::mt19937_64 rng(42);
  for (int round = 0; round < 300; ++round) {
    auto txs = oracle::random_transactions(rng);
    std::size_t minSupport = 1 + rng() % 3;
    std::set<std::string> seeds;
    if (round % 2) {
      for (char ch = 'a'; ch <= 'f'; ++ch) {
        if (rng() % 3 == 0) seeds.insert(std::string(1, ch));
      }
    }
    ASSERT_EQ(sorted(fp_growth(txs, seeds, {minSupport, 1000, 4})), oracle::apriori(txs, seeds, minSupport))
        << "round " << round;
  }
}

TEST(KeywordFilter, AccessNameNextToSeed) {
  auto vocab = SeedVocabulary::from_seeds(SeedList::defaults());
  auto mined = keyword_filter({{{"getCallingUid", "getCallingUserId"}, 3}, {{"getCallingUserId"}, 4}, {{"getCallingUid"}, 5}},
                              vocab);
  EXPECT_EQ(mined.identityAccessMined, (std::set<std::string>{"getCallingUserId"}));
  EXPECT_TRUE(mined.identityEnforceMined.empty());
  EXPECT_EQ(mined.supportCounts.at("getCallingUserId"), 4u);
}

TEST(KeywordFilter, EnforceNameNextToSeed) {
  auto vocab = SeedVocabulary::from_seeds(SeedList::defaults());
  auto mined = keyword_filter({{{"checkPermission", "enforceAccessPermission"}, 3}, {{"enforceAccessPermission"}, 3}}, vocab);
  EXPECT_EQ(mined.identityEnforceMined, (std::set<std::string>{"enforceAccessPermission"}));
}

TEST(KeywordFilter, NoKeywordDropped) {
  auto vocab = SeedVocabulary::from_seeds(SeedList::defaults());
  auto mined = keyword_filter({{{"checkPermission", "drawFrame"}, 3}, {{"drawFrame"}, 3}}, vocab);
  EXPECT_TRUE(mined.identityAccessMined.empty());
  EXPECT_TRUE(mined.identityEnforceMined.empty());
}

TEST(KeywordFilter, AloneIsNotEnough) {
  auto vocab = SeedVocabulary::from_seeds(SeedList::defaults());
  auto mined = keyword_filter({{{"enforceAccessPermission"}, 9}}, vocab);
  EXPECT_TRUE(mined.identityEnforceMined.empty());
}

TEST(Tokenize, CamelAndJoined) {
  auto t = tokenize_identifier("getCallingUserId");
  for (const char* tok : {"get", "calling", "user", "id", "userid"}) EXPECT_TRUE(t.count(tok)) << tok;
  EXPECT_TRUE(tokenize_identifier("check_uid_permission").count("uid"));
}

// Copyright 2026 The ddprep Authors
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

#include <algorithm>
#include <set>
#include <sstream>

#include "ddprep/basis.hpp"
#include "ddprep/errors.hpp"
#include "ddprep/models.hpp"

using namespace ddprep;

namespace {

std::uint64_t pascal(std::size_t n, std::size_t k) {
  std::vector<std::vector<std::uint64_t>> row(n + 1, std::vector<std::uint64_t>(n + 1, 0));
  for (std::size_t i = 0; i <= n; ++i) {
    row[i][0] = 1;
    for (std::size_t j = 1; j <= i; ++j) row[i][j] = row[i - 1][j - 1] + (j < i ? row[i - 1][j] : 0);
  }
  return row[n][k];
}

// Number of balanced words of length 2m by the ballot recursion.
std::uint64_t dyck_count(std::size_t length) {
  std::vector<std::uint64_t> h(length + 2, 0);
  h[0] = 1;
  for (std::size_t s = 0; s < length; ++s) {
    std::vector<std::uint64_t> next(length + 2, 0);
    for (std::size_t k = 0; k <= length; ++k) {
      if (!h[k]) continue;
      next[k + 1] += h[k];
      if (k) next[k - 1] += h[k];
    }
    h = next;
  }
  return h[0];
}

}  // namespace

TEST(Configuration, StringRoundTrip) {
  const auto c = Configuration::from_string("1011001");
  EXPECT_EQ(c.to_string(7), "1011001");
  EXPECT_TRUE(c.test(0));
  EXPECT_FALSE(c.test(1));
  EXPECT_TRUE(c.test(6));
  EXPECT_EQ(c.popcount(), 4u);
  EXPECT_EQ(c.width(), 7u);
}

TEST(Configuration, WideBitsAndOrdering) {
  Configuration a, b;
  a.set(70);
  b.set(3);
  EXPECT_TRUE(b < a);
  EXPECT_EQ((a | b).popcount(), 2u);
  a.flip(70);
  EXPECT_FALSE(a.any());
}

TEST(Binomial, MatchesPascal) {
  for (std::size_t n = 0; n <= 40; ++n)
    for (std::size_t k = 0; k <= n; ++k) EXPECT_EQ(binomial(n, k), pascal(n, k)) << n << " " << k;
  EXPECT_EQ(binomial(5, 7), 0u);
}

TEST(MagnetizationSector, SizeOrderAndLookup) {
  const auto b = enumerate_magnetization_sector(12, 5);
  ASSERT_EQ(b->size(), pascal(12, 5));
  EXPECT_TRUE(std::is_sorted(b->configs().begin(), b->configs().end()));
  for (std::size_t i = 0; i < b->size(); ++i) {
    EXPECT_EQ((*b)[i].popcount(), 5u);
    EXPECT_EQ(b->index((*b)[i]), i);
  }
  EXPECT_EQ(b->find(Configuration::from_string("111111000000")), -1);
  EXPECT_THROW(b->index(Configuration::from_string("111111000000")), Error);
  EXPECT_FALSE(b->is_full_space());
}

TEST(MagnetizationSector, BudgetIsEnforced) {
  EXPECT_THROW(enumerate_magnetization_sector(20, 10, 1000), CapacityError);
}

TEST(FullSpace, NaturalOrder) {
  const auto b = enumerate_full_space(6);
  ASSERT_EQ(b->size(), 64u);
  EXPECT_TRUE(b->is_full_space());
  for (std::size_t i = 0; i < 64; ++i) EXPECT_EQ((*b)[i].word(0), i);
}

TEST(ReachableSector, ExchangeMovesGiveTheMagnetizationSector) {
  std::vector<LocalMove> moves;
  for (std::size_t i = 0; i + 1 < 8; ++i) moves.push_back({{i, i + 1}, "01", "10"});
  const auto seed = Configuration::from_string("00001111");
  for (auto order : {Traversal::breadth_first, Traversal::depth_first}) {
    const auto b = enumerate_reachable_sector(8, seed, moves, "xy", kDefaultBasisBudget, order);
    EXPECT_EQ(b->size(), pascal(8, 4));
    EXPECT_TRUE(std::is_sorted(b->configs().begin(), b->configs().end()));
  }
}

TEST(ReachableSector, BudgetIsEnforced) {
  std::vector<LocalMove> moves;
  for (std::size_t i = 0; i + 1 < 16; ++i) moves.push_back({{i, i + 1}, "01", "10"});
  EXPECT_THROW(enumerate_reachable_sector(16, Configuration::from_string("0000000011111111"), moves, "xy", 100),
               CapacityError);
}

TEST(ApplyMove, PatternMatchInSupportOrder) {
  const LocalMove m{{1, 3}, "01", "10"};
  // support[0] = site 1 reads the first character
  auto c = Configuration::from_string("1000");  // site 3 set
  auto r = apply_move(c, m);
  ASSERT_TRUE(r.has_value());
  EXPECT_EQ(r->to_string(4), "0010");
  EXPECT_FALSE(apply_move(Configuration::from_string("0000"), m).has_value());
}

TEST(FredkinSector, CountsBalancedWords) {
  for (std::size_t n : {4u, 6u, 8u, 10u, 12u}) {
    const auto m = build_fredkin(n);
    // two implicit boundary characters close the word
    EXPECT_EQ(m.basis->size(), dyck_count(n + 2)) << n;
    for (const auto& c : m.basis->configs()) EXPECT_TRUE(fredkin_is_dyck(n, c));
  }
}

TEST(QdmSector, EveryMemberIsAPerfectMatching) {
  const auto m = build_qdm(4, 4);
  EXPECT_EQ(m.basis->size(), 36u);
  std::set<std::string> seen;
  for (const auto& c : m.basis->configs()) {
    EXPECT_TRUE(qdm_is_perfect_matching(4, 4, c));
    EXPECT_TRUE(seen.insert(c.to_string(m.basis->n_sites())).second);
  }
}

TEST(SectorBasis, DumpListsEveryMember) {
  const auto b = enumerate_magnetization_sector(4, 2);
  std::ostringstream os;
  b->dump(os);
  const std::string s = os.str();
  EXPECT_NE(s.find("0011"), std::string::npos);
  EXPECT_NE(s.find("1100"), std::string::npos);
}

TEST(ApplyMove, RejectsMalformedPatterns) {
  EXPECT_THROW(apply_move(Configuration{}, {{0, 1}, "01", "1"}), MalformedMoveError);
  EXPECT_THROW(apply_move(Configuration{}, {{0, 0}, "01", "10"}), MalformedMoveError);
  EXPECT_THROW(apply_move(Configuration{}, {{0, 1}, "0x", "10"}), MalformedMoveError);
}

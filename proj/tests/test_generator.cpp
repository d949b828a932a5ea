// Copyright 2026 The qsat Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qsat/generator.hpp"

#include <gtest/gtest.h>

using namespace qsat;

TEST(RankDistTest, Parses) {
  EXPECT_EQ(parse_rank_dist("1:0.5,2:0.3,3:0.15,4:0.05"), (RankDist{0.5, 0.3, 0.15, 0.05}));
  EXPECT_EQ(parse_rank_dist("3:2"), (RankDist{0, 0, 2, 0}));
  for (const char *bad : {"", "5:1", "1", "1:x", "1:-1", "0:1", "1:0", "1:0.5x"})
    EXPECT_THROW(parse_rank_dist(bad), ParseError) << bad;
}

TEST(GeneratorTest, DeterministicPerSeed) {
  GenOptions o;
  o.n = 6;
  o.pairs = 8;
  o.units = 2;
  o.rank_dist = {0.4, 0.3, 0.2, 0.1};
  o.seed = 77;
  std::string a = serialize_instance(generate_instance(o));
  EXPECT_EQ(serialize_instance(generate_instance(o)), a);
  o.seed = 78;
  EXPECT_NE(serialize_instance(generate_instance(o)), a);
}

TEST(GeneratorTest, RankDistributionIsHonoured) {
  GenOptions o;
  o.n = 40;
  o.pairs = 10;
  o.rank_dist = {0, 0, 1, 0};
  o.seed = 3;
  QSatInstance inst = generate_instance(o);
  for (const auto &[pair, pc] : inst.pairs()) EXPECT_GE(pc.rank(), 3U);
  EXPECT_TRUE(inst.units().empty());
}

TEST(GeneratorTest, ProductFraction) {
  GenOptions o;
  o.n = 30;
  o.pairs = 20;
  o.product_fraction = 1.0;
  o.seed = 9;
  QSatInstance inst = generate_instance(o);
  for (const auto &[pair, pc] : inst.pairs())
    for (const auto &t : pc.tensors()) EXPECT_EQ(rank(t), 1U);
}

TEST(GeneratorTest, EntriesAreSmall) {
  Rng rng(1);
  for (int i = 0; i < 500; ++i) {
    Rational q = random_rational(rng);
    EXPECT_LE(abs(q.get_num()), 9);
    EXPECT_LE(q.get_den(), 4);
  }
  EXPECT_FALSE(is_zero(random_vec(rng, 3)));
}

TEST(GeneratorTest, RandomCnfHasNoTautologies) {
  Cnf2 f = random_cnf(5, 200, 4);
  EXPECT_LE(f.clauses().size(), 200U);
  for (const auto &[a, b] : f.clauses()) EXPECT_FALSE(a == ~b);
}

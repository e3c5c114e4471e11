// Copyright 2026 The hiereval Authors
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

#include "hiereval/alignment.h"

#include <cmath>
#include <string>
#include <vector>

#include "brute_force.h"
#include "generators.h"
#include "gtest/gtest.h"
#include "hiereval/error.h"
#include "test_util.h"

namespace hiereval {
namespace {

using testing_util::CodeOf;
using testing_util::Cxr;
using testing_util::T0;
using Strings = std::vector<std::string>;

TEST(PositiveChainTest, Examples) {
  EXPECT_EQ(PositiveChain(Cxr(), "air_trapping"),
            (Strings{"Pulmonary and Pleural Diseases", "Pulmonary Patterns",
                     "Hyperinflated lung", "Signs of air trapping"}));
  EXPECT_EQ(PositiveChain(T0(), "A2.1"), (Strings{"A", "A2", "A2.1"}));
  EXPECT_EQ(PositiveChain(T0(), "A2.1", true),
            (Strings{"root", "A", "A2", "A2.1"}));
  const Taxonomy flat = ParseTaxonomy(
      R"({"nodes": [{"id": "r"}, {"id": "x", "name": "X", "parent": "r"}]})");
  EXPECT_EQ(PositiveChain(flat, "x"), Strings{"X"});
  EXPECT_EQ(CodeOf([] { PositiveChain(T0(), "A1"); }), ErrorCode::kNotALeaf);
  EXPECT_EQ(CodeOf([] { PositiveChain(T0(), "nope"); }),
            ErrorCode::kUnknownNode);
}

TEST(NegativeChainTest, AirTrappingLevelOne) {
  const auto negs =
      NegativeChains(Cxr(), "air_trapping", NegativeMode::kAllSiblings);
  ASSERT_FALSE(negs.empty());
  EXPECT_EQ(negs[0].level, 1);
  EXPECT_EQ(negs[0].sibling, "thoracic");
  EXPECT_EQ(negs[0].chain,
            (Strings{"Thoracic Structural Abnormalities", "Pulmonary Patterns",
                     "Hyperinflated lung", "Signs of air trapping"}));
  // patterns has no sibling, hyperinflated has nodule, air_trapping none.
  ASSERT_EQ(negs.size(), 2u);
  EXPECT_EQ(negs[1].level, 3);
  EXPECT_EQ(negs[1].sibling, "nodule");
}

TEST(NegativeChainTest, T0AllSiblings) {
  const auto negs = NegativeChains(T0(), "A2.1", NegativeMode::kAllSiblings);
  ASSERT_EQ(negs.size(), 3u);
  EXPECT_EQ(negs[0].level, 1);
  EXPECT_EQ(negs[0].chain, (Strings{"B", "A2", "A2.1"}));
  EXPECT_EQ(negs[1].level, 2);
  EXPECT_EQ(negs[1].chain, (Strings{"A", "A1", "A2.1"}));
  EXPECT_EQ(negs[2].level, 3);
  EXPECT_EQ(negs[2].chain, (Strings{"A", "A2", "A2.2"}));

  // Level 3 of A1.1 has six siblings, in id order.
  const auto many = NegativeChains(T0(), "A1.1", NegativeMode::kAllSiblings);
  ASSERT_EQ(many.size(), 1u + 1u + 6u);
  EXPECT_EQ(many[2].sibling, "A1.2");
  EXPECT_EQ(many[7].sibling, "A1.7");
}

TEST(NegativeChainTest, SinglePathHasNoNegatives) {
  const Taxonomy path = ParseTaxonomy(R"({"nodes": [
      {"id": "r"}, {"id": "a", "parent": "r"}, {"id": "b", "parent": "a"}]})");
  EXPECT_TRUE(NegativeChains(path, "b", NegativeMode::kAllSiblings).empty());
  EXPECT_TRUE(NegativeChains(path, "b", NegativeMode::kOnePerLevel).empty());
}

TEST(NegativeChainTest, OnePerLevelIsDeterministic) {
  std::size_t differs = 0;
  for (const auto& cs : BuildAllChainSets(T0(), NegativeMode::kOnePerLevel, 1)) {
    const auto again =
        NegativeChains(T0(), cs.leaf, NegativeMode::kOnePerLevel, 1);
    ASSERT_EQ(again.size(), 3u);
    for (std::size_t k = 0; k < again.size(); ++k) {
      EXPECT_EQ(again[k].level, static_cast<int>(k) + 1);
      EXPECT_EQ(again[k].sibling, cs.negatives[k].sibling);
    }
    const auto other =
        NegativeChains(T0(), cs.leaf, NegativeMode::kOnePerLevel, 2);
    for (std::size_t k = 0; k < other.size(); ++k) {
      differs += other[k].sibling != again[k].sibling;
    }
  }
  EXPECT_GT(differs, 0u);
}

TEST(ChainPropertyTest, StructureOnRandomTrees) {
  gen::Rng rng(41);
  for (int trial = 0; trial < 30; ++trial) {
    const Taxonomy t = Taxonomy::FromNodes(gen::RandomTree(rng, 40));
    for (const auto& cs : BuildAllChainSets(t, NegativeMode::kAllSiblings)) {
      const NodeIndex leaf = t.index_of(cs.leaf);
      ASSERT_EQ(static_cast<int>(cs.positive.size()), t.depth(leaf));
      EXPECT_EQ(cs.positive.back(), t.name(leaf));
      // Positive chain is the reversed parent walk.
      NodeIndex n = leaf;
      for (auto it = cs.positive.rbegin(); it != cs.positive.rend(); ++it) {
        EXPECT_EQ(*it, t.name(n));
        n = t.parent(n);
      }
      EXPECT_EQ(n, t.root());
      const auto path = t.path_from_root(leaf);
      for (const auto& neg : cs.negatives) {
        const NodeIndex orig = path[neg.level];
        const NodeIndex sib = t.index_of(neg.sibling);
        EXPECT_NE(sib, orig);
        EXPECT_EQ(t.parent(sib), t.parent(orig));
        int edits = 0;
        for (std::size_t k = 0; k < cs.positive.size(); ++k) {
          edits += neg.chain[k] != cs.positive[k];
        }
        EXPECT_EQ(edits, 1);
        Strings back = neg.chain;
        back[neg.level - 1] = t.name(orig);
        EXPECT_EQ(back, cs.positive);
      }
    }
  }
}

TEST(BuildAllChainSetsTest, CoversLeavesInIdOrder) {
  const auto sets = BuildAllChainSets(T0(), NegativeMode::kAllSiblings);
  ASSERT_EQ(sets.size(), 17u);
  EXPECT_EQ(sets.front().leaf, "A1.1");
  EXPECT_EQ(sets.back().leaf, "B3.2");
}

TEST(Fnv1aTest, ReferenceValues) {
  EXPECT_EQ(Fnv1a64(""), 0xcbf29ce484222325ull);
  EXPECT_EQ(Fnv1a64("a"), 0xaf63dc4c8601ec8cull);
  EXPECT_EQ(Fnv1a64("foobar"), 0x85944171f73967e8ull);
}

TEST(KendallTest, Examples) {
  const std::vector<double> inc{0.1, 0.2, 0.5, 0.9};
  const std::vector<double> dec{0.9, 0.5, 0.2, 0.1};
  EXPECT_EQ(DepthTau(inc), 1.0);
  EXPECT_EQ(DepthTau(dec), -1.0);
  const std::vector<double> mixed{0.2, 0.1, 0.3};
  EXPECT_DOUBLE_EQ(*DepthTau(mixed), 1.0 / 3.0);
  const std::vector<double> flat{0.4, 0.4, 0.4};
  EXPECT_FALSE(DepthTau(flat).has_value());
  const std::vector<double> one{0.4};
  EXPECT_EQ(CodeOf([&] { DepthTau(one); }), ErrorCode::kSequenceTooShort);
  EXPECT_EQ(CodeOf([&] { KendallTauB(inc, mixed); }),
            ErrorCode::kInvalidArgument);
}

TEST(KendallTest, TieHandling) {
  // Pairs: (1,2) tied in y, others concordant. C=2, D=0, Ty=1.
  const std::vector<double> y{0.5, 0.5, 0.9};
  EXPECT_NEAR(*DepthTau(y), 2.0 / std::sqrt(3.0 * 2.0), 1e-15);
  const std::vector<double> x{1, 1, 2, 2};
  const std::vector<double> z{3, 3, 1, 1};
  EXPECT_NEAR(*KendallTauB(x, z), -1.0, 1e-15);
}

TEST(KendallPropertyTest, MatchesPairOracleOnRandomInputs) {
  gen::Rng rng(42);
  std::uniform_real_distribution<double> unit;
  for (int trial = 0; trial < 2000; ++trial) {
    const int n = gen::Uniform(rng, 2, 40);
    std::vector<double> x(n), y(n);
    for (int i = 0; i < n; ++i) {
      x[i] = gen::Uniform(rng, 0, trial % 7 + 1);
      y[i] = trial % 2 ? unit(rng) : gen::Uniform(rng, 0, 3);
    }
    const auto got = KendallTauB(x, y);
    const auto want = oracle::TauB(x, y);
    ASSERT_EQ(got.has_value(), want.has_value());
    if (got) {
      EXPECT_NEAR(*got, *want, 1e-12);
    }
  }
}

TEST(KendallPropertyTest, TransformsAndClassicFormula) {
  gen::Rng rng(43);
  std::uniform_real_distribution<double> unit;
  for (int trial = 0; trial < 500; ++trial) {
    const int n = gen::Uniform(rng, 2, 12);
    std::vector<double> s(n), exp_s(n), neg(n);
    for (int i = 0; i < n; ++i) {
      s[i] = gen::Uniform(rng, 0, 4) + (trial % 2 ? unit(rng) : 0.0);
      exp_s[i] = std::exp(3 * s[i]);
      neg[i] = -s[i];
    }
    const auto t = DepthTau(s);
    if (!t) continue;
    EXPECT_NEAR(*DepthTau(exp_s), *t, 1e-12);
    EXPECT_NEAR(*DepthTau(neg), -*t, 1e-12);
    if (trial % 2) {
      // Tie-free: (C - D) / (n(n-1)/2).
      long c = 0, d = 0;
      for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) (s[j] > s[i] ? c : d)++;
      }
      EXPECT_NEAR(*t, static_cast<double>(c - d) / (n * (n - 1) / 2.0), 1e-12);
    }
  }
}

PathScoreSequence Seq(std::vector<double> scores) {
  PathScoreSequence s;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    s.path.push_back("n" + std::to_string(i));
  }
  s.scores = std::move(scores);
  return s;
}

TEST(TauSummaryTest, Examples) {
  const std::vector<PathScoreSequence> up{Seq({1, 2, 3}), Seq({0.1, 0.5})};
  const TauSummary a = SummarizeTau(up);
  EXPECT_EQ(a.mean, 1.0);
  EXPECT_EQ(a.sd, 0.0);
  EXPECT_EQ(a.n_sequences, 2u);

  const std::vector<PathScoreSequence> mix{Seq({1, 2}), Seq({2, 1}),
                                           Seq({1, 2, 3}), Seq({3, 2, 1})};
  const TauSummary b = SummarizeTau(mix);
  EXPECT_EQ(b.mean, 0.0);
  EXPECT_EQ(b.sd, 1.0);

  const std::vector<PathScoreSequence> flat{Seq({1, 1}), Seq({2, 2, 2}),
                                            Seq({4}), Seq({})};
  const TauSummary c = SummarizeTau(flat);
  EXPECT_EQ(c.n_sequences, 0u);
  EXPECT_EQ(c.n_skipped, 4u);
  EXPECT_FALSE(c.mean.has_value());
  EXPECT_FALSE(c.sd.has_value());

  const TauSummary empty = SummarizeTau({});
  EXPECT_EQ(empty.n_sequences + empty.n_skipped, 0u);
}

TEST(TauSummaryTest, CalibratedMixture) {
  // 29 paths at tau 1 and 21 at tau 2/3 average to 0.86.
  std::vector<PathScoreSequence> seqs;
  for (int i = 0; i < 29; ++i) seqs.push_back(Seq({0.1, 0.2, 0.3, 0.4}));
  for (int i = 0; i < 21; ++i) seqs.push_back(Seq({0.2, 0.1, 0.3, 0.4}));
  const TauSummary s = SummarizeTau(seqs);
  EXPECT_NEAR(*s.mean, 0.86, 1e-12);
  const double sd = std::sqrt(0.58 * 0.42) / 3.0;
  EXPECT_NEAR(*s.sd, sd, 1e-12);
}

}  // namespace
}  // namespace hiereval

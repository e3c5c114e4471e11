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

#include "hiereval/resampling.h"

#include <algorithm>
#include <vector>

#include "brute_force.h"
#include "generators.h"
#include "gtest/gtest.h"
#include "hiereval/error.h"
#include "hiereval/philox.h"
#include "test_util.h"

namespace hiereval {
namespace {

using testing_util::CodeOf;
using testing_util::T0;

// Ten examples, the first four cross-branch (CAE), the rest exact hits.
std::vector<EvaluatedExample> TenFlags() {
  const std::vector<std::string> a{"A1.1"}, b{"B3.2"};
  std::vector<EvaluatedExample> out;
  for (int i = 0; i < 10; ++i) {
    out.push_back({"e" + std::to_string(i), BindLabels(T0(), a),
                   BindLabels(T0(), i < 4 ? b : a)});
  }
  return out;
}

double CaeOf(Examples d) { return CaeRate(d, T0()); }

TEST(BootstrapConfigTest, Validate) {
  EXPECT_NO_THROW(BootstrapConfig{}.Validate());
  EXPECT_EQ(CodeOf([] { BootstrapConfig{.n_resamples = 0}.Validate(); }),
            ErrorCode::kInvalidArgument);
  EXPECT_EQ(CodeOf([] { BootstrapConfig{.confidence = 1.0}.Validate(); }),
            ErrorCode::kInvalidArgument);
  EXPECT_EQ(CodeOf([] { BootstrapConfig{.confidence = 0.0}.Validate(); }),
            ErrorCode::kInvalidArgument);
}

TEST(ResampleIndicesTest, FollowsTheCounterContract) {
  const auto idx = ResampleIndices(42, 7, 13);
  ASSERT_EQ(idx.size(), 13u);
  for (std::size_t j = 0; j < idx.size(); ++j) {
    const PhiloxCounter out = Philox4x32(
        {static_cast<std::uint32_t>(j), 0, 7, 0}, {42, 0});
    __extension__ using U128 = unsigned __int128;
    const std::uint64_t bits = (std::uint64_t{out[1]} << 32) | out[0];
    EXPECT_EQ(idx[j], static_cast<std::size_t>((U128{bits} * 13) >> 64));
  }
  EXPECT_NE(ResampleIndices(42, 8, 13), idx);
  EXPECT_NE(ResampleIndices(43, 7, 13), idx);
}

TEST(ResampleIndicesTest, RoughlyUniform) {
  std::vector<int> hist(10);
  for (std::uint64_t r = 0; r < 2000; ++r) {
    for (std::size_t i : ResampleIndices(1, r, 10)) ++hist[i];
  }
  for (int h : hist) {
    EXPECT_GT(h, 1800);
    EXPECT_LT(h, 2200);
  }
}

TEST(BootstrapTest, ConstantMetricHasZeroWidth) {
  const std::vector<std::string> a{"A1.1"};
  std::vector<EvaluatedExample> perfect;
  for (int i = 0; i < 20; ++i) {
    perfect.push_back({std::to_string(i), BindLabels(T0(), a),
                       BindLabels(T0(), a)});
  }
  const auto ci = BootstrapCi(
      perfect, [](Examples d) { return Hos(d, T0()); },
      {.n_resamples = 200, .seed = 9});
  EXPECT_EQ(ci.low, 1.0);
  EXPECT_EQ(ci.high, 1.0);
  EXPECT_EQ(ci.point, 1.0);
}

TEST(BootstrapTest, SingleResample) {
  const auto data = TenFlags();
  const auto ci = BootstrapCi(data, CaeOf, {.n_resamples = 1, .seed = 3});
  std::vector<EvaluatedExample> sample;
  for (std::size_t i : ResampleIndices(3, 0, data.size())) {
    sample.push_back(data[i]);
  }
  EXPECT_EQ(ci.low, CaeOf(sample));
  EXPECT_EQ(ci.high, CaeOf(sample));
  EXPECT_DOUBLE_EQ(ci.point, 0.4);
}

TEST(BootstrapTest, MatchesReferenceImplementation) {
  const auto data = TenFlags();
  const std::vector<bool> flag{true, true, true, true, false,
                               false, false, false, false, false};
  const BootstrapConfig cfg{.n_resamples = 200, .confidence = 0.9, .seed = 77};
  std::vector<double> ref;
  for (std::uint64_t r = 0; r < cfg.n_resamples; ++r) {
    double hits = 0;
    for (std::size_t i : ResampleIndices(cfg.seed, r, data.size())) {
      hits += flag[i];
    }
    ref.push_back(hits / data.size());
  }
  const auto ci = BootstrapCi(data, CaeOf, cfg);
  EXPECT_EQ(ci.low, oracle::Percentile(ref, 0.05));
  EXPECT_EQ(ci.high, oracle::Percentile(ref, 0.95));
  EXPECT_LE(ci.low, ci.high);
}

TEST(BootstrapTest, DeterministicAcrossWorkers) {
  gen::Rng rng(31);
  const gen::Instance inst = gen::RandomInstance(rng, 30, 40, 4);
  const BootstrapConfig cfg{.n_resamples = 300, .seed = 5};
  const MetricReport a = EvaluateWithIntervals(inst.data, inst.tax, {}, cfg, 1);
  const MetricReport b = EvaluateWithIntervals(inst.data, inst.tax, {}, cfg, 4);
  const MetricReport c = EvaluateWithIntervals(inst.data, inst.tax, {}, cfg, 1);
  for (const MetricReport* r : {&b, &c}) {
    EXPECT_EQ(a.f1_ci->low, r->f1_ci->low);
    EXPECT_EQ(a.f1_ci->high, r->f1_ci->high);
    EXPECT_EQ(a.hds_ci->low, r->hds_ci->low);
    EXPECT_EQ(a.hds_ci->high, r->hds_ci->high);
    EXPECT_EQ(a.hos_ci->low, r->hos_ci->low);
    EXPECT_EQ(a.hos_ci->high, r->hos_ci->high);
    EXPECT_EQ(a.cae_ci->low, r->cae_ci->low);
    EXPECT_EQ(a.cae_ci->high, r->cae_ci->high);
  }
  for (const auto& ci : {*a.f1_ci, *a.hds_ci, *a.hos_ci, *a.cae_ci}) {
    EXPECT_GE(ci.low, 0.0);
    EXPECT_LE(ci.low, ci.high);
    EXPECT_LE(ci.high, 1.0);
  }
}

TEST(BootstrapTest, WidthConvergesWithResamples) {
  std::vector<EvaluatedExample> data;
  const std::vector<std::string> a{"A1.1"}, b{"B3.2"};
  for (int i = 0; i < 60; ++i) {
    data.push_back({std::to_string(i), BindLabels(T0(), a),
                    BindLabels(T0(), i % 5 == 0 ? b : a)});
  }
  auto width = [&](std::size_t n) {
    const auto ci = BootstrapCi(data, CaeOf, {.n_resamples = n, .seed = 2});
    return ci.high - ci.low;
  };
  EXPECT_NEAR(width(2000), width(20000), 0.02);
}

TEST(BootstrapTest, Errors) {
  EXPECT_EQ(CodeOf([] { BootstrapCi({}, CaeOf, {}); }),
            ErrorCode::kEmptyDataset);
  const auto data = TenFlags();
  EXPECT_EQ(CodeOf([&] {
              BootstrapCis(
                  data,
                  [](Examples d) {
                    return std::vector<double>(d[0].example_id == "e0" ? 1 : 2);
                  },
                  {.n_resamples = 50});
            }),
            ErrorCode::kInvalidArgument);
}

}  // namespace
}  // namespace hiereval

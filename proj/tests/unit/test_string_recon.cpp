// Copyright 2026 The treetrace Authors
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

#include <cmath>
#include <numbers>
#include <vector>

#include "treetrace/channels.hpp"
#include "treetrace/error.hpp"
#include "treetrace/instances.hpp"
#include "treetrace/rng.hpp"
#include "treetrace/string_recon.hpp"

namespace treetrace {
namespace {

SymbolString bits(const char* s) { return SymbolString::parse(s); }

template <typename F>
ErrorCode code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected an Error";
  return ErrorCode::kInvalidArgument;
}

std::vector<SymbolString> sample(const SymbolString& s, double q, int count, Rng& rng) {
  std::vector<SymbolString> out;
  for (int i = 0; i < count; ++i) out.push_back(string_trace(s, q, rng));
  return out;
}

TEST(ExactMean, Examples) {
  EXPECT_EQ(exact_mean_vector(bits("1"), 0.5).values, std::vector<double>{0.5});
  const auto m = exact_mean_vector(bits("11"), 0.5).values;
  ASSERT_EQ(m.size(), 2U);
  EXPECT_DOUBLE_EQ(m[0], 0.75);
  EXPECT_DOUBLE_EQ(m[1], 0.25);
  const auto z = exact_mean_vector(bits("101"), 0.0).values;
  EXPECT_EQ(z, (std::vector<double>{1, 0, 1}));
}

TEST(EmpiricalMean, Examples) {
  const std::vector<SymbolString> traces{bits("1"), bits(""), bits("11")};
  const auto m = empirical_mean_vector(traces, 2);
  EXPECT_DOUBLE_EQ(m.values[0], 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(m.values[1], 1.0 / 3.0);
  const std::vector<SymbolString> same{bits("010"), bits("010")};
  EXPECT_EQ(empirical_mean_vector(same, 3).values, (std::vector<double>{0, 1, 0}));
  EXPECT_EQ(code_of([] { empirical_mean_vector({}, 3); }), ErrorCode::kEmptyInput);
  const std::vector<SymbolString> long_trace{bits("0101")};
  EXPECT_EQ(code_of([&] { empirical_mean_vector(long_trace, 3); }),
            ErrorCode::kInvalidArgument);
}

TEST(EmpiricalMean, ConvergesToExact) {
  Rng rng(12);
  const int n_samples = 100000;
  for (double q : {0.1, 0.5}) {
    const SymbolString s = random_bits(10, rng);
    const auto traces = sample(s, q, n_samples, rng);
    const auto emp = empirical_mean_vector(traces, 10).values;
    const auto exact = exact_mean_vector(s, q).values;
    for (std::size_t j = 0; j < 10; ++j)
      EXPECT_NEAR(emp[j], exact[j], 5.0 / std::sqrt(n_samples)) << s.str() << " j=" << j;
  }
}

TEST(ArcParameter, CubeRootCeiling) {
  EXPECT_EQ(default_arc_parameter(1), 1U);
  EXPECT_EQ(default_arc_parameter(8), 2U);
  EXPECT_EQ(default_arc_parameter(10), 3U);
  EXPECT_EQ(default_arc_parameter(27), 3U);
  EXPECT_EQ(default_arc_parameter(28), 4U);
}

TEST(ArcMaximum, Examples) {
  const std::vector<int> one{1};
  EXPECT_DOUBLE_EQ(arc_maximum(one, 3).value, 1.0);
  const std::vector<int> two{1, 1};
  const auto m = arc_maximum(two, 1);
  // The grid has an even number of points, so z = 1 itself is not sampled.
  EXPECT_NEAR(m.value, 2.0, 1e-5);
  EXPECT_NEAR(std::abs(m.z - std::complex<double>(1, 0)), 0.0, 2 * std::numbers::pi / 1023);
  // 1 - z vanishes at z = 1 and peaks at the arc ends.
  const std::vector<int> diff{1, -1};
  EXPECT_NEAR(arc_maximum(diff, 2).value, std::abs(1.0 - std::polar(1.0, std::numbers::pi / 2)),
              1e-12);
  EXPECT_EQ(code_of([&] { arc_maximum(two, 0); }), ErrorCode::kInvalidArgument);
}

TEST(Separation, Examples) {
  const auto w = find_separation(bits("10"), bits("01"), 0.5, 1);
  EXPECT_EQ(w.j, 0U);
  EXPECT_DOUBLE_EQ(w.magnitude, 0.25);

  const auto last = find_separation(bits("0001"), bits("0000"), 0.0, 2);
  EXPECT_EQ(last.j, 3U);
  EXPECT_DOUBLE_EQ(last.magnitude, 1.0);

  EXPECT_EQ(code_of([] { find_separation(bits("01"), bits("01"), 0.5, 1); }),
            ErrorCode::kDegeneratePair);
  EXPECT_EQ(code_of([] { find_separation(bits("01"), bits("011"), 0.5, 1); }),
            ErrorCode::kInvalidArgument);
}

TEST(Separation, WitnessGeometry) {
  Rng rng(6);
  for (int i = 0; i < 50; ++i) {
    const SymbolString x = random_bits(8, rng);
    SymbolString y = random_bits(8, rng);
    if (x == y) continue;
    const double q = 0.3;
    const std::size_t L = default_arc_parameter(8);
    const auto w = find_separation(x, y, q, L);
    EXPECT_NEAR(std::abs(w.z), 1.0, 1e-12);
    EXPECT_LE(std::abs(std::arg(w.z)), std::numbers::pi / L + 1e-12);
    EXPECT_NEAR(std::abs(w.w - (w.z - q) / (1 - q)), 0.0, 1e-12);
    const auto ex = exact_mean_vector(x, q).values;
    const auto ey = exact_mean_vector(y, q).values;
    for (std::size_t j = 0; j < 8; ++j) EXPECT_LE(std::abs(ex[j] - ey[j]), w.magnitude + 1e-15);
  }
}

TEST(DistinguishPair, Examples) {
  Rng rng(2);
  const std::vector<SymbolString> exact{bits("10")};
  EXPECT_EQ(distinguish_pair(bits("10"), bits("01"), exact, 0.0), bits("10"));

  // Empirical means 0.51 and 0.01.
  std::vector<SymbolString> traces{bits("11")};
  for (int i = 0; i < 50; ++i) traces.push_back(bits("1"));
  for (int i = 0; i < 49; ++i) traces.push_back(bits(""));
  EXPECT_EQ(distinguish_pair(bits("10"), bits("01"), traces, 0.5), bits("10"));
}

TEST(DistinguishPair, ErrorBelowHoeffdingBound) {
  // magnitude 0.25 at N = 1000 bounds the error by 2 exp(-31.25).
  Rng rng(77);
  int errors = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const bool truth_x = rng.bernoulli(0.5);
    const SymbolString truth = truth_x ? bits("10") : bits("01");
    const auto traces = sample(truth, 0.5, 1000, rng);
    errors += distinguish_pair(bits("10"), bits("01"), traces, 0.5) == truth ? 0 : 1;
  }
  EXPECT_EQ(errors, 0);
}

TEST(MlReconstruct, Examples) {
  const std::vector<SymbolString> clean{bits("0110")};
  EXPECT_EQ(ml_reconstruct(clean, 4, 0.0, CandidateSet::all(4)), bits("0110"));

  const std::vector<SymbolString> traces{bits("1"), bits("1"), bits("11")};
  EXPECT_EQ(ml_reconstruct(traces, 2, 0.5, CandidateSet::all(2)), bits("11"));

  const std::vector<SymbolString> too_long{bits("111")};
  EXPECT_EQ(code_of([&] { ml_reconstruct(too_long, 2, 0.5, CandidateSet::all(2)); }),
            ErrorCode::kInconsistentTraces);
  EXPECT_EQ(code_of([&] { ml_reconstruct({}, 2, 0.5, CandidateSet::all(2)); }),
            ErrorCode::kEmptyInput);
}

TEST(MlReconstruct, TiesGoToSmallest) {
  // An empty trace is equally likely under every candidate of a length.
  const std::vector<SymbolString> empty{bits("")};
  EXPECT_EQ(ml_reconstruct(empty, 3, 0.5, CandidateSet::all(3)), bits("000"));
  const auto listed = CandidateSet::list({bits("110"), bits("011")});
  EXPECT_EQ(ml_reconstruct(empty, 3, 0.5, listed), bits("011"));
}

TEST(MlReconstruct, RecoveryImprovesWithTraces) {
  Rng rng(41);
  const double q = 0.1;
  std::vector<SymbolString> truths;
  for (int i = 0; i < 20; ++i) truths.push_back(random_bits(10, rng));
  std::vector<double> rates;
  for (int count : {1, 4, 16, 64}) {
    int ok = 0;
    for (const auto& s : truths) {
      const auto traces = sample(s, q, count, rng);
      ok += ml_reconstruct(traces, 10, q, CandidateSet::all(10)) == s ? 1 : 0;
    }
    rates.push_back(ok / 20.0);
  }
  EXPECT_GE(rates.back(), rates.front());
  EXPECT_EQ(rates.back(), 1.0);
}

TEST(MeanReconstruct, ExactAndNoisy) {
  const std::vector<SymbolString> clean{bits("1011")};
  EXPECT_EQ(mean_reconstruct(clean, 4, 0.0, CandidateSet::all(4)), bits("1011"));
  Rng rng(9);
  const auto traces = sample(bits("01"), 0.3, 10000, rng);
  EXPECT_EQ(mean_reconstruct(traces, 2, 0.3, CandidateSet::list({bits("10"), bits("01")})),
            distinguish_pair(bits("10"), bits("01"), traces, 0.3));
}

TEST(Candidates, Limits) {
  EXPECT_EQ(CandidateSet::all(3).count(), 8U);
  EXPECT_EQ(CandidateSet::all(3).at(5), bits("101"));
  EXPECT_EQ(code_of([] { CandidateSet::all(kExhaustiveCandidateCap + 1); }),
            ErrorCode::kSizeLimit);
  EXPECT_EQ(code_of([] { CandidateSet::list({bits("1"), bits("10")}); }),
            ErrorCode::kInvalidArgument);
}

TEST(Candidates, DefaultAboveCapUsesFullLengthTraces) {
  Rng rng(1);
  const SymbolString s = random_bits(24, rng);
  const std::vector<SymbolString> none{bits("1"), bits("")};
  EXPECT_EQ(code_of([&] { default_candidates(none, 24); }), ErrorCode::kNoCandidates);
  const std::vector<SymbolString> some{s, bits("1"), s};
  const auto c = default_candidates(some, 24);
  EXPECT_EQ(c.count(), 1U);
  EXPECT_EQ(c.at(0), s);
  EXPECT_EQ(default_candidates(none, 4).count(), 16U);
}

TEST(Reconstructors, ByName) {
  const std::vector<SymbolString> clean{bits("011")};
  EXPECT_EQ(make_reconstructor("ml")(clean, 3, 0.0), bits("011"));
  EXPECT_EQ(make_reconstructor("mean")(clean, 3, 0.0), bits("011"));
  EXPECT_EQ(code_of([] { make_reconstructor("bogus"); }), ErrorCode::kInvalidArgument);
}

}  // namespace
}  // namespace treetrace

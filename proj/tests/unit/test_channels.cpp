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
#include <map>
#include <string>

#include "treetrace/channels.hpp"
#include "treetrace/error.hpp"
#include "treetrace/instances.hpp"
#include "treetrace/rng.hpp"
#include "treetrace/tree.hpp"

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

// Preorder id of the k-th node of a parsed tree (parse assigns preorder ids).
NodeId nth(const Tree& t, std::size_t k) { return preorder(t)[k]; }

bool is_path(const Tree& t) {
  for (NodeId v : t.ids())
    if (t.children(v).size() > 1) return false;
  return true;
}

TEST(ChannelSpec, Validation) {
  EXPECT_NO_THROW((ChannelSpec{ChannelModel::kTed, 0.0}.validate()));
  EXPECT_EQ(code_of([] { ChannelSpec{ChannelModel::kTed, 1.0}.validate(); }),
            ErrorCode::kInvalidArgument);
  EXPECT_EQ(code_of([] { ChannelSpec{ChannelModel::kLp, -0.1}.validate(); }),
            ErrorCode::kInvalidArgument);
  EXPECT_EQ(parse_channel_model("lp"), ChannelModel::kLp);
  EXPECT_EQ(code_of([] { parse_channel_model("tedd"); }), ErrorCode::kInvalidArgument);
}

TEST(StringTrace, QZeroIsIdentity) {
  Rng rng(1);
  EXPECT_EQ(string_trace(bits("0110101"), 0.0, rng), bits("0110101"));
}

TEST(StringTraceProb, Examples) {
  EXPECT_DOUBLE_EQ(string_trace_prob(bits("11"), bits("1"), 0.5), 0.5);
  EXPECT_DOUBLE_EQ(string_trace_prob(bits("101"), bits("101"), 0.0), 1.0);
  EXPECT_DOUBLE_EQ(string_trace_prob(bits("101"), bits("11"), 0.5), 0.125);
  EXPECT_DOUBLE_EQ(string_trace_prob(bits("01"), bits("10"), 0.5), 0.0);
  EXPECT_EQ(string_trace_log_prob(bits("01"), bits("10"), 0.5),
            -std::numeric_limits<double>::infinity());
  EXPECT_DOUBLE_EQ(embedding_count(bits("0110"), bits("10")), 2.0);
  EXPECT_DOUBLE_EQ(embedding_count(bits("111"), bits("")), 1.0);
}

TEST(StringTraceProb, MatchesMonteCarlo) {
  const SymbolString s = bits("0110");
  const double q = 0.3;
  const int n_samples = 100000;
  Rng rng(11);
  std::map<std::string, int> counts;
  for (int i = 0; i < n_samples; ++i) ++counts[string_trace(s, q, rng).str()];
  double total = 0.0;
  for (const auto& [text, c] : counts) {
    const double p = string_trace_prob(s, SymbolString::parse(text), q);
    total += p;
    EXPECT_NEAR(static_cast<double>(c) / n_samples, p, 5.0 / std::sqrt(n_samples)) << text;
  }
  EXPECT_NEAR(total, 1.0, 1e-12);
}

TEST(TedApply, EmptySetIsIdentity) {
  const Tree t = parse_tree("0(1(0),1)");
  EXPECT_TRUE(trees_equal(ted_apply(t, {}), t));
}

TEST(TedApply, ChildrenSpliceInPlace) {
  // Deleting the labeled-1 node with two children lifts them in order.
  const Tree t = parse_tree("0(1(1,0),1)");
  const NodeId v = nth(t, 1);
  EXPECT_EQ(format_tree(ted_apply(t, std::vector<NodeId>{v})), "0(1,0,1)");
}

TEST(TedApply, NestedDeletionsFlatten) {
  const Tree t = parse_tree("0(1(0(1,1),0),1)");
  const std::vector<NodeId> del{nth(t, 1), nth(t, 2)};
  EXPECT_EQ(format_tree(ted_apply(t, del)), "0(1,1,0,1)");
}

TEST(TedApply, RejectsRootAndAbsentNodes) {
  const Tree t = parse_tree("0(0,0)");
  EXPECT_EQ(code_of([&] { ted_apply(t, std::vector<NodeId>{t.root()}); }),
            ErrorCode::kInvalidDeletion);
  EXPECT_EQ(code_of([&] { ted_apply(t, std::vector<NodeId>{42}); }),
            ErrorCode::kInvalidDeletion);
}

TEST(TedApply, SurvivorsKeepIdentifiers) {
  const Tree t = parse_tree("0(0(0),0)");
  const Tree u = ted_apply(t, std::vector<NodeId>{nth(t, 1)});
  EXPECT_FALSE(u.contains(nth(t, 1)));
  EXPECT_TRUE(u.contains(nth(t, 2)));
  EXPECT_EQ(u.parent(nth(t, 2)), t.root());
}

TEST(TedTrace, QZeroIsIdentity) {
  Rng rng(3);
  const Tree t = parse_tree("1(0(1),1(0,0))");
  EXPECT_TRUE(trees_equal(ted_trace(t, 0.0, rng), t));
}

TEST(TedDistribution, SmallExamples) {
  const Tree pair = parse_tree("0(1)");
  const auto d = ted_trace_distribution(pair, 0.25);
  EXPECT_EQ(d.entries.size(), 2U);
  EXPECT_DOUBLE_EQ(d.probability("0(1)"), 0.75);
  EXPECT_DOUBLE_EQ(d.probability("0"), 0.25);
  EXPECT_DOUBLE_EQ(d.probability("1"), 0.0);

  // Two-edge path: both deletion patterns that leave one child collide.
  const auto path = ted_trace_distribution(parse_tree("0(0(0))"), 0.5);
  EXPECT_DOUBLE_EQ(path.probability("0(0(0))"), 0.25);
  EXPECT_DOUBLE_EQ(path.probability("0(0)"), 0.5);
  EXPECT_DOUBLE_EQ(path.probability("0"), 0.25);

  EXPECT_EQ(ted_trace_distribution(parse_tree("0(1,0)"), 0.0).entries.size(), 1U);
}

TEST(TedDistribution, CapEnforced) {
  Rng rng(1);
  const Tree big = random_tree(15, rng);
  EXPECT_EQ(code_of([&] { ted_trace_distribution(big, 0.3); }), ErrorCode::kSizeLimit);
}

TEST(TedDistribution, MatchesSampler) {
  Rng rng(17);
  const int n_samples = 100000;
  for (int rep = 0; rep < 3; ++rep) {
    const Tree t = random_labels(random_tree(6, rng), rng);
    const auto dist = ted_trace_distribution(t, 0.4);
    EXPECT_NEAR(dist.total(), 1.0, 1e-12);
    std::map<std::string, int> counts;
    for (int i = 0; i < n_samples; ++i) ++counts[format_tree(ted_trace(t, 0.4, rng))];
    for (const auto& [text, p] : dist.entries) {
      EXPECT_NEAR(static_cast<double>(counts[text]) / n_samples, p,
                  5.0 / std::sqrt(n_samples))
          << text;
    }
    for (const auto& [text, c] : counts) EXPECT_GT(dist.probability(text), 0.0) << text;
  }
}

TEST(LpApply, PathAndForkCollapseToShorterPath) {
  for (std::size_t n = 3; n <= 7; ++n) {
    const Tree a = path_tree(n);
    const Tree b = forked_tree(n);
    const Tree shorter = path_tree(n - 1);
    for (NodeId v : a.ids()) {
      if (v == a.root()) continue;
      EXPECT_TRUE(trees_equal(lp_apply(a, std::vector<NodeId>{v}), shorter));
    }
    for (NodeId v : b.ids()) {
      if (v == b.root()) continue;
      EXPECT_TRUE(trees_equal(lp_apply(b, std::vector<NodeId>{v}), shorter)) << n;
    }
  }
}

TEST(LpApply, LeftmostChainMovesUpWithLabels) {
  // Deleting the first child pulls its leftmost descendant chain up one place.
  const Tree t = parse_tree("0(1(0(1),1),0)");
  const Tree u = lp_apply(t, std::vector<NodeId>{nth(t, 1)});
  EXPECT_EQ(format_tree(u), "0(0(1,1),0)");
  EXPECT_EQ(u.size(), t.size() - 1);
  EXPECT_FALSE(u.contains(nth(t, 1)));
  EXPECT_TRUE(u.contains(nth(t, 2)));
  EXPECT_EQ(u.parent(nth(t, 2)), t.root());
}

TEST(LpApply, EmptySetAndErrors) {
  const Tree t = forked_tree(4);
  EXPECT_TRUE(trees_equal(lp_apply(t, {}), t));
  const NodeId v = nth(t, 1);
  EXPECT_EQ(code_of([&] { lp_apply(t, std::vector<NodeId>{v, v}); }),
            ErrorCode::kStaleTarget);
  EXPECT_EQ(code_of([&] { lp_apply(t, std::vector<NodeId>{t.root()}); }),
            ErrorCode::kInvalidDeletion);
}

TEST(LpTrace, QZeroAndPathShape) {
  Rng rng(5);
  const Tree a = path_tree(8);
  EXPECT_TRUE(trees_equal(lp_trace(a, 0.0, rng), a));
  for (int i = 0; i < 200; ++i) EXPECT_TRUE(is_path(lp_trace(a, 0.5, rng)));
}

TEST(LpTrace, DeletionFreeFraction) {
  Rng rng(23);
  const Tree t = random_labels(random_tree(7, rng), rng);
  const int n_samples = 100000;
  int intact = 0;
  for (int i = 0; i < n_samples; ++i)
    intact += lp_trace(t, 0.2, rng).size() == t.size() ? 1 : 0;
  const double expected = std::pow(0.8, 6);
  const double sigma = std::sqrt(expected * (1 - expected) / n_samples);
  EXPECT_NEAR(static_cast<double>(intact) / n_samples, expected, 4 * sigma);
}

TEST(LpTraceSet, Examples) {
  const Tree a6 = path_tree(6);
  const auto zero = lp_trace_set(a6, 0);
  ASSERT_EQ(zero.size(), 1U);
  EXPECT_TRUE(trees_equal(zero[0], a6));

  const auto two = lp_trace_set(a6, 2);
  ASSERT_EQ(two.size(), 1U);
  EXPECT_TRUE(trees_equal(two[0], path_tree(4)));

  const auto fork3 = lp_trace_set(forked_tree(6), 3);
  ASSERT_EQ(fork3.size(), 1U);
  EXPECT_TRUE(trees_equal(fork3[0], path_tree(3)));

  EXPECT_EQ(code_of([&] { lp_trace_set(a6, 7); }), ErrorCode::kInvalidArgument);
}

TEST(LpTraceSet, DeduplicatedAndSorted) {
  const Tree t = parse_tree("0(1(0,1),0(1))");
  const auto set = lp_trace_set(t, 2);
  for (std::size_t i = 1; i < set.size(); ++i)
    EXPECT_LT(format_tree(set[i - 1]), format_tree(set[i]));
  for (const auto& u : set) EXPECT_EQ(u.size(), t.size() - 2);
}

TEST(SampleTreeTrace, RejectsStringModel) {
  Rng rng(1);
  EXPECT_EQ(code_of([&] {
              sample_tree_trace(path_tree(3), ChannelSpec{ChannelModel::kString, 0.1}, rng);
            }),
            ErrorCode::kInvalidArgument);
}

}  // namespace
}  // namespace treetrace

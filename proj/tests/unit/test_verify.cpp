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

#include <sstream>

#include "treetrace/channels.hpp"
#include "treetrace/instances.hpp"
#include "treetrace/verify.hpp"

namespace treetrace {
namespace {

TEST(Verify, QuickSuitePasses) {
  const auto report = verify_suite(VerifyLevel::kQuick);
  for (const auto& r : report.results) EXPECT_TRUE(r.passed) << r.name << ": " << r.detail;
  EXPECT_TRUE(report.all_passed());
  std::ostringstream out;
  print_report(out, report);
  EXPECT_NE(out.str().find("PASS"), std::string::npos);
  EXPECT_EQ(out.str().find("FAIL"), std::string::npos);
}

// The suite must notice a TED that reverses spliced children.
TEST(Verify, MutantIsCaught) {
  EXPECT_FALSE(check_traversal_preservation(5, ted_apply_reversed_splice).passed);
  EXPECT_FALSE(check_ted_order_invariance(6, 5, 1, ted_apply_reversed_splice).passed);
  EXPECT_TRUE(check_traversal_preservation(5).passed);
}

TEST(Verify, LevelNames) {
  EXPECT_EQ(parse_verify_level("quick"), VerifyLevel::kQuick);
  EXPECT_EQ(parse_verify_level("full"), VerifyLevel::kFull);
  EXPECT_THROW(parse_verify_level("slow"), std::exception);
}

TEST(Oracle, LpReachableMatchesLibrary) {
  EXPECT_EQ(oracle::lp_reachable(path_tree(6), 2),
            std::set<std::string>{format_tree(path_tree(4))});
  const Tree t = parse_tree("0(0(0,0),0(0))");
  std::set<std::string> lib;
  for (const auto& u : lp_trace_set(t, 2)) lib.insert(format_tree(u));
  EXPECT_EQ(oracle::lp_reachable(t, 2), lib);
}

TEST(Oracle, SequentialContractionMatchesTed) {
  const Tree t = parse_tree("1(0(1,0(1)),1)");
  const auto ids = preorder(t);
  const std::vector<NodeId> order{ids[3], ids[1]};
  EXPECT_TRUE(trees_equal(oracle::sequential_contraction(t, order), ted_apply(t, order)));
}

TEST(Oracle, DistinctSubsequences) {
  EXPECT_EQ(oracle::distinct_subsequences(SymbolString::parse("11")).size(), 3U);
  EXPECT_EQ(oracle::distinct_subsequences(SymbolString::parse("01")).size(), 4U);
}

}  // namespace
}  // namespace treetrace

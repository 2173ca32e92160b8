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

#include "treetrace/error.hpp"
#include "treetrace/instances.hpp"
#include "treetrace/rng.hpp"
#include "treetrace/tree.hpp"

namespace treetrace {
namespace {

SymbolString bits(const char* s) { return SymbolString::parse(s); }

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected an Error";
  return ErrorCode::kInvalidArgument;
}

TEST(Preorder, SingleNode) {
  const Tree t;
  EXPECT_EQ(preorder(t), std::vector<NodeId>{t.root()});
}

TEST(Preorder, RootChildrenInOrder) {
  TreeBuilder b;
  const NodeId a = b.add_child(0);
  const NodeId c = b.add_child(0);
  EXPECT_EQ(preorder(b.build()), (std::vector<NodeId>{0, a, c}));
}

TEST(Preorder, DescendantsBeforeLaterSiblings) {
  // Insertion order differs from preorder: root(a(c), b).
  TreeBuilder builder;
  const NodeId a = builder.add_child(0);
  const NodeId b = builder.add_child(0);
  const NodeId c = builder.add_child(a);
  EXPECT_EQ(preorder(builder.build()), (std::vector<NodeId>{0, a, c, b}));
}

TEST(PreorderLabels, Examples) {
  EXPECT_EQ(preorder_label_string(parse_tree("1")).str(), "1");
  EXPECT_EQ(preorder_label_string(parse_tree("0(1,0)")).str(), "010");
  EXPECT_EQ(preorder_label_string(parse_tree("1(0(1),1)")).str(), "1011");
}

TEST(Dyck, Examples) {
  EXPECT_EQ(dyck_string(parse_tree("0")).str(), "");
  EXPECT_EQ(dyck_string(parse_tree("0(0)")).str(), "10");
  EXPECT_EQ(dyck_string(parse_tree("0(0(0))")).str(), "1100");
  EXPECT_EQ(dyck_string(parse_tree("0(0,0)")).str(), "1010");
}

TEST(Dyck, InverseExamples) {
  EXPECT_EQ(tree_from_dyck(SymbolString()).size(), 1U);
  EXPECT_TRUE(trees_equal(tree_from_dyck(bits("10")), parse_tree("0(0)")));
  EXPECT_TRUE(trees_equal(tree_from_dyck(bits("1010")), parse_tree("0(0,0)")));
}

TEST(Dyck, UnbalancedInputRejected) {
  for (const char* s : {"1", "0", "01", "1001", "110"}) {
    EXPECT_EQ(code_of([&] { tree_from_dyck(bits(s)); }), ErrorCode::kMalformedString) << s;
    EXPECT_FALSE(is_balanced(bits(s)));
  }
  EXPECT_TRUE(is_balanced(bits("1100")));
}

TEST(Dyck, ExhaustiveRoundTripMatchesCatalanCounts) {
  const std::size_t catalan[] = {1, 1, 2, 5, 14, 42, 132, 429};
  for (std::size_t n = 1; n <= 8; ++n) {
    const auto trees = enumerate_ordered_trees(n);
    EXPECT_EQ(trees.size(), catalan[n - 1]);
    for (const auto& t : trees) {
      const auto d = dyck_string(t);
      EXPECT_EQ(d.size(), 2 * (n - 1));
      EXPECT_TRUE(is_balanced(d));
      EXPECT_TRUE(trees_equal(tree_from_dyck(d), t));
    }
  }
}

TEST(Enumerate, CapEnforced) {
  EXPECT_EQ(code_of([] { enumerate_ordered_trees(15); }), ErrorCode::kSizeLimit);
}

TEST(TreesEqual, OrderAndLabelsMatter) {
  const Tree t = parse_tree("0(1(0),0)");
  EXPECT_TRUE(trees_equal(t, t));
  EXPECT_FALSE(trees_equal(parse_tree("0(0,1)"), parse_tree("0(1,0)")));
  EXPECT_FALSE(trees_equal(parse_tree("0(0,1)"), parse_tree("0(0,0)")));
  EXPECT_FALSE(trees_equal(parse_tree("0(0(0))"), parse_tree("0(0,0)")));
}

TEST(TreesEqual, IgnoresIdentifiers) {
  TreeBuilder b;
  const NodeId x = b.add_child(0, 1);
  b.add_child(0, 0);
  b.add_child(x, 1);
  EXPECT_TRUE(trees_equal(b.build(), parse_tree("0(1(1),0)")));
}

TEST(Parse, Examples) {
  const Tree one = parse_tree("1");
  EXPECT_EQ(one.size(), 1U);
  EXPECT_EQ(one.label(one.root()), 1);

  const Tree t = parse_tree("0(1,0(1),1)");
  const auto& kids = t.children(t.root());
  ASSERT_EQ(kids.size(), 3U);
  EXPECT_TRUE(t.is_leaf(kids[0]));
  EXPECT_EQ(t.label(kids[0]), 1);
  ASSERT_EQ(t.children(kids[1]).size(), 1U);
  EXPECT_EQ(t.label(t.children(kids[1])[0]), 1);
  EXPECT_EQ(t.label(kids[2]), 1);
  EXPECT_EQ(format_tree(t), "0(1,0(1),1)");
}

TEST(Parse, SkipsWhitespace) {
  EXPECT_EQ(format_tree(parse_tree(" 0 (\t1 ,\n0( 1 ) ) ")), "0(1,0(1))");
}

TEST(Parse, SyntaxErrorsCarryOffset) {
  const std::pair<const char*, std::string> cases[] = {
      {"", "0"}, {"2", "0"}, {"0(", "2"}, {"0()", "2"}, {"0(1,)", "4"}, {"01", "1"}};
  for (const auto& [text, offset] : cases) {
    try {
      parse_tree(text);
      ADD_FAILURE() << "accepted '" << text << "'";
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kSyntax) << text;
      ASSERT_FALSE(e.details().empty());
      EXPECT_EQ(e.details()[0], offset) << text;
    }
  }
}

TEST(Parse, RandomRoundTrip) {
  Rng rng(2024);
  for (int i = 0; i < 500; ++i) {
    const Tree t = random_labels(random_tree(1 + rng.below(50), rng), rng);
    const std::string text = format_tree(t);
    EXPECT_TRUE(trees_equal(parse_tree(text), t));
    EXPECT_EQ(format_tree(parse_tree(text)), text);
  }
}

TEST(Parse, DeepTreesDoNotOverflow) {
  std::string text;
  for (int i = 0; i < 100000; ++i) text += "0(";
  text += "1";
  for (int i = 0; i < 100000; ++i) text += ")";
  const Tree t = parse_tree(text);
  EXPECT_EQ(t.size(), 100001U);
  EXPECT_EQ(format_tree(t), text);
  EXPECT_TRUE(trees_equal(t, t));
}

TEST(Tree, ValidatingConstructorRejectsBadTables) {
  std::vector<Node> slots(2);
  slots[0].children = {1};
  slots[1].parent = 0;
  EXPECT_NO_THROW(Tree(slots, {true, true}, 0));
  auto broken = slots;
  broken[1].parent = kNoNode;
  EXPECT_EQ(code_of([&] { Tree(broken, {true, true}, 0); }), ErrorCode::kInvalidArgument);
  EXPECT_EQ(code_of([&] { Tree(slots, {true, false}, 0); }), ErrorCode::kInvalidArgument);
  auto cyclic = slots;
  cyclic[1].children = {1};
  EXPECT_EQ(code_of([&] { Tree(cyclic, {true, true}, 0); }), ErrorCode::kInvalidArgument);
}

TEST(Tree, RelabelAndCompact) {
  const Tree t = parse_tree("0(0(0),0)");
  EXPECT_EQ(format_tree(relabel_preorder(t, bits("1011"))), "1(0(1),1)");
  EXPECT_EQ(code_of([&] { relabel_preorder(t, bits("10")); }), ErrorCode::kInvalidArgument);
  EXPECT_EQ(preorder(compact(t)), (std::vector<NodeId>{0, 1, 2, 3}));
  EXPECT_EQ(t.leaf_count(), 2U);
}

TEST(SymbolString, AlphabetsValidated) {
  EXPECT_EQ(SymbolString::parse("0202", Alphabet::kZeroTwo).str(), "0202");
  EXPECT_EQ(code_of([] { SymbolString::parse("012", Alphabet::kBinary); }),
            ErrorCode::kMalformedString);
  EXPECT_EQ(code_of([] { SymbolString::parse("12", Alphabet::kZeroTwo); }),
            ErrorCode::kMalformedString);
  EXPECT_LT(bits("01"), bits("10"));
}

}  // namespace
}  // namespace treetrace

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

#include "treetrace/tree.hpp"

#include <cctype>
#include <utility>

#include "treetrace/error.hpp"

namespace treetrace {

Tree::Tree() : slots_(1), present_(1, true), root_(0), size_(1) {}

Tree::Tree(std::vector<Node> slots, std::vector<bool> present, NodeId root)
    : slots_(std::move(slots)), present_(std::move(present)), root_(root) {
  if (present_.size() != slots_.size()) {
    throw Error(ErrorCode::kInvalidArgument, "slot and presence tables differ");
  }
  if (!contains(root_)) {
    throw Error(ErrorCode::kInvalidArgument, "root is not a present node");
  }
  if (slots_[root_].parent != kNoNode) {
    throw Error(ErrorCode::kInvalidArgument, "root has a parent");
  }
  std::size_t present_count = 0;
  for (bool p : present_) present_count += p ? 1 : 0;

  std::vector<bool> seen(slots_.size(), false);
  std::vector<NodeId> stack{root_};
  seen[root_] = true;
  std::size_t reached = 0;
  while (!stack.empty()) {
    const NodeId u = stack.back();
    stack.pop_back();
    ++reached;
    for (NodeId c : slots_[u].children) {
      if (!contains(c)) {
        throw Error(ErrorCode::kInvalidArgument,
                    "child " + std::to_string(c) + " is not present");
      }
      if (seen[c]) {
        throw Error(ErrorCode::kInvalidArgument,
                    "node " + std::to_string(c) + " reached twice");
      }
      if (slots_[c].parent != u) {
        throw Error(ErrorCode::kInvalidArgument,
                    "parent link of " + std::to_string(c) + " is inconsistent");
      }
      if (slots_[c].label > 1) {
        throw Error(ErrorCode::kInvalidArgument, "labels are single bits");
      }
      seen[c] = true;
      stack.push_back(c);
    }
  }
  if (reached != present_count) {
    throw Error(ErrorCode::kInvalidArgument, "unreachable nodes in table");
  }
  size_ = present_count;
}

std::vector<NodeId> Tree::ids() const {
  std::vector<NodeId> out;
  out.reserve(size_);
  for (NodeId i = 0; i < slots_.size(); ++i) {
    if (present_[i]) out.push_back(i);
  }
  return out;
}

std::size_t Tree::leaf_count() const {
  std::size_t leaves = 0;
  for (NodeId i = 0; i < slots_.size(); ++i) {
    if (present_[i] && slots_[i].children.empty()) ++leaves;
  }
  return leaves;
}

TreeBuilder::TreeBuilder(std::uint8_t root_label) {
  nodes_.push_back(Node{root_label, {}, kNoNode});
}

NodeId TreeBuilder::add_child(NodeId parent, std::uint8_t label) {
  if (parent >= nodes_.size()) {
    throw Error(ErrorCode::kInvalidArgument, "unknown parent");
  }
  const auto id = static_cast<NodeId>(nodes_.size());
  nodes_.push_back(Node{label, {}, parent});
  nodes_[parent].children.push_back(id);
  return id;
}

Tree TreeBuilder::build() const {
  return Tree(nodes_, std::vector<bool>(nodes_.size(), true), 0);
}

std::vector<NodeId> preorder(const Tree& t) {
  std::vector<NodeId> order;
  order.reserve(t.size());
  std::vector<NodeId> stack{t.root()};
  while (!stack.empty()) {
    const NodeId u = stack.back();
    stack.pop_back();
    order.push_back(u);
    const auto& kids = t.children(u);
    for (auto it = kids.rbegin(); it != kids.rend(); ++it) stack.push_back(*it);
  }
  return order;
}

SymbolString preorder_label_string(const Tree& t) {
  std::vector<std::uint8_t> bits;
  bits.reserve(t.size());
  for (NodeId id : preorder(t)) bits.push_back(t.label(id));
  return SymbolString(std::move(bits));
}

SymbolString dyck_string(const Tree& t) {
  std::vector<std::uint8_t> walk;
  walk.reserve(2 * (t.size() - 1));
  // Frame: node and index of the next child to descend into.
  std::vector<std::pair<NodeId, std::size_t>> stack{{t.root(), 0}};
  while (!stack.empty()) {
    auto& [u, next] = stack.back();
    const auto& kids = t.children(u);
    if (next < kids.size()) {
      const NodeId c = kids[next++];
      walk.push_back(1);
      stack.emplace_back(c, 0);
    } else {
      stack.pop_back();
      if (!stack.empty()) walk.push_back(0);
    }
  }
  return SymbolString(std::move(walk));
}

bool is_balanced(const SymbolString& s) {
  long depth = 0;
  for (auto c : s) {
    if (c == 1) {
      ++depth;
    } else if (c == 0) {
      if (--depth < 0) return false;
    } else {
      return false;
    }
  }
  return depth == 0;
}

Tree tree_from_dyck(const SymbolString& s) {
  if (!is_balanced(s)) {
    throw Error(ErrorCode::kMalformedString,
                "'" + s.str() + "' is not a balanced 0/1 string");
  }
  TreeBuilder builder;
  NodeId current = 0;
  std::vector<NodeId> parents;
  for (auto c : s) {
    if (c == 1) {
      parents.push_back(current);
      current = builder.add_child(current);
    } else {
      current = parents.back();
      parents.pop_back();
    }
  }
  return builder.build();
}

bool trees_equal(const Tree& a, const Tree& b) {
  if (a.size() != b.size()) return false;
  std::vector<std::pair<NodeId, NodeId>> stack{{a.root(), b.root()}};
  while (!stack.empty()) {
    const auto [u, v] = stack.back();
    stack.pop_back();
    if (a.label(u) != b.label(v)) return false;
    const auto& ku = a.children(u);
    const auto& kv = b.children(v);
    if (ku.size() != kv.size()) return false;
    for (std::size_t i = 0; i < ku.size(); ++i) stack.emplace_back(ku[i], kv[i]);
  }
  return true;
}

namespace {

class TreeParser {
 public:
  explicit TreeParser(std::string_view text) : text_(text) {}

  Tree parse() {
    skip_space();
    const std::uint8_t root_label = expect_label();
    TreeBuilder builder(root_label);
    // Each open frame is a node whose child list is being read.
    std::vector<NodeId> open;
    NodeId last = 0;
    for (;;) {
      skip_space();
      if (at_end()) break;
      const char c = text_[pos_];
      if (c == '(') {
        ++pos_;
        open.push_back(last);
        skip_space();
        last = builder.add_child(open.back(), expect_label());
      } else if (c == ',') {
        if (open.empty()) fail("',' outside a child list");
        ++pos_;
        skip_space();
        last = builder.add_child(open.back(), expect_label());
      } else if (c == ')') {
        if (open.empty()) fail("unmatched ')'");
        ++pos_;
        last = open.back();
        open.pop_back();
      } else {
        fail(std::string("unexpected character '") + c + "'");
      }
      if (open.empty()) {
        skip_space();
        if (!at_end()) fail("trailing characters after tree");
        break;
      }
    }
    if (!open.empty()) fail("unterminated child list");
    return builder.build();
  }

 private:
  bool at_end() const { return pos_ >= text_.size(); }

  void skip_space() {
    while (!at_end() &&
           std::isspace(static_cast<unsigned char>(text_[pos_])) != 0) {
      ++pos_;
    }
  }

  std::uint8_t expect_label() {
    if (at_end()) fail("expected label, found end of input");
    const char c = text_[pos_];
    if (c != '0' && c != '1') fail(std::string("expected label, found '") + c + "'");
    ++pos_;
    return static_cast<std::uint8_t>(c - '0');
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorCode::kSyntax,
                what + " at offset " + std::to_string(pos_),
                {std::to_string(pos_)});
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Tree parse_tree(std::string_view text) { return TreeParser(text).parse(); }

std::string format_tree(const Tree& t) {
  std::string out;
  out.reserve(4 * t.size());
  std::vector<std::pair<NodeId, std::size_t>> stack{{t.root(), 0}};
  out.push_back(static_cast<char>('0' + t.label(t.root())));
  while (!stack.empty()) {
    auto& [u, next] = stack.back();
    const auto& kids = t.children(u);
    if (next < kids.size()) {
      out.push_back(next == 0 ? '(' : ',');
      const NodeId c = kids[next++];
      out.push_back(static_cast<char>('0' + t.label(c)));
      stack.emplace_back(c, 0);
    } else {
      if (!kids.empty()) out.push_back(')');
      stack.pop_back();
    }
  }
  return out;
}

Tree relabel_preorder(const Tree& t, const SymbolString& labels) {
  if (labels.size() != t.size()) {
    throw Error(ErrorCode::kInvalidArgument,
                "label string length " + std::to_string(labels.size()) +
                    " does not match tree size " + std::to_string(t.size()));
  }
  std::vector<Node> slots(t.id_bound());
  std::vector<bool> present(t.id_bound(), false);
  for (NodeId id : t.ids()) {
    slots[id] = t.node(id);
    present[id] = true;
  }
  const auto order = preorder(t);
  for (std::size_t i = 0; i < order.size(); ++i) {
    if (labels[i] > 1) {
      throw Error(ErrorCode::kInvalidArgument, "labels are single bits");
    }
    slots[order[i]].label = labels[i];
  }
  return Tree(std::move(slots), std::move(present), t.root());
}

Tree compact(const Tree& t) {
  const auto order = preorder(t);
  std::vector<NodeId> remap(t.id_bound(), kNoNode);
  for (std::size_t i = 0; i < order.size(); ++i) {
    remap[order[i]] = static_cast<NodeId>(i);
  }
  std::vector<Node> slots(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    const Node& src = t.node(order[i]);
    Node& dst = slots[i];
    dst.label = src.label;
    dst.parent = src.parent == kNoNode ? kNoNode : remap[src.parent];
    dst.children.reserve(src.children.size());
    for (NodeId c : src.children) dst.children.push_back(remap[c]);
  }
  return Tree(std::move(slots), std::vector<bool>(order.size(), true), 0);
}

namespace {

void extend_dyck(std::vector<std::uint8_t>& word, std::size_t opens_left,
                 std::size_t depth, std::vector<Tree>& out) {
  if (opens_left == 0 && depth == 0) {
    out.push_back(tree_from_dyck(SymbolString(word)));
    return;
  }
  // 0 sorts before 1, so try the close step first for lexicographic order.
  if (depth > 0) {
    word.push_back(0);
    extend_dyck(word, opens_left, depth - 1, out);
    word.pop_back();
  }
  if (opens_left > 0) {
    word.push_back(1);
    extend_dyck(word, opens_left - 1, depth + 1, out);
    word.pop_back();
  }
}

}  // namespace

std::vector<Tree> enumerate_ordered_trees(std::size_t n) {
  if (n == 0) throw Error(ErrorCode::kInvalidArgument, "trees have n >= 1");
  if (n > 14) {
    throw Error(ErrorCode::kSizeLimit,
                "ordered-tree enumeration is capped at n = 14");
  }
  std::vector<Tree> out;
  std::vector<std::uint8_t> word;
  word.reserve(2 * (n - 1));
  extend_dyck(word, n - 1, 0, out);
  return out;
}

}  // namespace treetrace

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

#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "treetrace/symbol_string.hpp"

namespace treetrace {

// Stable node identifier. Identifiers survive channel application, so the
// nodes of a trace keep the identifiers they had in the source tree.
using NodeId = std::uint32_t;
inline constexpr NodeId kNoNode = std::numeric_limits<NodeId>::max();

struct Node {
  std::uint8_t label = 0;
  std::vector<NodeId> children;  // left to right
  NodeId parent = kNoNode;
};

// Ordered rooted tree with one bit per node. Node storage is a table indexed
// by NodeId in which some slots may be absent (a trace keeps the identifier
// space of its source). Unlabeled trees carry label 0 everywhere.
// Immutable once constructed.
class Tree {
 public:
  // A single node with label 0.
  Tree();

  // Validates the table: one root, consistent parent/child links, every
  // present node reachable from the root exactly once.
  Tree(std::vector<Node> slots, std::vector<bool> present, NodeId root);

  std::size_t size() const noexcept { return size_; }
  std::size_t id_bound() const noexcept { return slots_.size(); }
  bool contains(NodeId id) const noexcept {
    return id < present_.size() && present_[id];
  }
  NodeId root() const noexcept { return root_; }

  const Node& node(NodeId id) const { return slots_[id]; }
  std::uint8_t label(NodeId id) const { return slots_[id].label; }
  const std::vector<NodeId>& children(NodeId id) const {
    return slots_[id].children;
  }
  NodeId parent(NodeId id) const { return slots_[id].parent; }
  bool is_leaf(NodeId id) const { return slots_[id].children.empty(); }

  // Present identifiers in increasing order.
  std::vector<NodeId> ids() const;

  std::size_t leaf_count() const;

 private:
  std::vector<Node> slots_;
  std::vector<bool> present_;
  NodeId root_ = 0;
  std::size_t size_ = 0;
};

// Incremental construction with dense identifiers 0, 1, 2, ... in insertion
// order; the root is 0.
class TreeBuilder {
 public:
  explicit TreeBuilder(std::uint8_t root_label = 0);

  NodeId add_child(NodeId parent, std::uint8_t label = 0);
  std::size_t size() const noexcept { return nodes_.size(); }

  Tree build() const;

 private:
  std::vector<Node> nodes_;
};

// Root first, then each child subtree left to right.
std::vector<NodeId> preorder(const Tree& t);

// Labels in preorder.
SymbolString preorder_label_string(const Tree& t);

// Depth-first edge walk: 1 for each step down an edge, 0 for each step up.
// Length 2(n-1), balanced.
SymbolString dyck_string(const Tree& t);

// Inverse of dyck_string. All labels 0; identifiers assigned in preorder.
// Throws kMalformedString on unbalanced input.
Tree tree_from_dyck(const SymbolString& s);

// True when the label sequence of `s` (binary) is balanced.
bool is_balanced(const SymbolString& s);

// Shape-and-label equality from the roots; identifiers are ignored.
bool trees_equal(const Tree& a, const Tree& b);

// Text grammar:
//   tree  := node
//   node  := LABEL [ "(" node ("," node)* ")" ]
//   LABEL := "0" | "1"
// Whitespace between tokens is skipped. Throws kSyntax with the offending
// offset in details()[0]. Identifiers of the result follow preorder.
Tree parse_tree(std::string_view text);

// Canonical text, no whitespace.
std::string format_tree(const Tree& t);

// Same tree with labels replaced: bit i goes to the i-th node in preorder.
Tree relabel_preorder(const Tree& t, const SymbolString& labels);

// Copy with identifiers renumbered densely in preorder.
Tree compact(const Tree& t);

// Every ordered tree with n nodes (a Catalan family), unlabeled, in
// lexicographic order of their Dyck strings. Throws kSizeLimit above n = 14.
std::vector<Tree> enumerate_ordered_trees(std::size_t n);

}  // namespace treetrace

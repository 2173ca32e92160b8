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
#include <vector>

#include "treetrace/rng.hpp"
#include "treetrace/symbol_string.hpp"
#include "treetrace/tree.hpp"

namespace treetrace {

// Unlabeled tree encoding a bit string: a path ("backbone") of |S| + 2*buffer
// nodes whose first node is the root, with one leaf hung from backbone
// position buffer+i (1-based) for each bit S_i. Bit 0 puts the leaf before the
// backbone continuation in the child list, bit 1 after it.
struct EncodedInstance {
  SymbolString source;
  std::size_t buffer = 0;
  Tree tree;
  std::vector<NodeId> backbone;  // positions 1 .. |S| + 2*buffer
  std::vector<NodeId> leaves;    // leaf of bit i, i = 0 .. |S|-1

  std::size_t backbone_length() const { return backbone.size(); }
};

// Buffer length ceil((ln(1/delta) + ln N) / ln(1/q)), at least 1; q = 0
// gives 1.
std::size_t buffer_length(double delta, std::size_t planned_traces, double q);

// buffer_length raised to at least 2. With a buffer of 1 the backbone child of
// the last encoded position is a leaf, so that bit's side is invisible in the
// tree shape. Used wherever a buffer is derived rather than given.
std::size_t encoding_buffer(double delta, std::size_t planned_traces, double q);

EncodedInstance encode_string_as_tree(const SymbolString& s,
                                      std::size_t buffer);

// Reads the orientation of each encoded leaf back from the tree.
SymbolString decode_encoded_tree(const EncodedInstance& instance);

// A_n: the root followed by a chain of n nodes.
Tree path_tree(std::size_t n);

// B_n: A_{n-1} with a second leaf appended to the parent of its leaf.
Tree forked_tree(std::size_t n);

// Smallest m >= 2 with n * N * q^m <= delta.
std::size_t fuzzy_degree(std::size_t n, std::size_t planned_traces,
                         double delta, double q);

// True when every node whose children are all leaves has exactly m children.
// A single-node tree is not fuzzy.
bool is_fuzzy(const Tree& t, std::size_t m);

// Random fuzzy tree with exactly n nodes and degree m (n >= m + 1).
// Throws kSizeLimit otherwise. Not uniform over fuzzy trees.
Tree random_fuzzy_tree(std::size_t n, std::size_t m, Rng& rng);

// Uniform over the ordered trees with n nodes, labels 0.
Tree random_tree(std::size_t n, Rng& rng);

// Independent fair label bits, assigned in preorder.
Tree random_labels(const Tree& t, Rng& rng);

SymbolString random_bits(std::size_t n, Rng& rng);

}  // namespace treetrace

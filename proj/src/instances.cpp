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

#include "treetrace/instances.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "treetrace/error.hpp"

namespace treetrace {

std::size_t buffer_length(double delta, std::size_t planned_traces, double q) {
  if (!(delta > 0.0 && delta < 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "delta must lie in (0, 1)");
  }
  if (planned_traces == 0) {
    throw Error(ErrorCode::kInvalidArgument, "planned trace count must be >= 1");
  }
  if (!(q >= 0.0 && q < 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "q must lie in [0, 1)");
  }
  if (q == 0.0) return 1;
  const double raw = (std::log(1.0 / delta) +
                      std::log(static_cast<double>(planned_traces))) /
                     std::log(1.0 / q);
  // Absorb rounding in the logarithms so exact integers stay put.
  const double length = std::ceil(raw - 1e-9);
  return length < 1.0 ? 1 : static_cast<std::size_t>(length);
}

std::size_t encoding_buffer(double delta, std::size_t planned_traces, double q) {
  return std::max<std::size_t>(buffer_length(delta, planned_traces, q), 2);
}

EncodedInstance encode_string_as_tree(const SymbolString& s,
                                      std::size_t buffer) {
  if (s.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "encoded string must be non-empty");
  }
  if (buffer == 0) throw Error(ErrorCode::kInvalidArgument, "buffer must be >= 1");
  if (s.alphabet() != Alphabet::kBinary) {
    throw Error(ErrorCode::kInvalidArgument, "encoded string must be binary");
  }
  EncodedInstance inst;
  inst.source = s;
  inst.buffer = buffer;
  const std::size_t length = s.size() + 2 * buffer;
  TreeBuilder builder;
  inst.backbone.push_back(0);
  inst.leaves.assign(s.size(), kNoNode);
  for (std::size_t pos = 1; pos < length; ++pos) {
    // Backbone position pos (1-based) is inst.backbone[pos - 1].
    const NodeId at = inst.backbone.back();
    const bool carries_leaf = pos > buffer && pos <= buffer + s.size();
    if (carries_leaf && s[pos - buffer - 1] == 0) {
      inst.leaves[pos - buffer - 1] = builder.add_child(at);
      inst.backbone.push_back(builder.add_child(at));
    } else if (carries_leaf) {
      inst.backbone.push_back(builder.add_child(at));
      inst.leaves[pos - buffer - 1] = builder.add_child(at);
    } else {
      inst.backbone.push_back(builder.add_child(at));
    }
  }
  inst.tree = builder.build();
  return inst;
}

SymbolString decode_encoded_tree(const EncodedInstance& instance) {
  std::vector<std::uint8_t> bits;
  bits.reserve(instance.leaves.size());
  const Tree& t = instance.tree;
  for (std::size_t i = 0; i < instance.leaves.size(); ++i) {
    const NodeId leaf = instance.leaves[i];
    const auto& kids = t.children(t.parent(leaf));
    bits.push_back(kids.front() == leaf ? 0 : 1);
  }
  return SymbolString(std::move(bits));
}

Tree path_tree(std::size_t n) {
  if (n < 1) throw Error(ErrorCode::kInvalidArgument, "A_n needs n >= 1");
  TreeBuilder builder;
  NodeId tip = 0;
  for (std::size_t i = 0; i < n; ++i) tip = builder.add_child(tip);
  return builder.build();
}

Tree forked_tree(std::size_t n) {
  if (n < 2) throw Error(ErrorCode::kInvalidArgument, "B_n needs n >= 2");
  TreeBuilder builder;
  NodeId tip = 0;
  for (std::size_t i = 0; i + 2 < n; ++i) tip = builder.add_child(tip);
  builder.add_child(tip);
  builder.add_child(tip);
  return builder.build();
}

std::size_t fuzzy_degree(std::size_t n, std::size_t planned_traces,
                         double delta, double q) {
  if (!(q >= 0.0 && q < 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "q must lie in [0, 1)");
  }
  if (!(delta > 0.0)) throw Error(ErrorCode::kInvalidArgument, "delta must be > 0");
  const double scale = static_cast<double>(n) * static_cast<double>(planned_traces);
  std::size_t m = 2;
  while (scale * std::pow(q, static_cast<double>(m)) > delta * (1.0 + 1e-12)) {
    ++m;
  }
  return m;
}

bool is_fuzzy(const Tree& t, std::size_t m) {
  if (t.size() == 1) return false;
  for (NodeId id : t.ids()) {
    const auto& kids = t.children(id);
    if (kids.empty()) continue;
    bool all_leaves = true;
    for (NodeId c : kids) all_leaves = all_leaves && t.is_leaf(c);
    if (all_leaves && kids.size() != m) return false;
  }
  return true;
}

namespace {

// Plain adjacency used while growing a fuzzy tree.
struct Sketch {
  std::vector<std::vector<std::size_t>> children;
  std::vector<std::size_t> parent;  // parent[root] == root
  std::size_t root = 0;

  std::size_t add(std::size_t p) {
    children.emplace_back();
    parent.push_back(p);
    return children.size() - 1;
  }
  bool internal(std::size_t u) const { return !children[u].empty(); }

  Tree to_tree() const {
    TreeBuilder builder;
    std::vector<std::pair<std::size_t, NodeId>> stack{{root, 0}};
    while (!stack.empty()) {
      const auto [u, id] = stack.back();
      stack.pop_back();
      const auto& kids = children[u];
      std::vector<NodeId> ids;
      ids.reserve(kids.size());
      for (std::size_t i = 0; i < kids.size(); ++i) ids.push_back(builder.add_child(id));
      for (std::size_t i = kids.size(); i-- > 0;) stack.emplace_back(kids[i], ids[i]);
    }
    return compact(builder.build());
  }
};

}  // namespace

Tree random_fuzzy_tree(std::size_t n, std::size_t m, Rng& rng) {
  if (m < 2) throw Error(ErrorCode::kSizeLimit, "fuzzy degree must be >= 2");
  if (n < m + 1) {
    throw Error(ErrorCode::kSizeLimit,
                "a fuzzy tree of degree " + std::to_string(m) +
                    " needs at least " + std::to_string(m + 1) + " nodes");
  }
  Sketch sk;
  sk.children.emplace_back();
  sk.parent.push_back(0);
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t c = sk.add(0);
    sk.children[0].push_back(c);
  }

  // Moves that keep the invariant: expand a leaf into a node with m leaf
  // children (+m); hang an extra leaf under a node that already has an
  // internal child (+1); subdivide the edge into an internal node, or put a
  // new root on top (+1).
  while (sk.children.size() < n) {
    const std::size_t remaining = n - sk.children.size();
    if (remaining >= m && rng.bernoulli(0.5)) {
      std::vector<std::size_t> leaves;
      for (std::size_t u = 0; u < sk.children.size(); ++u) {
        if (!sk.internal(u)) leaves.push_back(u);
      }
      const std::size_t x = leaves[rng.below(leaves.size())];
      for (std::size_t i = 0; i < m; ++i) {
        const std::size_t c = sk.add(x);
        sk.children[x].push_back(c);
      }
      continue;
    }
    std::vector<std::size_t> hang;   // nodes with an internal child
    std::vector<std::size_t> split;  // internal nodes: subdivide above them
    for (std::size_t u = 0; u < sk.children.size(); ++u) {
      if (!sk.internal(u)) continue;
      split.push_back(u);
      for (std::size_t c : sk.children[u]) {
        if (sk.internal(c)) {
          hang.push_back(u);
          break;
        }
      }
    }
    const std::size_t pick = rng.below(hang.size() + split.size());
    if (pick < hang.size()) {
      const std::size_t u = hang[pick];
      const std::size_t slot = rng.below(sk.children[u].size() + 1);
      const std::size_t leaf = sk.add(u);
      sk.children[u].insert(sk.children[u].begin() + static_cast<long>(slot), leaf);
    } else {
      const std::size_t c = split[pick - hang.size()];
      if (c == sk.root) {
        const std::size_t top = sk.add(0);
        sk.parent[top] = top;
        sk.children[top].push_back(c);
        sk.parent[c] = top;
        sk.root = top;
      } else {
        const std::size_t p = sk.parent[c];
        const std::size_t mid = sk.add(p);
        for (auto& k : sk.children[p]) {
          if (k == c) k = mid;
        }
        sk.children[mid].push_back(c);
        sk.parent[c] = mid;
      }
    }
  }
  Tree out = sk.to_tree();
  if (out.size() != n || !is_fuzzy(out, m)) {
    throw Error(ErrorCode::kInvalidArgument, "fuzzy generator audit failed");
  }
  return out;
}

Tree random_tree(std::size_t n, Rng& rng) {
  if (n < 1) throw Error(ErrorCode::kInvalidArgument, "trees have n >= 1");
  const std::size_t k = n - 1;
  // Cycle lemma: among the rotations of a random arrangement of k up-steps and
  // k+1 down-steps exactly one stays non-negative until its final step; it
  // begins just after the first minimum of the prefix sums.
  std::vector<std::uint8_t> steps(2 * k + 1, 0);
  for (std::size_t i = 0; i < k; ++i) steps[i] = 1;
  for (std::size_t i = steps.size(); i > 1; --i) {
    std::swap(steps[i - 1], steps[rng.below(i)]);
  }
  long level = 0;
  long lowest = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i < steps.size(); ++i) {
    level += steps[i] == 1 ? 1 : -1;
    if (level < lowest) {
      lowest = level;
      start = i + 1;
    }
  }
  std::vector<std::uint8_t> word;
  word.reserve(2 * k);
  for (std::size_t i = 0; i + 1 < steps.size(); ++i) {
    word.push_back(steps[(start + i) % steps.size()]);
  }
  return tree_from_dyck(SymbolString(std::move(word)));
}

SymbolString random_bits(std::size_t n, Rng& rng) {
  std::vector<std::uint8_t> bits(n);
  for (auto& b : bits) b = static_cast<std::uint8_t>(rng.next() >> 63);
  return SymbolString(std::move(bits));
}

Tree random_labels(const Tree& t, Rng& rng) {
  return relabel_preorder(t, random_bits(t.size(), rng));
}

}  // namespace treetrace

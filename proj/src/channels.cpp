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

#include "treetrace/channels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <unordered_set>
#include <utility>

#include "treetrace/error.hpp"

namespace treetrace {

const char* to_string(ChannelModel model) {
  switch (model) {
    case ChannelModel::kString: return "string";
    case ChannelModel::kTed: return "ted";
    case ChannelModel::kLp: return "lp";
  }
  return "unknown";
}

ChannelModel parse_channel_model(std::string_view name) {
  if (name == "string") return ChannelModel::kString;
  if (name == "ted") return ChannelModel::kTed;
  if (name == "lp") return ChannelModel::kLp;
  throw Error(ErrorCode::kInvalidArgument,
              "unknown channel model '" + std::string(name) + "'");
}

void ChannelSpec::validate() const {
  if (!(q >= 0.0 && q < 1.0)) {
    throw Error(ErrorCode::kInvalidArgument,
                "deletion probability must lie in [0, 1)");
  }
}

double TraceDistribution::total() const {
  double sum = 0.0;
  for (const auto& [key, prob] : entries) sum += prob;
  return sum;
}

double TraceDistribution::probability(const std::string& key) const {
  const auto it = entries.find(key);
  return it == entries.end() ? 0.0 : it->second;
}

namespace {

void check_q(double q) { ChannelSpec{ChannelModel::kString, q}.validate(); }

// Mutable copy of a tree's slot table, used by the deletion operators.
struct WorkTree {
  std::vector<Node> slots;
  std::vector<bool> present;
  NodeId root;

  explicit WorkTree(const Tree& t)
      : slots(t.id_bound()), present(t.id_bound(), false), root(t.root()) {
    for (NodeId id : t.ids()) {
      slots[id] = t.node(id);
      present[id] = true;
    }
  }

  Tree freeze() && { return Tree(std::move(slots), std::move(present), root); }
};

void append_survivors(const Tree& t, const std::vector<bool>& deleted,
                      NodeId c, std::vector<NodeId>& out) {
  if (!deleted[c]) {
    out.push_back(c);
    return;
  }
  for (NodeId g : t.children(c)) append_survivors(t, deleted, g, out);
}

}  // namespace

SymbolString string_trace(const SymbolString& s, double q, Rng& rng) {
  check_q(q);
  std::vector<std::uint8_t> kept;
  kept.reserve(s.size());
  for (auto c : s) {
    if (!rng.bernoulli(q)) kept.push_back(c);
  }
  return SymbolString(std::move(kept), s.alphabet());
}

Tree ted_apply_mask(const Tree& t, const std::vector<bool>& deleted) {
  if (deleted.size() != t.id_bound()) {
    throw Error(ErrorCode::kInvalidArgument, "deletion mask has wrong size");
  }
  if (deleted[t.root()]) {
    throw Error(ErrorCode::kInvalidDeletion, "the root cannot be deleted");
  }
  std::vector<Node> slots(t.id_bound());
  std::vector<bool> present(t.id_bound(), false);
  std::vector<NodeId> stack{t.root()};
  while (!stack.empty()) {
    const NodeId u = stack.back();
    stack.pop_back();
    present[u] = true;
    Node& out = slots[u];
    out.label = t.label(u);
    for (NodeId c : t.children(u)) append_survivors(t, deleted, c, out.children);
    for (NodeId c : out.children) {
      slots[c].parent = u;
      stack.push_back(c);
    }
  }
  slots[t.root()].parent = kNoNode;
  return Tree(std::move(slots), std::move(present), t.root());
}

Tree ted_apply(const Tree& t, std::span<const NodeId> deleted) {
  std::vector<bool> mask(t.id_bound(), false);
  for (NodeId id : deleted) {
    if (!t.contains(id)) {
      throw Error(ErrorCode::kInvalidDeletion,
                  "node " + std::to_string(id) + " is not in the tree");
    }
    if (id == t.root()) {
      throw Error(ErrorCode::kInvalidDeletion, "the root cannot be deleted");
    }
    mask[id] = true;
  }
  return ted_apply_mask(t, mask);
}

Tree ted_trace(const Tree& t, double q, Rng& rng) {
  check_q(q);
  std::vector<bool> mask(t.id_bound(), false);
  for (NodeId id : t.ids()) {
    if (id != t.root()) mask[id] = rng.bernoulli(q);
  }
  return ted_apply_mask(t, mask);
}

TraceDistribution ted_trace_distribution(const Tree& t, double q,
                                         std::size_t cap) {
  check_q(q);
  if (t.size() > cap) {
    throw Error(ErrorCode::kSizeLimit,
                "tree has " + std::to_string(t.size()) +
                    " nodes; enumeration cap is " + std::to_string(cap));
  }
  std::vector<NodeId> non_root;
  for (NodeId id : t.ids()) {
    if (id != t.root()) non_root.push_back(id);
  }
  const std::size_t m = non_root.size();
  const double p = 1.0 - q;
  TraceDistribution dist;
  std::vector<bool> mask(t.id_bound(), false);
  for (std::uint64_t subset = 0; subset < (std::uint64_t{1} << m); ++subset) {
    std::size_t removed = 0;
    for (std::size_t i = 0; i < m; ++i) {
      const bool del = ((subset >> i) & 1U) != 0;
      mask[non_root[i]] = del;
      removed += del ? 1 : 0;
    }
    const double prob = std::pow(q, static_cast<double>(removed)) *
                        std::pow(p, static_cast<double>(m - removed));
    if (prob == 0.0) continue;
    dist.entries[format_tree(ted_apply_mask(t, mask))] += prob;
  }
  return dist;
}

namespace {

void lp_delete_one(WorkTree& w, NodeId v) {
  if (v >= w.present.size() || !w.present[v]) {
    throw Error(ErrorCode::kStaleTarget,
                "node " + std::to_string(v) + " is no longer in the tree");
  }
  if (v == w.root) {
    throw Error(ErrorCode::kInvalidDeletion, "the root cannot be deleted");
  }
  std::vector<NodeId> path{v};
  while (!w.slots[path.back()].children.empty()) {
    path.push_back(w.slots[path.back()].children.front());
  }
  const NodeId parent = w.slots[v].parent;
  auto& siblings = w.slots[parent].children;
  const auto at = std::find(siblings.begin(), siblings.end(), v);
  const std::size_t k = path.size() - 1;
  if (k == 0) {
    siblings.erase(at);
  } else {
    // Other children of each place on the path, captured before rewiring.
    std::vector<std::vector<NodeId>> others(k);
    for (std::size_t i = 0; i < k; ++i) {
      const auto& kids = w.slots[path[i]].children;
      others[i].assign(kids.begin() + 1, kids.end());
    }
    *at = path[1];
    for (std::size_t i = 0; i < k; ++i) {
      const NodeId mover = path[i + 1];
      Node& node = w.slots[mover];
      node.parent = i == 0 ? parent : path[i];
      node.children.clear();
      if (i + 1 < k) node.children.push_back(path[i + 2]);
      for (NodeId o : others[i]) {
        node.children.push_back(o);
        w.slots[o].parent = mover;
      }
    }
  }
  w.slots[v] = Node{};
  w.present[v] = false;
}

}  // namespace

Tree lp_apply(const Tree& t, std::span<const NodeId> deleted) {
  WorkTree w(t);
  for (NodeId id : deleted) lp_delete_one(w, id);
  return std::move(w).freeze();
}

Tree lp_trace(const Tree& t, double q, Rng& rng) {
  check_q(q);
  std::vector<NodeId> marked;
  for (NodeId id : preorder(t)) {
    if (id != t.root() && rng.bernoulli(q)) marked.push_back(id);
  }
  return lp_apply(t, marked);
}

std::vector<Tree> lp_trace_set(const Tree& t, std::size_t k, std::size_t cap) {
  if (t.size() > cap) {
    throw Error(ErrorCode::kSizeLimit,
                "tree has " + std::to_string(t.size()) +
                    " nodes; enumeration cap is " + std::to_string(cap));
  }
  if (k + 1 > t.size()) {
    throw Error(ErrorCode::kInvalidArgument,
                "cannot remove " + std::to_string(k) + " of " +
                    std::to_string(t.size() - 1) + " non-root nodes");
  }
  // Every node present in an LP trace is an original node not yet deleted, so
  // sequences of k distinct marks in every order are exactly the sequences of
  // k single deletions of currently present nodes. The result of one deletion
  // depends only on the shape and the position, so each level is deduplicated
  // by shape.
  std::map<std::string, Tree> level;
  level.emplace(format_tree(t), compact(t));
  for (std::size_t step = 0; step < k; ++step) {
    std::map<std::string, Tree> next;
    for (const auto& [key, tree] : level) {
      for (NodeId id : tree.ids()) {
        if (id == tree.root()) continue;
        const NodeId one[] = {id};
        Tree out = lp_apply(tree, one);
        std::string text = format_tree(out);
        if (!next.contains(text)) next.emplace(std::move(text), compact(out));
      }
    }
    level = std::move(next);
  }
  std::vector<Tree> result;
  result.reserve(level.size());
  for (auto& [key, tree] : level) result.push_back(std::move(tree));
  return result;
}

Tree sample_tree_trace(const Tree& t, const ChannelSpec& channel, Rng& rng) {
  switch (channel.model) {
    case ChannelModel::kTed: return ted_trace(t, channel.q, rng);
    case ChannelModel::kLp: return lp_trace(t, channel.q, rng);
    case ChannelModel::kString: break;
  }
  throw Error(ErrorCode::kInvalidArgument,
              "the string channel does not apply to trees");
}

double embedding_count(const SymbolString& s, const SymbolString& trace) {
  const std::size_t m = trace.size();
  if (m > s.size()) return 0.0;
  // ways[j]: embeddings of trace[0, j) into the prefix of s read so far.
  std::vector<double> ways(m + 1, 0.0);
  ways[0] = 1.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const std::size_t hi = std::min(m, i + 1);
    for (std::size_t j = hi; j >= 1; --j) {
      if (trace[j - 1] == s[i]) ways[j] += ways[j - 1];
    }
  }
  return ways[m];
}

double string_trace_prob(const SymbolString& s, const SymbolString& trace,
                         double q) {
  check_q(q);
  const double count = embedding_count(s, trace);
  if (count == 0.0) return 0.0;
  const auto kept = static_cast<double>(trace.size());
  const auto lost = static_cast<double>(s.size() - trace.size());
  return count * std::pow(1.0 - q, kept) * std::pow(q, lost);
}

double string_trace_log_prob(const SymbolString& s, const SymbolString& trace,
                             double q) {
  check_q(q);
  constexpr double kNegInf = -std::numeric_limits<double>::infinity();
  const double count = embedding_count(s, trace);
  if (count == 0.0) return kNegInf;
  const std::size_t lost = s.size() - trace.size();
  if (lost > 0 && q == 0.0) return kNegInf;
  double lp = std::log(count) +
              static_cast<double>(trace.size()) * std::log1p(-q);
  if (lost > 0) lp += static_cast<double>(lost) * std::log(q);
  return lp;
}

}  // namespace treetrace

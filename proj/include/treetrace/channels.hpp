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
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "treetrace/rng.hpp"
#include "treetrace/symbol_string.hpp"
#include "treetrace/tree.hpp"

namespace treetrace {

enum class ChannelModel { kString, kTed, kLp };

const char* to_string(ChannelModel model);
// Accepts "string", "ted", "lp". Throws kInvalidArgument otherwise.
ChannelModel parse_channel_model(std::string_view name);

// A deletion model with deletion probability q in [0, 1). In both tree models
// the root is never deleted.
struct ChannelSpec {
  ChannelModel model = ChannelModel::kTed;
  double q = 0.0;

  double p() const { return 1.0 - q; }
  void validate() const;
};

// Exact law of a channel output, keyed by canonical text (format_tree for
// trees, SymbolString::str for strings).
struct TraceDistribution {
  std::map<std::string, double> entries;

  double total() const;
  double probability(const std::string& key) const;
};

inline constexpr std::size_t kTreeEnumerationCap = 14;
inline constexpr std::size_t kStringEnumerationCap = 16;

// Keeps each symbol independently with probability 1 - q.
SymbolString string_trace(const SymbolString& s, double q, Rng& rng);

// Tree-edit-distance deletion of a set of non-root nodes: every deleted node
// is replaced, in its parent's child list, by its own (recursively flattened)
// surviving children. Throws kInvalidDeletion for the root or an absent node.
Tree ted_apply(const Tree& t, std::span<const NodeId> deleted);

// Same, with the deleted set as a table indexed by NodeId.
Tree ted_apply_mask(const Tree& t, const std::vector<bool>& deleted);

// Marks each non-root node with probability q, then ted_apply.
Tree ted_trace(const Tree& t, double q, Rng& rng);

// Exact distribution of ted_trace over all 2^(n-1) mark subsets.
// Throws kSizeLimit when n exceeds `cap`.
TraceDistribution ted_trace_distribution(const Tree& t, double q,
                                         std::size_t cap = kTreeEnumerationCap);

// Left-propagation deletions applied one at a time in the given order. Deleting
// v walks the leftmost-child path v = x0, x1, ..., xk (xk a leaf); each xi+1
// moves up into the place of xi together with its label, the other children of
// each place stay where they are, and the slot of xk disappears.
// Throws kStaleTarget for a node that is no longer present and
// kInvalidDeletion for the root.
Tree lp_apply(const Tree& t, std::span<const NodeId> deleted);

// Marks each non-root node with probability q, then applies the marked
// deletions in ascending preorder position of the original tree.
Tree lp_trace(const Tree& t, double q, Rng& rng);

// LP_k(t): every tree reachable by k left-propagation deletions, over all mark
// subsets of size k and all application orders, deduplicated by shape and
// sorted by canonical text. Throws kSizeLimit when n exceeds `cap`.
std::vector<Tree> lp_trace_set(const Tree& t, std::size_t k,
                               std::size_t cap = kTreeEnumerationCap);

// Dispatches to ted_trace / lp_trace. kString is rejected.
Tree sample_tree_trace(const Tree& t, const ChannelSpec& channel, Rng& rng);

// Number of index sets at which `trace` embeds into `s` as a subsequence.
double embedding_count(const SymbolString& s, const SymbolString& trace);

// P(string_trace(s, q) == trace): embeddings * p^|trace| * q^(|s|-|trace|).
double string_trace_prob(const SymbolString& s, const SymbolString& trace,
                         double q);

// Natural log of string_trace_prob; -infinity when impossible.
double string_trace_log_prob(const SymbolString& s, const SymbolString& trace,
                             double q);

}  // namespace treetrace

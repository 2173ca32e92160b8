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
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "treetrace/instances.hpp"
#include "treetrace/string_recon.hpp"
#include "treetrace/symbol_string.hpp"
#include "treetrace/tree.hpp"

namespace treetrace {

struct ReconstructionReport {
  Tree result;
  std::size_t traces_used = 0;
  std::optional<bool> success;  // set when ground truth was supplied
  std::map<std::string, double> diagnostics;
};

// --- Known topology -------------------------------------------------------

// Serializes each trace by preorder labels, reconstructs the label string of
// length topology.size() with `reconstructor`, and writes bit i onto the i-th
// preorder node of the topology. Throws kProtocol when the reconstructor
// returns a string of the wrong length, kEmptyInput without traces.
Tree reconstruct_labels_known_topology(const Tree& topology,
                                       std::span<const Tree> traces, double q,
                                       const StringReconstructor& reconstructor);

// --- Fuzzy trees ----------------------------------------------------------

// One depth-first pass. `one_two` gets a 1 for every step down an edge and a 2
// on reaching a leaf; `zero_two` gets a 2 on reaching a leaf and a 0 for every
// step back up. A single node counts as a leaf.
struct DualStrings {
  SymbolString zero_two;
  SymbolString one_two;
};
DualStrings dual_strings(const Tree& t);

// Rebuilds the tree from its dual strings, using the 2s as aligned leaf
// anchors. Throws kMalformedPair for mismatched leaf counts or strings that no
// tree produces.
Tree merge_dual_strings(const SymbolString& zero_two, const SymbolString& one_two);

// Two-letter alphabet <-> binary: the non-2 symbol maps to 1, the 2 to 0.
SymbolString dual_to_binary(const SymbolString& s);
SymbolString binary_to_dual(const SymbolString& bits, Alphabet alphabet);

// Reconstructs a fuzzy tree from TED traces: both dual string families are
// reconstructed independently (target length: the longest observed dual
// string, since non-orphaning deletions only shorten them) and merged.
// Throws kReconstructionFailed (details: the two recovered strings) when the
// merge is impossible.
Tree reconstruct_fuzzy(std::span<const Tree> traces, std::size_t n,
                       std::size_t m, double q,
                       const StringReconstructor& reconstructor);

// --- Encoded strings ------------------------------------------------------

// What a trace of an encoded tree shows, read along its spine from the root:
// for every spine node except the last, the number of leaves before and after
// its single internal child; for the last one, its number of children (all
// leaves). Throws kProtocol when a node has two internal children.
struct SpineObservation {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> groups;
  std::uint32_t final_children = 0;

  friend auto operator<=>(const SpineObservation&, const SpineObservation&) = default;
};
SpineObservation observe_spine(const Tree& trace);

// Exact log P(observation | encode_string_as_tree(candidate, buffer), TED, q).
double spine_log_likelihood(const SpineObservation& obs,
                            const SymbolString& candidate, std::size_t buffer,
                            double q);

inline constexpr std::size_t kEncodedLengthCap = 16;

// Maximum-likelihood decoding over all 2^length strings using only the trace
// shapes (no identifiers). Ties go to the lexicographically smallest string.
// Throws kUndecidedPosition (details: 0-based positions) when flipping a bit of
// the winner leaves the likelihood unchanged.
SymbolString reconstruct_encoded(std::span<const Tree> traces, std::size_t length,
                                 std::size_t buffer, double q);

// Decoder that relies on node identifiers carried through the channel:
// backbone nodes are those seen internal, ordered by mean depth; each leaf is
// assigned to the backbone node it hangs from most often; its side is the
// majority vote over traces in which the leaf and that parent both survive
// and a backbone child is visible. Throws kUndecidedPosition when a position
// has no such observation.
SymbolString reconstruct_encoded_tracked(std::span<const Tree> traces,
                                         std::size_t length, std::size_t buffer);

// Fraction of (trace, encoded leaf) pairs in which the leaf and its backbone
// parent were both deleted.
double complete_removal_rate(const EncodedInstance& instance,
                             std::span<const Tree> traces);

// Runs reconstruct_encoded and records complete_removal_rate and
// clean_trace_fraction as diagnostics.
ReconstructionReport encoded_report(const EncodedInstance& instance,
                                    std::span<const Tree> traces, double q);

}  // namespace treetrace

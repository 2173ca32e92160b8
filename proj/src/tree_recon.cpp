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

#include "treetrace/tree_recon.hpp"

#include <algorithm>
#include <utility>

#include "treetrace/error.hpp"

namespace treetrace {

Tree reconstruct_labels_known_topology(const Tree& topology,
                                       std::span<const Tree> traces, double q,
                                       const StringReconstructor& reconstructor) {
  if (traces.empty()) throw Error(ErrorCode::kEmptyInput, "no traces");
  std::vector<SymbolString> strings;
  strings.reserve(traces.size());
  for (const auto& t : traces) strings.push_back(preorder_label_string(t));
  const SymbolString labels = reconstructor(strings, topology.size(), q);
  if (labels.size() != topology.size()) {
    throw Error(ErrorCode::kProtocol,
                "reconstructor returned " + std::to_string(labels.size()) +
                    " labels for " + std::to_string(topology.size()) + " nodes");
  }
  return relabel_preorder(topology, labels);
}

DualStrings dual_strings(const Tree& t) {
  std::vector<std::uint8_t> zero_two;
  std::vector<std::uint8_t> one_two;
  std::vector<std::pair<NodeId, std::size_t>> stack{{t.root(), 0}};
  if (t.is_leaf(t.root())) {
    zero_two.push_back(2);
    one_two.push_back(2);
  }
  while (!stack.empty()) {
    auto& [u, next] = stack.back();
    const auto& kids = t.children(u);
    if (next < kids.size()) {
      const NodeId c = kids[next++];
      one_two.push_back(1);
      if (t.is_leaf(c)) {
        one_two.push_back(2);
        zero_two.push_back(2);
      }
      stack.emplace_back(c, 0);
    } else {
      stack.pop_back();
      if (!stack.empty()) zero_two.push_back(0);
    }
  }
  return {SymbolString(std::move(zero_two), Alphabet::kZeroTwo),
          SymbolString(std::move(one_two), Alphabet::kOneTwo)};
}

Tree merge_dual_strings(const SymbolString& zero_two, const SymbolString& one_two) {
  auto fail = [&](const std::string& why) -> Error {
    return Error(ErrorCode::kMalformedPair, why,
                 {zero_two.str(), one_two.str()});
  };
  if (zero_two.alphabet() != Alphabet::kZeroTwo ||
      one_two.alphabet() != Alphabet::kOneTwo) {
    throw fail("expected a {0,2} string and a {1,2} string");
  }
  // Descents before each leaf, from the {1,2} string.
  std::vector<std::size_t> down{0};
  for (auto c : one_two) {
    if (c == 2) {
      down.push_back(0);
    } else {
      ++down.back();
    }
  }
  if (down.back() != 0) throw fail("descents after the last leaf");
  down.pop_back();
  // Ascents after each leaf, from the {0,2} string.
  std::vector<std::size_t> up;
  for (auto c : zero_two) {
    if (c == 2) {
      up.push_back(0);
    } else if (up.empty()) {
      throw fail("ascent before the first leaf");
    } else {
      ++up.back();
    }
  }
  if (up.size() != down.size()) throw fail("leaf counts differ");
  if (up.empty()) throw fail("no leaves");

  std::vector<std::uint8_t> tour;
  for (std::size_t i = 0; i < up.size(); ++i) {
    tour.insert(tour.end(), down[i], 1);
    tour.insert(tour.end(), up[i], 0);
  }
  const SymbolString walk(std::move(tour));
  if (!is_balanced(walk)) throw fail("edge walk is not balanced");
  Tree t = tree_from_dyck(walk);
  const DualStrings check = dual_strings(t);
  if (check.zero_two != zero_two || check.one_two != one_two) {
    throw fail("no tree produces this pair");
  }
  return t;
}

SymbolString dual_to_binary(const SymbolString& s) {
  if (s.alphabet() == Alphabet::kBinary) {
    throw Error(ErrorCode::kInvalidArgument, "expected a dual-alphabet string");
  }
  std::vector<std::uint8_t> bits;
  bits.reserve(s.size());
  for (auto c : s) bits.push_back(c == 2 ? 0 : 1);
  return SymbolString(std::move(bits));
}

SymbolString binary_to_dual(const SymbolString& bits, Alphabet alphabet) {
  if (alphabet == Alphabet::kBinary) {
    throw Error(ErrorCode::kInvalidArgument, "target alphabet must be dual");
  }
  const std::uint8_t other = alphabet == Alphabet::kZeroTwo ? 0 : 1;
  std::vector<std::uint8_t> out;
  out.reserve(bits.size());
  for (auto c : bits) out.push_back(c == 1 ? other : 2);
  return SymbolString(std::move(out), alphabet);
}

Tree reconstruct_fuzzy(std::span<const Tree> traces, std::size_t n,
                       std::size_t m, double q,
                       const StringReconstructor& reconstructor) {
  if (traces.empty()) throw Error(ErrorCode::kEmptyInput, "no traces");
  if (m < 2 || n < m + 1) {
    throw Error(ErrorCode::kInvalidArgument, "incompatible fuzzy size and degree");
  }
  std::vector<SymbolString> zeros;
  std::vector<SymbolString> ones;
  zeros.reserve(traces.size());
  ones.reserve(traces.size());
  std::size_t longest = 0;
  for (const auto& t : traces) {
    const DualStrings d = dual_strings(t);
    longest = std::max({longest, d.zero_two.size(), d.one_two.size()});
    zeros.push_back(dual_to_binary(d.zero_two));
    ones.push_back(dual_to_binary(d.one_two));
  }
  const SymbolString zero_two =
      binary_to_dual(reconstructor(zeros, longest, q), Alphabet::kZeroTwo);
  const SymbolString one_two =
      binary_to_dual(reconstructor(ones, longest, q), Alphabet::kOneTwo);
  try {
    return merge_dual_strings(zero_two, one_two);
  } catch (const Error& e) {
    throw Error(ErrorCode::kReconstructionFailed,
                std::string("recovered dual strings do not merge (") + e.what() + ")",
                {zero_two.str(), one_two.str()});
  }
}

}  // namespace treetrace

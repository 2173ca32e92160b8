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
#include <functional>
#include <iosfwd>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "treetrace/symbol_string.hpp"
#include "treetrace/tree.hpp"

namespace treetrace {

// Reference implementations written independently of the library code they
// are used to check.
namespace oracle {

// Contracts the nodes of `order` one at a time: each is replaced in its
// parent's child list by its current children.
Tree sequential_contraction(const Tree& t, const std::vector<NodeId>& order);

// Every tree reachable by deleting k distinct non-root nodes one after another
// under left propagation, over all subsets and all orders, as canonical text.
std::set<std::string> lp_reachable(const Tree& t, std::size_t k);

// Distinct subsequences of s, by enumerating all 2^|s| index subsets.
std::set<SymbolString> distinct_subsequences(const SymbolString& s);

// E[zero-padded trace] by enumerating all 2^|s| deletion masks.
std::vector<double> enumerated_mean(const SymbolString& s, double q);

}  // namespace oracle

using TedApplyFn = std::function<Tree(const Tree&, const std::vector<bool>&)>;

// Deliberately broken TED: the surviving children of a deleted node are
// spliced in reverse order. Used to show the suite catches it.
Tree ted_apply_reversed_splice(const Tree& t, const std::vector<bool>& deleted);

struct PropertyResult {
  std::string name;
  bool passed = true;
  std::size_t cases = 0;
  std::string detail;  // first counterexample, or a measurement summary
  double seconds = 0.0;
};

// --- Individual properties (exhaustive unless noted) ----------------------

PropertyResult check_dyck_properties(std::size_t max_n);
PropertyResult check_parse_round_trip(std::size_t count, std::size_t max_n,
                                      std::uint64_t seed);  // random trees
PropertyResult check_ted_order_invariance(std::size_t max_n, std::size_t orders,
                                          std::uint64_t seed,
                                          const TedApplyFn& apply = {});
PropertyResult check_traversal_preservation(std::size_t max_n,
                                            const TedApplyFn& apply = {});
PropertyResult check_dyck_pair_removal(std::size_t max_n);
PropertyResult check_ted_distribution_normalized(std::size_t max_n, double q);
PropertyResult check_string_prob_normalized(std::size_t max_len, double q);
PropertyResult check_exact_mean_enumeration(std::size_t max_len, double q);
PropertyResult check_binomial_identity(std::size_t max_k, std::uint64_t seed);
PropertyResult check_lp_indistinguishable(std::size_t min_n, std::size_t max_n);
PropertyResult check_lp_trace_set_oracle(std::size_t max_n);
PropertyResult check_encoded_round_trip(std::size_t max_len);
PropertyResult check_dual_round_trip(std::size_t max_n);
PropertyResult check_fuzzy_positional_deletion(std::size_t max_n,
                                               const std::vector<std::size_t>& degrees);
PropertyResult check_separation(std::size_t max_n, double q);
PropertyResult check_arc_maxima(std::size_t max_n);
PropertyResult check_ted_expectation_inequality(std::size_t max_n,
                                                const std::vector<double>& qs);
PropertyResult check_known_topology_q0(std::size_t max_n);

// --- Suite ----------------------------------------------------------------

enum class VerifyLevel { kQuick, kFull };

// "quick" or "full"; throws kInvalidArgument otherwise.
VerifyLevel parse_verify_level(std::string_view text);

struct VerifyReport {
  std::vector<PropertyResult> results;
  bool all_passed() const;
};

// quick: n <= 6 everywhere. full: the sizes each property is specified at
// (trees n <= 7 or 8, strings up to length 10 or 12).
VerifyReport verify_suite(VerifyLevel level);

// One line per property: PASS/FAIL, name, cases, seconds, detail.
void print_report(std::ostream& out, const VerifyReport& report);

}  // namespace treetrace

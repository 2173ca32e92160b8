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

#include "treetrace/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <numeric>
#include <ostream>
#include <sstream>

#include "treetrace/channels.hpp"
#include "treetrace/error.hpp"
#include "treetrace/instances.hpp"
#include "treetrace/rng.hpp"
#include "treetrace/string_recon.hpp"
#include "treetrace/tree_recon.hpp"

namespace treetrace {

namespace oracle {

Tree sequential_contraction(const Tree& t, const std::vector<NodeId>& order) {
  std::vector<Node> slots(t.id_bound());
  std::vector<bool> present(t.id_bound(), false);
  for (NodeId id : t.ids()) {
    slots[id] = t.node(id);
    present[id] = true;
  }
  for (NodeId v : order) {
    const NodeId p = slots[v].parent;
    auto& siblings = slots[p].children;
    const auto at = std::find(siblings.begin(), siblings.end(), v);
    const auto offset = at - siblings.begin();
    siblings.erase(at);
    siblings.insert(siblings.begin() + offset, slots[v].children.begin(),
                    slots[v].children.end());
    for (NodeId c : slots[v].children) slots[c].parent = p;
    slots[v] = Node{};
    present[v] = false;
  }
  return Tree(std::move(slots), std::move(present), t.root());
}

namespace {

// Positions hold contents; deleting a content shifts the contents of its
// leftmost path up by one position and drops the final position.
struct Positional {
  std::vector<std::vector<std::size_t>> children;
  std::vector<std::size_t> parent;
  std::vector<std::size_t> content;  // original node id held at a position
  std::vector<std::uint8_t> label;   // label of each original node id

  explicit Positional(const Tree& t) {
    const std::size_t bound = t.id_bound();
    children.resize(bound);
    parent.assign(bound, bound);
    content.resize(bound);
    label.assign(bound, 0);
    for (NodeId id : t.ids()) {
      content[id] = id;
      label[id] = t.label(id);
      for (NodeId c : t.children(id)) {
        children[id].push_back(c);
        parent[c] = id;
      }
    }
  }

  void remove(std::size_t root, std::size_t target) {
    std::size_t x = root;
    std::vector<std::size_t> stack{root};
    while (!stack.empty()) {
      const std::size_t u = stack.back();
      stack.pop_back();
      if (content[u] == target) x = u;
      for (std::size_t c : children[u]) stack.push_back(c);
    }
    while (!children[x].empty()) {
      const std::size_t next = children[x].front();
      content[x] = content[next];
      x = next;
    }
    auto& sib = children[parent[x]];
    sib.erase(std::find(sib.begin(), sib.end(), x));
  }

  std::string text(std::size_t u) const {
    std::string out(1, static_cast<char>('0' + label[content[u]]));
    if (!children[u].empty()) {
      out += '(';
      for (std::size_t i = 0; i < children[u].size(); ++i) {
        if (i > 0) out += ',';
        out += text(children[u][i]);
      }
      out += ')';
    }
    return out;
  }
};

}  // namespace

std::set<std::string> lp_reachable(const Tree& t, std::size_t k) {
  std::vector<NodeId> nonroot;
  for (NodeId id : t.ids()) {
    if (id != t.root()) nonroot.push_back(id);
  }
  std::set<std::string> out;
  if (k > nonroot.size()) return out;
  std::vector<bool> choose(nonroot.size(), false);
  std::fill(choose.begin(), choose.begin() + static_cast<long>(k), true);
  do {
    std::vector<NodeId> subset;
    for (std::size_t i = 0; i < nonroot.size(); ++i) {
      if (choose[i]) subset.push_back(nonroot[i]);
    }
    do {
      Positional pos(t);
      for (NodeId v : subset) pos.remove(t.root(), v);
      out.insert(pos.text(t.root()));
    } while (std::next_permutation(subset.begin(), subset.end()));
  } while (std::prev_permutation(choose.begin(), choose.end()));
  return out;
}

std::set<SymbolString> distinct_subsequences(const SymbolString& s) {
  std::set<SymbolString> out;
  for (std::size_t mask = 0; mask < (std::size_t{1} << s.size()); ++mask) {
    std::vector<std::uint8_t> kept;
    for (std::size_t i = 0; i < s.size(); ++i) {
      if ((mask >> i) & 1U) kept.push_back(s[i]);
    }
    out.insert(SymbolString(std::move(kept), s.alphabet()));
  }
  return out;
}

std::vector<double> enumerated_mean(const SymbolString& s, double q) {
  std::vector<double> mean(s.size(), 0.0);
  for (std::size_t mask = 0; mask < (std::size_t{1} << s.size()); ++mask) {
    double prob = 1.0;
    std::size_t j = 0;
    std::vector<std::uint8_t> kept;
    for (std::size_t i = 0; i < s.size(); ++i) {
      if ((mask >> i) & 1U) {
        prob *= 1.0 - q;
        kept.push_back(s[i]);
      } else {
        prob *= q;
      }
    }
    for (auto bit : kept) mean[j++] += prob * bit;
  }
  return mean;
}

}  // namespace oracle

Tree ted_apply_reversed_splice(const Tree& t, const std::vector<bool>& deleted) {
  std::vector<Node> slots(t.id_bound());
  std::vector<bool> present(t.id_bound(), false);
  std::function<void(NodeId, std::vector<NodeId>&)> take_place =
      [&](NodeId u, std::vector<NodeId>& out) {
        if (!deleted[u]) {
          out.push_back(u);
          return;
        }
        std::vector<NodeId> inner;
        for (NodeId c : t.children(u)) take_place(c, inner);
        out.insert(out.end(), inner.rbegin(), inner.rend());
      };
  for (NodeId id : t.ids()) {
    if (deleted[id]) continue;
    present[id] = true;
    slots[id].label = t.label(id);
    for (NodeId c : t.children(id)) take_place(c, slots[id].children);
  }
  for (NodeId id : t.ids()) {
    if (!present[id]) continue;
    for (NodeId c : slots[id].children) slots[c].parent = id;
  }
  slots[t.root()].parent = kNoNode;
  return Tree(std::move(slots), std::move(present), t.root());
}

namespace {

template <typename Body>
PropertyResult run_property(std::string name, Body body) {
  PropertyResult r;
  r.name = std::move(name);
  const auto start = std::chrono::steady_clock::now();
  try {
    body(r);
  } catch (const std::exception& e) {
    r.passed = false;
    r.detail = std::string("exception: ") + e.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

void fail(PropertyResult& r, const std::string& why) {
  if (r.passed) r.detail = why;
  r.passed = false;
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

// Every ordered tree with 1..max_n nodes.
std::vector<Tree> all_trees(std::size_t max_n) {
  std::vector<Tree> out;
  for (std::size_t n = 1; n <= max_n; ++n) {
    auto level = enumerate_ordered_trees(n);
    out.insert(out.end(), level.begin(), level.end());
  }
  return out;
}

// Deletion masks over the non-root nodes of t, indexed by NodeId.
std::vector<std::vector<bool>> all_masks(const Tree& t) {
  std::vector<NodeId> nonroot;
  for (NodeId id : t.ids()) {
    if (id != t.root()) nonroot.push_back(id);
  }
  std::vector<std::vector<bool>> out;
  for (std::size_t m = 0; m < (std::size_t{1} << nonroot.size()); ++m) {
    std::vector<bool> mask(t.id_bound(), false);
    for (std::size_t i = 0; i < nonroot.size(); ++i) mask[nonroot[i]] = (m >> i) & 1U;
    out.push_back(std::move(mask));
  }
  return out;
}

std::vector<SymbolString> all_strings(std::size_t len) {
  std::vector<SymbolString> out;
  for (std::size_t v = 0; v < (std::size_t{1} << len); ++v) {
    std::vector<std::uint8_t> bits(len);
    for (std::size_t i = 0; i < len; ++i) bits[i] = (v >> (len - 1 - i)) & 1U;
    out.emplace_back(std::move(bits));
  }
  return out;
}

std::string mask_text(const Tree& t, const std::vector<bool>& mask) {
  std::string out = "{";
  for (NodeId id : t.ids()) {
    if (mask[id]) out += (out.size() > 1 ? "," : "") + std::to_string(id);
  }
  return out + "}";
}

// (owner, symbol) tokens of the dual strings, in emission order.
using Tokens = std::vector<std::pair<NodeId, std::uint8_t>>;
void dual_tokens(const Tree& t, NodeId u, Tokens& zero_two, Tokens& one_two) {
  for (NodeId c : t.children(u)) {
    one_two.emplace_back(c, 1);
    if (t.is_leaf(c)) {
      one_two.emplace_back(c, 2);
      zero_two.emplace_back(c, 2);
    }
    dual_tokens(t, c, zero_two, one_two);
    zero_two.emplace_back(c, 0);
  }
}

SymbolString surviving(const Tokens& tokens, const std::vector<bool>& deleted,
                       Alphabet alphabet) {
  std::vector<std::uint8_t> out;
  for (const auto& [owner, sym] : tokens) {
    if (!deleted[owner]) out.push_back(sym);
  }
  return SymbolString(std::move(out), alphabet);
}

}  // namespace

PropertyResult check_dyck_properties(std::size_t max_n) {
  return run_property("dyck_balanced_round_trip", [&](PropertyResult& r) {
    for (const Tree& t : all_trees(max_n)) {
      ++r.cases;
      const SymbolString d = dyck_string(t);
      long level = 0;
      bool prefix_ok = true;
      for (auto c : d) {
        level += c == 1 ? 1 : -1;
        prefix_ok = prefix_ok && level >= 0;
      }
      if (d.size() != 2 * (t.size() - 1) || !prefix_ok || level != 0) {
        return fail(r, "unbalanced walk for " + format_tree(t));
      }
      if (!trees_equal(tree_from_dyck(d), t)) {
        return fail(r, "round trip changed " + format_tree(t));
      }
      const auto order = preorder(t);
      std::vector<std::size_t> at(t.id_bound(), 0);
      for (std::size_t i = 0; i < order.size(); ++i) at[order[i]] = i;
      if (order.size() != t.size() || order.front() != t.root()) {
        return fail(r, "preorder size/root wrong for " + format_tree(t));
      }
      for (NodeId id : t.ids()) {
        const auto& kids = t.children(id);
        for (std::size_t i = 0; i < kids.size(); ++i) {
          if (at[kids[i]] <= at[id] || (i > 0 && at[kids[i]] <= at[kids[i - 1]])) {
            return fail(r, "preorder order wrong for " + format_tree(t));
          }
        }
      }
    }
  });
}

PropertyResult check_parse_round_trip(std::size_t count, std::size_t max_n,
                                      std::uint64_t seed) {
  return run_property("parse_format_round_trip", [&](PropertyResult& r) {
    Rng rng(seed);
    for (std::size_t i = 0; i < count; ++i) {
      ++r.cases;
      const std::size_t n = 1 + rng.below(max_n);
      const Tree t = random_labels(random_tree(n, rng), rng);
      const std::string text = format_tree(t);
      std::string spaced;
      for (char c : text) {
        spaced += c;
        spaced += ' ';
      }
      if (!trees_equal(parse_tree(text), t) || format_tree(parse_tree(spaced)) != text) {
        return fail(r, "round trip failed for " + text);
      }
    }
  });
}

PropertyResult check_ted_order_invariance(std::size_t max_n, std::size_t orders,
                                          std::uint64_t seed, const TedApplyFn& apply) {
  return run_property("ted_order_invariance", [&](PropertyResult& r) {
    Rng rng(seed);
    for (const Tree& shape : all_trees(max_n)) {
      const Tree t = random_labels(shape, rng);
      for (const auto& mask : all_masks(t)) {
        const Tree flat = apply ? apply(t, mask) : ted_apply_mask(t, mask);
        std::vector<NodeId> order;
        for (NodeId id : t.ids()) {
          if (mask[id]) order.push_back(id);
        }
        for (std::size_t k = 0; k < orders; ++k) {
          ++r.cases;
          for (std::size_t i = order.size(); i > 1; --i) {
            std::swap(order[i - 1], order[rng.below(i)]);
          }
          const Tree seq = oracle::sequential_contraction(t, order);
          if (!trees_equal(flat, seq) || preorder(flat) != preorder(seq)) {
            return fail(r, format_tree(t) + " deleting " + mask_text(t, mask));
          }
        }
      }
    }
  });
}

PropertyResult check_traversal_preservation(std::size_t max_n, const TedApplyFn& apply) {
  return run_property("ted_traversal_preservation", [&](PropertyResult& r) {
    Rng rng(0x5eed);
    for (const Tree& shape : all_trees(max_n)) {
      const Tree t = random_labels(shape, rng);
      const auto order = preorder(t);
      for (const auto& mask : all_masks(t)) {
        ++r.cases;
        const Tree trace = apply ? apply(t, mask) : ted_apply_mask(t, mask);
        std::vector<NodeId> kept;
        std::vector<std::uint8_t> labels;
        for (NodeId id : order) {
          if (mask[id]) continue;
          kept.push_back(id);
          labels.push_back(t.label(id));
        }
        if (preorder(trace) != kept ||
            preorder_label_string(trace) != SymbolString(std::move(labels))) {
          return fail(r, format_tree(t) + " deleting " + mask_text(t, mask));
        }
      }
    }
  });
}

PropertyResult check_dyck_pair_removal(std::size_t max_n) {
  return run_property("dyck_pair_removal", [&](PropertyResult& r) {
    for (const Tree& t : all_trees(max_n)) {
      // Index of the descent into each node and of the matching ascent.
      std::vector<std::size_t> down(t.id_bound(), 0);
      std::vector<std::size_t> up(t.id_bound(), 0);
      std::size_t pos = 0;
      std::function<void(NodeId)> walk = [&](NodeId u) {
        for (NodeId c : t.children(u)) {
          down[c] = pos++;
          walk(c);
          up[c] = pos++;
        }
      };
      walk(t.root());
      const SymbolString d = dyck_string(t);
      for (NodeId v : t.ids()) {
        if (v == t.root()) continue;
        ++r.cases;
        const NodeId del[] = {v};
        std::vector<std::uint8_t> expected;
        for (std::size_t i = 0; i < d.size(); ++i) {
          if (i != down[v] && i != up[v]) expected.push_back(d[i]);
        }
        if (dyck_string(ted_apply(t, del)) != SymbolString(std::move(expected))) {
          return fail(r, format_tree(t) + " deleting " + std::to_string(v));
        }
      }
    }
  });
}

PropertyResult check_ted_distribution_normalized(std::size_t max_n, double q) {
  return run_property("ted_distribution_normalized", [&](PropertyResult& r) {
    for (const Tree& t : all_trees(max_n)) {
      ++r.cases;
      const auto dist = ted_trace_distribution(t, q);
      for (const auto& [key, prob] : dist.entries) {
        if (prob < 0.0 || prob > 1.0) return fail(r, "probability out of range");
      }
      if (std::abs(dist.total() - 1.0) > 1e-9) {
        return fail(r, "total " + fmt(dist.total()) + " for " + format_tree(t));
      }
    }
  });
}

PropertyResult check_string_prob_normalized(std::size_t max_len, double q) {
  return run_property("string_prob_normalized", [&](PropertyResult& r) {
    for (std::size_t len = 0; len <= max_len; ++len) {
      for (const auto& s : all_strings(len)) {
        ++r.cases;
        double total = 0.0;
        for (const auto& t : oracle::distinct_subsequences(s)) {
          total += string_trace_prob(s, t, q);
        }
        if (std::abs(total - 1.0) > 1e-9) {
          return fail(r, "total " + fmt(total) + " for '" + s.str() + "'");
        }
      }
    }
  });
}

PropertyResult check_exact_mean_enumeration(std::size_t max_len, double q) {
  return run_property("mean_vector_enumeration", [&](PropertyResult& r) {
    for (std::size_t len = 1; len <= max_len; ++len) {
      for (const auto& s : all_strings(len)) {
        ++r.cases;
        const auto exact = exact_mean_vector(s, q).values;
        const auto enumerated = oracle::enumerated_mean(s, q);
        for (std::size_t j = 0; j < len; ++j) {
          if (std::abs(exact[j] - enumerated[j]) > 1e-12) {
            return fail(r, "position " + std::to_string(j) + " of '" + s.str() + "'");
          }
        }
      }
    }
  });
}

PropertyResult check_binomial_identity(std::size_t max_k, std::uint64_t seed) {
  return run_property("binomial_identity", [&](PropertyResult& r) {
    Rng rng(seed);
    for (std::size_t k = 0; k <= max_k; ++k) {
      for (int rep = 0; rep < 10; ++rep) {
        ++r.cases;
        const double q = rng.uniform();
        const double p = 1.0 - q;
        const double w = 4.0 * rng.uniform() - 2.0;
        double lhs = 0.0;
        double choose = 1.0;
        for (std::size_t j = 0; j <= k; ++j) {
          lhs += choose * std::pow(p, j) * std::pow(q, k - j) * std::pow(w, j);
          choose = choose * static_cast<double>(k - j) / static_cast<double>(j + 1);
        }
        const double rhs = std::pow(p * w + q, static_cast<double>(k));
        if (std::abs(lhs - rhs) > 1e-9 * std::max(1.0, std::abs(rhs))) {
          return fail(r, "k=" + std::to_string(k) + " w=" + fmt(w));
        }
      }
    }
  });
}

PropertyResult check_lp_indistinguishable(std::size_t min_n, std::size_t max_n) {
  return run_property("lp_indistinguishable_pair", [&](PropertyResult& r) {
    for (std::size_t n = min_n; n <= max_n; ++n) {
      const Tree a = path_tree(n);
      const Tree b = forked_tree(n);
      for (std::size_t m = 1; m < n; ++m) {
        ++r.cases;
        const auto sa = lp_trace_set(a, m);
        const auto sb = lp_trace_set(b, m);
        const Tree expected = path_tree(n - m);
        if (sa.size() != 1 || sb.size() != 1 || !trees_equal(sa[0], expected) ||
            !trees_equal(sb[0], expected)) {
          return fail(r, "n=" + std::to_string(n) + " m=" + std::to_string(m));
        }
      }
    }
  });
}

PropertyResult check_lp_trace_set_oracle(std::size_t max_n) {
  return run_property("lp_trace_set_brute_force", [&](PropertyResult& r) {
    Rng rng(0x1f);
    for (const Tree& shape : all_trees(max_n)) {
      const Tree t = random_labels(shape, rng);
      for (std::size_t k = 0; k < t.size(); ++k) {
        ++r.cases;
        std::set<std::string> got;
        for (const Tree& x : lp_trace_set(t, k)) got.insert(format_tree(x));
        if (got != oracle::lp_reachable(t, k)) {
          return fail(r, format_tree(t) + " k=" + std::to_string(k));
        }
      }
    }
  });
}

PropertyResult check_encoded_round_trip(std::size_t max_len) {
  return run_property("encoded_round_trip", [&](PropertyResult& r) {
    for (std::size_t len = 1; len <= max_len; ++len) {
      for (const auto& s : all_strings(len)) {
        for (std::size_t buffer = 1; buffer <= 2; ++buffer) {
          ++r.cases;
          const EncodedInstance inst = encode_string_as_tree(s, buffer);
          const Tree& t = inst.tree;
          bool ok = decode_encoded_tree(inst) == s &&
                    t.size() == 2 * len + 2 * buffer &&
                    inst.backbone.size() == len + 2 * buffer &&
                    inst.backbone.front() == t.root();
          for (std::size_t i = 0; ok && i + 1 < inst.backbone.size(); ++i) {
            ok = t.parent(inst.backbone[i + 1]) == inst.backbone[i];
          }
          for (std::size_t i = 0; ok && i < len; ++i) {
            ok = t.is_leaf(inst.leaves[i]) &&
                 t.parent(inst.leaves[i]) == inst.backbone[buffer + i];
          }
          if (!ok) return fail(r, "'" + s.str() + "' with buffer " + std::to_string(buffer));
        }
      }
    }
  });
}

PropertyResult check_dual_round_trip(std::size_t max_n) {
  return run_property("dual_strings_round_trip", [&](PropertyResult& r) {
    for (const Tree& t : all_trees(max_n)) {
      ++r.cases;
      const DualStrings d = dual_strings(t);
      const std::size_t expected =
          t.size() == 1 ? 1 : (t.size() - 1) + t.leaf_count();
      if (d.zero_two.size() != expected || d.one_two.size() != expected ||
          !trees_equal(merge_dual_strings(d.zero_two, d.one_two), t)) {
        return fail(r, format_tree(t));
      }
    }
  });
}

PropertyResult check_fuzzy_positional_deletion(std::size_t max_n,
                                               const std::vector<std::size_t>& degrees) {
  return run_property("fuzzy_positional_deletion", [&](PropertyResult& r) {
    for (std::size_t m : degrees) {
      for (const Tree& t : all_trees(max_n)) {
        if (!is_fuzzy(t, m)) continue;
        Tokens zero_two;
        Tokens one_two;
        dual_tokens(t, t.root(), zero_two, one_two);
        for (const auto& mask : all_masks(t)) {
          const Tree trace = ted_apply_mask(t, mask);
          // Skip subsets that turn a surviving internal node into a leaf.
          bool orphaning = false;
          for (NodeId id : trace.ids()) {
            orphaning = orphaning || (trace.is_leaf(id) && !t.is_leaf(id));
          }
          if (orphaning) continue;
          ++r.cases;
          const DualStrings d = dual_strings(trace);
          if (d.zero_two != surviving(zero_two, mask, Alphabet::kZeroTwo) ||
              d.one_two != surviving(one_two, mask, Alphabet::kOneTwo)) {
            return fail(r, format_tree(t) + " deleting " + mask_text(t, mask));
          }
        }
      }
    }
  });
}

PropertyResult check_separation(std::size_t max_n, double q) {
  return run_property("separation_positive", [&](PropertyResult& r) {
    double smallest = 1.0;
    for (std::size_t len = 1; len <= max_n; ++len) {
      const auto strings = all_strings(len);
      const std::size_t arc = default_arc_parameter(len);
      for (std::size_t i = 0; i < strings.size(); ++i) {
        for (std::size_t j = i + 1; j < strings.size(); ++j) {
          ++r.cases;
          const auto w = find_separation(strings[i], strings[j], q, arc);
          smallest = std::min(smallest, w.magnitude);
          if (!(w.magnitude > 1e-12)) {
            return fail(r, strings[i].str() + " vs " + strings[j].str());
          }
        }
      }
    }
    r.detail = "min magnitude " + fmt(smallest) + " at q=" + fmt(q);
  });
}

PropertyResult check_arc_maxima(std::size_t max_n) {
  return run_property("arc_maxima_positive", [&](PropertyResult& r) {
    std::string summary;
    for (std::size_t n = 1; n <= max_n; ++n) {
      const std::size_t arc = default_arc_parameter(n);
      double smallest = std::numeric_limits<double>::infinity();
      std::vector<int> a(n, -1);
      // Odometer over {-1, 0, 1}^n.
      while (true) {
        if (std::any_of(a.begin(), a.end(), [](int v) { return v != 0; })) {
          ++r.cases;
          const double v = arc_maximum(a, arc).value;
          smallest = std::min(smallest, v);
          if (!(v > 1e-12)) {
            r.passed = false;
          }
        }
        std::size_t i = 0;
        while (i < n && a[i] == 1) a[i++] = -1;
        if (i == n) break;
        ++a[i];
      }
      summary += (summary.empty() ? "" : " ") + std::to_string(n) + ":" + fmt(smallest);
    }
    r.detail = "min |A| on arc by n " + summary;
  });
}

PropertyResult check_ted_expectation_inequality(std::size_t max_n,
                                                const std::vector<double>& qs) {
  return run_property("ted_expectation_inequality", [&](PropertyResult& r) {
    double tightest = std::numeric_limits<double>::infinity();
    for (double q : qs) {
      const double p = 1.0 - q;
      for (const Tree& t : all_trees(max_n)) {
        const SymbolString a = dyck_string(t);
        const auto dist = ted_trace_distribution(t, q);
        for (int step = 1; step <= 9; ++step) {
          ++r.cases;
          const double w = 0.1 * step;
          double lhs = 0.0;
          for (const auto& [key, prob] : dist.entries) {
            const SymbolString d = dyck_string(parse_tree(key));
            double sum = 0.0;
            for (std::size_t j = d.size(); j-- > 0;) sum = sum * w + d[j];
            lhs += prob * sum;
          }
          double rhs = 0.0;
          for (std::size_t k = a.size(); k-- > 0;) rhs = rhs * (p * w + q) + a[k];
          rhs *= p;
          tightest = std::min(tightest, lhs - rhs);
          if (lhs < rhs - 1e-9) {
            return fail(r, format_tree(t) + " q=" + fmt(q) + " w=" + fmt(w));
          }
        }
      }
    }
    r.detail = "min slack " + fmt(tightest);
  });
}

PropertyResult check_known_topology_q0(std::size_t max_n) {
  return run_property("known_topology_noiseless", [&](PropertyResult& r) {
    Rng rng(0xab);
    const auto reconstructor = ml_reconstructor();
    for (const Tree& topology : all_trees(max_n)) {
      for (int rep = 0; rep < 2; ++rep) {
        ++r.cases;
        const Tree truth = random_labels(topology, rng);
        const std::vector<Tree> traces{truth};
        if (!trees_equal(reconstruct_labels_known_topology(topology, traces, 0.0,
                                                           reconstructor),
                         truth)) {
          return fail(r, format_tree(truth));
        }
      }
    }
  });
}

VerifyLevel parse_verify_level(std::string_view text) {
  if (text == "quick") return VerifyLevel::kQuick;
  if (text == "full") return VerifyLevel::kFull;
  throw Error(ErrorCode::kInvalidArgument,
              "level must be quick or full, got '" + std::string(text) + "'");
}

bool VerifyReport::all_passed() const {
  return std::all_of(results.begin(), results.end(),
                     [](const PropertyResult& r) { return r.passed; });
}

VerifyReport verify_suite(VerifyLevel level) {
  const bool full = level == VerifyLevel::kFull;
  const std::size_t trees = full ? 7 : 6;
  const std::size_t strings = full ? 10 : 6;
  VerifyReport report;
  auto& out = report.results;
  out.push_back(check_dyck_properties(full ? 8 : 6));
  out.push_back(check_parse_round_trip(full ? 500 : 100, full ? 50 : 20, 7));
  out.push_back(check_ted_order_invariance(trees, 20, 11));
  out.push_back(check_traversal_preservation(trees));
  out.push_back(check_dyck_pair_removal(trees));
  out.push_back(check_ted_distribution_normalized(6, 0.3));
  out.push_back(check_string_prob_normalized(strings, 0.3));
  out.push_back(check_exact_mean_enumeration(strings, 0.3));
  out.push_back(check_binomial_identity(30, 13));
  out.push_back(check_lp_indistinguishable(4, full ? 10 : 6));
  out.push_back(check_lp_trace_set_oracle(trees));
  out.push_back(check_encoded_round_trip(full ? 12 : 6));
  out.push_back(check_dual_round_trip(full ? 8 : 6));
  out.push_back(check_fuzzy_positional_deletion(full ? 8 : 6, {2, 3}));
  out.push_back(check_separation(full ? 8 : 6, 0.5));
  out.push_back(check_arc_maxima(full ? 10 : 6));
  out.push_back(check_ted_expectation_inequality(
      full ? 6 : 5, full ? std::vector<double>{0.1, 0.3, 0.5, 0.7, 0.9}
                         : std::vector<double>{0.3, 0.7}));
  out.push_back(check_known_topology_q0(full ? 8 : 6));
  return report;
}

void print_report(std::ostream& out, const VerifyReport& report) {
  for (const auto& r : report.results) {
    char line[160];
    std::snprintf(line, sizeof line, "%s  %-28s cases=%-8zu %8.2fs", r.passed ? "PASS" : "FAIL",
                  r.name.c_str(), r.cases, r.seconds);
    out << line;
    if (!r.detail.empty()) out << "  " << r.detail;
    out << '\n';
  }
  const auto failed = static_cast<std::size_t>(std::count_if(
      report.results.begin(), report.results.end(),
      [](const PropertyResult& r) { return !r.passed; }));
  out << (failed == 0 ? "all " + std::to_string(report.results.size()) + " properties passed"
                      : std::to_string(failed) + " of " +
                            std::to_string(report.results.size()) + " properties failed")
      << '\n';
}

}  // namespace treetrace

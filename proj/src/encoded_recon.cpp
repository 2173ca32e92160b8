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

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <utility>

#include "treetrace/error.hpp"
#include "treetrace/tree_recon.hpp"

namespace treetrace {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Backbone positions are 1-based; prefix sums are indexed so that
// count(lo, hi) covers positions lo .. hi-1.
struct BackboneCounts {
  std::size_t length = 0;  // P
  std::vector<std::uint32_t> zeros;
  std::vector<std::uint32_t> ones;

  BackboneCounts(const SymbolString& s, std::size_t buffer)
      : length(s.size() + 2 * buffer), zeros(length + 2, 0), ones(length + 2, 0) {
    for (std::size_t pos = 1; pos <= length + 1; ++pos) {
      zeros[pos] = zeros[pos - 1];
      ones[pos] = ones[pos - 1];
      if (pos - 1 > buffer && pos - 1 <= buffer + s.size()) {
        (s[pos - 2 - buffer] == 0 ? zeros : ones)[pos] += 1;
      }
    }
  }
  std::uint32_t zero_count(std::size_t lo, std::size_t hi) const {
    return zeros[hi] - zeros[lo];
  }
  std::uint32_t one_count(std::size_t lo, std::size_t hi) const {
    return ones[hi] - ones[lo];
  }
  std::uint32_t leaf_count(std::size_t lo, std::size_t hi) const {
    return zero_count(lo, hi) + one_count(lo, hi);
  }
};

void check_encoded_args(std::size_t length, std::size_t buffer, double q) {
  if (length == 0 || buffer == 0) {
    throw Error(ErrorCode::kInvalidArgument, "length and buffer must be >= 1");
  }
  if (!(q >= 0.0 && q < 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "q must lie in [0, 1)");
  }
}

}  // namespace

SpineObservation observe_spine(const Tree& trace) {
  SpineObservation obs;
  NodeId u = trace.root();
  while (true) {
    const auto& kids = trace.children(u);
    std::size_t internal_at = kids.size();
    for (std::size_t i = 0; i < kids.size(); ++i) {
      if (trace.is_leaf(kids[i])) continue;
      if (internal_at != kids.size()) {
        throw Error(ErrorCode::kProtocol, "trace has two internal siblings");
      }
      internal_at = i;
    }
    if (internal_at == kids.size()) {
      obs.final_children = static_cast<std::uint32_t>(kids.size());
      return obs;
    }
    obs.groups.emplace_back(static_cast<std::uint32_t>(internal_at),
                            static_cast<std::uint32_t>(kids.size() - internal_at - 1));
    u = kids[internal_at];
  }
}

namespace {

// Likelihood machinery for one candidate string: prefix counts, powers of q
// and a binomial table, shared across observations.
class SpineModel {
 public:
  SpineModel(const SymbolString& candidate, std::size_t buffer, double q)
      : counts_(candidate, buffer), q_(q), p_(1.0 - q) {
    const std::size_t len = counts_.length;
    qpow_.assign(len + 2, 1.0);
    for (std::size_t i = 1; i < qpow_.size(); ++i) qpow_[i] = qpow_[i - 1] * q;
    const std::size_t top = counts_.leaf_count(1, len + 1);
    pmf_.assign(top + 1, std::vector<double>(top + 1, 0.0));
    pmf_[0][0] = 1.0;
    for (std::size_t n = 1; n <= top; ++n) {
      for (std::size_t k = 0; k <= n; ++k) {
        pmf_[n][k] = (k > 0 ? p_ * pmf_[n - 1][k - 1] : 0.0) +
                     (k < n ? q_ * pmf_[n - 1][k] : 0.0);
      }
    }
  }

  double log_likelihood(const SpineObservation& obs) const {
    if (!obs.groups.empty() && obs.final_children == 0) return kNegInf;
    const std::size_t len = counts_.length;
    // f[k]: probability of the groups read so far with the current spine node
    // at backbone position k, scaled by exp(-log_scale).
    std::vector<double> f(len + 1, 0.0);
    std::vector<double> next(len + 1, 0.0);
    f[1] = 1.0;
    double log_scale = 0.0;
    std::size_t lowest = 1;  // f vanishes below this position
    for (const auto& [before, after] : obs.groups) {
      std::fill(next.begin(), next.end(), 0.0);
      for (std::size_t k = lowest; k < len; ++k) {
        if (f[k] == 0.0) continue;
        const double fk = f[k] * p_;
        for (std::size_t k2 = k + 1; k2 <= len; ++k2) {
          const double w = pmf(before, counts_.zero_count(k, k2)) *
                           pmf(after, counts_.one_count(k, k2));
          next[k2] += fk * qpow_[k2 - k - 1] * w;
        }
      }
      double total = 0.0;
      for (double v : next) total += v;
      if (total <= 0.0) return kNegInf;
      for (auto& v : next) v /= total;
      log_scale += std::log(total);
      std::swap(f, next);
      ++lowest;
    }

    const std::uint32_t c = obs.final_children;
    double total = 0.0;
    for (std::size_t k = lowest; k <= len; ++k) {
      if (f[k] == 0.0) continue;
      // Everything on the backbone below k is gone; the children are the
      // surviving leaves of positions k .. P.
      double emit = qpow_[len - k] * pmf(c, counts_.leaf_count(k, len + 1));
      // Or the last surviving backbone node k2 shows up as one more leaf.
      if (c >= 1) {
        for (std::size_t k2 = k + 1; k2 <= len; ++k2) {
          emit += qpow_[k2 - k - 1] * p_ * qpow_[len - k2] *
                  qpow_[counts_.leaf_count(k2, len + 1)] *
                  pmf(c - 1, counts_.leaf_count(k, k2));
        }
      }
      total += f[k] * emit;
    }
    if (total <= 0.0) return kNegInf;
    return log_scale + std::log(total);
  }

 private:
  // C(n, k) p^k q^(n-k).
  double pmf(std::uint32_t k, std::uint32_t n) const {
    return k > n ? 0.0 : pmf_[n][k];
  }

  BackboneCounts counts_;
  double q_;
  double p_;
  std::vector<double> qpow_;
  std::vector<std::vector<double>> pmf_;
};

}  // namespace

double spine_log_likelihood(const SpineObservation& obs,
                            const SymbolString& candidate, std::size_t buffer,
                            double q) {
  check_encoded_args(candidate.size(), buffer, q);
  return SpineModel(candidate, buffer, q).log_likelihood(obs);
}

SymbolString reconstruct_encoded(std::span<const Tree> traces, std::size_t length,
                                 std::size_t buffer, double q) {
  check_encoded_args(length, buffer, q);
  if (traces.empty()) throw Error(ErrorCode::kEmptyInput, "no traces");
  if (length > kEncodedLengthCap) {
    throw Error(ErrorCode::kSizeLimit, "encoded decoding is capped at length " +
                                           std::to_string(kEncodedLengthCap));
  }
  std::map<SpineObservation, double> tally;
  for (const auto& t : traces) tally[observe_spine(t)] += 1.0;
  // Heaviest observations first so that pruning bites early.
  std::vector<std::pair<double, const SpineObservation*>> observed;
  for (const auto& [obs, mult] : tally) observed.emplace_back(mult, &obs);
  std::stable_sort(observed.begin(), observed.end(),
                   [](const auto& x, const auto& y) { return x.first > y.first; });

  auto score_of = [&](const SymbolString& cand, double floor, std::size_t limit) {
    const SpineModel model(cand, buffer, q);
    double score = 0.0;
    for (std::size_t i = 0; i < std::min(limit, observed.size()); ++i) {
      score += observed[i].first * model.log_likelihood(*observed[i].second);
      // Terms are non-positive, so a candidate below the floor cannot win.
      if (score < floor || score == kNegInf) break;
    }
    return score;
  };

  // A cheap pass over the heaviest observations orders the full pass so that
  // a strong incumbent is found early. The result does not depend on it.
  const CandidateSet all = CandidateSet::all(length);
  constexpr std::size_t kScreen = 32;
  std::vector<std::pair<double, std::size_t>> order;
  for (std::size_t c = 0; c < all.count(); ++c) {
    order.emplace_back(score_of(all.at(c), kNegInf, kScreen), c);
  }
  std::stable_sort(order.begin(), order.end(),
                   [](const auto& x, const auto& y) { return x.first > y.first; });

  double best = kNegInf;
  std::size_t winner_index = 0;
  bool found = false;
  for (const auto& [screen, c] : order) {
    if (screen == kNegInf) break;
    const double score = score_of(all.at(c), best, observed.size());
    if (score == kNegInf) continue;
    if (!found || score > best || (score == best && c < winner_index)) {
      best = score;
      winner_index = c;
      found = true;
    }
  }
  if (!found) {
    throw Error(ErrorCode::kInconsistentTraces,
                "no encoded string explains every trace");
  }
  const SymbolString winner = all.at(winner_index);

  std::vector<std::string> undecided;
  const double tolerance = 1e-9 * std::max(1.0, std::abs(best));
  for (std::size_t i = 0; i < length; ++i) {
    auto bits = std::vector<std::uint8_t>(winner.begin(), winner.end());
    bits[i] ^= 1U;
    const double flipped =
        score_of(SymbolString(std::move(bits)), kNegInf, observed.size());
    if (flipped != kNegInf && std::abs(flipped - best) <= tolerance) {
      undecided.push_back(std::to_string(i));
    }
  }
  if (!undecided.empty()) {
    throw Error(ErrorCode::kUndecidedPosition,
                std::to_string(undecided.size()) + " position(s) undecided",
                undecided);
  }
  return winner;
}

SymbolString reconstruct_encoded_tracked(std::span<const Tree> traces,
                                         std::size_t length, std::size_t buffer) {
  if (length == 0 || buffer == 0) {
    throw Error(ErrorCode::kInvalidArgument, "length and buffer must be >= 1");
  }
  if (traces.empty()) throw Error(ErrorCode::kEmptyInput, "no traces");

  struct Stats {
    bool internal = false;
    double depth_sum = 0.0;
    double seen = 0.0;
    std::map<NodeId, std::size_t> parents;
  };
  std::map<NodeId, Stats> stats;
  for (const auto& t : traces) {
    std::vector<std::pair<NodeId, std::size_t>> stack{{t.root(), 0}};
    while (!stack.empty()) {
      const auto [u, depth] = stack.back();
      stack.pop_back();
      Stats& s = stats[u];
      s.seen += 1.0;
      s.depth_sum += static_cast<double>(depth);
      s.internal = s.internal || !t.is_leaf(u);
      if (u != t.root()) ++s.parents[t.parent(u)];
      for (NodeId c : t.children(u)) stack.emplace_back(c, depth + 1);
    }
  }

  std::vector<std::pair<double, NodeId>> spine;
  for (const auto& [id, s] : stats) {
    if (s.internal) spine.emplace_back(s.depth_sum / s.seen, id);
  }
  std::sort(spine.begin(), spine.end());
  std::map<NodeId, std::size_t> rank;
  for (std::size_t r = 0; r < spine.size(); ++r) rank[spine[r].second] = r;

  // Leaf -> home backbone node (most frequent parent, smallest id on ties).
  std::map<NodeId, NodeId> home;
  for (const auto& [id, s] : stats) {
    if (s.internal || s.parents.empty()) continue;
    NodeId best = kNoNode;
    std::size_t best_count = 0;
    for (const auto& [parent, count] : s.parents) {
      if (count > best_count) {
        best = parent;
        best_count = count;
      }
    }
    if (rank.count(best)) home[id] = best;
  }

  // Votes: +1 for "before the backbone child" (bit 0), -1 for after.
  std::map<NodeId, long> votes;
  std::map<NodeId, std::size_t> observations;
  for (const auto& t : traces) {
    for (const auto& [leaf, parent] : home) {
      if (!t.contains(leaf) || !t.contains(parent) || t.parent(leaf) != parent) {
        continue;
      }
      const auto& kids = t.children(parent);
      const auto spine_child = std::find_if(
          kids.begin(), kids.end(), [&](NodeId c) { return !t.is_leaf(c); });
      if (spine_child == kids.end()) continue;
      const auto at = std::find(kids.begin(), kids.end(), leaf);
      votes[leaf] += at < spine_child ? 1 : -1;
      ++observations[leaf];
    }
  }

  // Backbone position of a home node is its rank + 1; bit i sits at position
  // buffer + 1 + i.
  std::vector<int> bits(length, -1);
  std::vector<std::size_t> claimants(length, 0);
  for (const auto& [leaf, parent] : home) {
    if (observations[leaf] == 0) continue;
    const std::size_t r = rank[parent];
    if (r < buffer || r - buffer >= length) continue;
    const std::size_t i = r - buffer;
    ++claimants[i];
    bits[i] = votes[leaf] > 0 ? 0 : (votes[leaf] < 0 ? 1 : -1);
  }
  std::vector<std::string> undecided;
  std::vector<std::uint8_t> out(length, 0);
  for (std::size_t i = 0; i < length; ++i) {
    if (claimants[i] != 1 || bits[i] < 0) {
      undecided.push_back(std::to_string(i));
    } else {
      out[i] = static_cast<std::uint8_t>(bits[i]);
    }
  }
  if (!undecided.empty()) {
    throw Error(ErrorCode::kUndecidedPosition,
                std::to_string(undecided.size()) + " position(s) undecided",
                undecided);
  }
  return SymbolString(std::move(out));
}

double complete_removal_rate(const EncodedInstance& instance,
                             std::span<const Tree> traces) {
  if (traces.empty()) throw Error(ErrorCode::kEmptyInput, "no traces");
  std::size_t removed = 0;
  for (const auto& t : traces) {
    for (std::size_t i = 0; i < instance.leaves.size(); ++i) {
      const NodeId leaf = instance.leaves[i];
      const NodeId parent = instance.tree.parent(leaf);
      if (!t.contains(leaf) && !t.contains(parent)) ++removed;
    }
  }
  return static_cast<double>(removed) /
         (static_cast<double>(traces.size()) *
          static_cast<double>(instance.leaves.size()));
}

ReconstructionReport encoded_report(const EncodedInstance& instance,
                                    std::span<const Tree> traces, double q) {
  const SymbolString decoded =
      reconstruct_encoded(traces, instance.source.size(), instance.buffer, q);
  ReconstructionReport report;
  report.result = encode_string_as_tree(decoded, instance.buffer).tree;
  report.traces_used = traces.size();
  report.success = decoded == instance.source;
  report.diagnostics["complete_removal_rate"] = complete_removal_rate(instance, traces);
  std::size_t clean = 0;
  for (const auto& t : traces) clean += t.size() == instance.tree.size() ? 1 : 0;
  report.diagnostics["clean_trace_fraction"] =
      static_cast<double>(clean) / static_cast<double>(traces.size());
  return report;
}

}  // namespace treetrace

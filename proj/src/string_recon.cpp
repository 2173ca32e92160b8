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

#include "treetrace/string_recon.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <set>
#include <utility>

#include "treetrace/channels.hpp"
#include "treetrace/error.hpp"

namespace treetrace {

namespace {

// rows[k][j] = C(k, j) p^j q^(k-j) for k < n, built by Pascal's recurrence.
std::vector<std::vector<double>> binomial_rows(std::size_t n, double q) {
  const double p = 1.0 - q;
  std::vector<std::vector<double>> rows(n);
  for (std::size_t k = 0; k < n; ++k) {
    rows[k].assign(k + 1, 0.0);
    if (k == 0) {
      rows[0][0] = 1.0;
      continue;
    }
    for (std::size_t j = 0; j <= k; ++j) {
      const double keep = j > 0 ? p * rows[k - 1][j - 1] : 0.0;
      const double drop = j < k ? q * rows[k - 1][j] : 0.0;
      rows[k][j] = keep + drop;
    }
  }
  return rows;
}

// mean = M s with M[j][k] = p C(k, j) p^j q^(k-j) for k >= j.
std::vector<std::vector<double>> mean_operator(std::size_t n, double q) {
  const auto rows = binomial_rows(n, q);
  const double p = 1.0 - q;
  std::vector<std::vector<double>> m(n, std::vector<double>(n, 0.0));
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = j; k < n; ++k) m[j][k] = p * rows[k][j];
  }
  return m;
}

std::vector<double> apply_operator(const std::vector<std::vector<double>>& m,
                                   const SymbolString& s) {
  std::vector<double> out(s.size(), 0.0);
  for (std::size_t j = 0; j < s.size(); ++j) {
    double acc = 0.0;
    for (std::size_t k = j; k < s.size(); ++k) {
      if (s[k] != 0) acc += m[j][k];
    }
    out[j] = acc;
  }
  return out;
}

void check_binary(const SymbolString& s, const char* what) {
  if (s.alphabet() != Alphabet::kBinary) {
    throw Error(ErrorCode::kInvalidArgument, std::string(what) + " must be binary");
  }
}

void check_q(double q) {
  if (!(q >= 0.0 && q < 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "q must lie in [0, 1)");
  }
}

// Multiset of traces as (trace, multiplicity), in sorted order.
std::vector<std::pair<SymbolString, double>> tally(
    std::span<const SymbolString> traces) {
  std::map<SymbolString, double> counts;
  for (const auto& t : traces) counts[t] += 1.0;
  return {counts.begin(), counts.end()};
}

}  // namespace

MeanVector exact_mean_vector(const SymbolString& s, double q) {
  check_q(q);
  check_binary(s, "mean-vector input");
  return MeanVector{apply_operator(mean_operator(s.size(), q), s), s.size(), q};
}

MeanVector empirical_mean_vector(std::span<const SymbolString> traces,
                                 std::size_t n) {
  if (traces.empty()) throw Error(ErrorCode::kEmptyInput, "no traces");
  std::vector<double> sums(n, 0.0);
  for (const auto& t : traces) {
    if (t.size() > n) {
      throw Error(ErrorCode::kInvalidArgument,
                  "trace of length " + std::to_string(t.size()) +
                      " exceeds n = " + std::to_string(n));
    }
    for (std::size_t j = 0; j < t.size(); ++j) sums[j] += t[j];
  }
  for (auto& v : sums) v /= static_cast<double>(traces.size());
  return MeanVector{std::move(sums), n, 0.0};
}

std::size_t default_arc_parameter(std::size_t n) {
  const double root = std::cbrt(static_cast<double>(n));
  const auto rounded = static_cast<std::size_t>(std::ceil(root - 1e-9));
  return std::max<std::size_t>(1, rounded);
}

ArcMaximum arc_maximum(std::span<const int> coefficients, std::size_t arc_param) {
  if (arc_param == 0) throw Error(ErrorCode::kInvalidArgument, "L must be >= 1");
  const double half_width = std::numbers::pi / static_cast<double>(arc_param);
  ArcMaximum best{-1.0, {1.0, 0.0}};
  for (std::size_t i = 0; i < kArcGridPoints; ++i) {
    const double theta =
        -half_width + 2.0 * half_width * static_cast<double>(i) /
                          static_cast<double>(kArcGridPoints - 1);
    const std::complex<double> z = std::polar(1.0, theta);
    std::complex<double> acc = 0.0;
    for (std::size_t k = coefficients.size(); k-- > 0;) {
      acc = acc * z + static_cast<double>(coefficients[k]);
    }
    const double value = std::abs(acc);
    if (value > best.value) best = {value, z};
  }
  return best;
}

SeparationWitness find_separation(const SymbolString& x, const SymbolString& y,
                                  double q, std::size_t arc_param) {
  check_q(q);
  check_binary(x, "x");
  check_binary(y, "y");
  if (x.size() != y.size()) {
    throw Error(ErrorCode::kInvalidArgument, "x and y differ in length");
  }
  if (x == y) throw Error(ErrorCode::kDegeneratePair, "x equals y");
  if (arc_param == 0) throw Error(ErrorCode::kInvalidArgument, "L must be >= 1");
  const std::size_t n = x.size();

  std::vector<int> a(n);
  for (std::size_t k = 0; k < n; ++k) a[k] = int{x[k]} - int{y[k]};
  const ArcMaximum arc = arc_maximum(a, arc_param);

  const auto op = mean_operator(n, q);
  const auto ex = apply_operator(op, x);
  const auto ey = apply_operator(op, y);
  double best = 0.0;
  for (std::size_t j = 0; j < n; ++j) best = std::max(best, std::abs(ex[j] - ey[j]));
  std::size_t j = 0;
  while (std::abs(ex[j] - ey[j]) < best * (1.0 - 1e-12)) ++j;

  SeparationWitness w;
  w.j = j;
  w.magnitude = std::abs(ex[j] - ey[j]);
  w.arc_param = arc_param;
  w.z = arc.z;
  w.w = (arc.z - q) / (1.0 - q);
  w.poly_value = arc.value;
  return w;
}

SymbolString distinguish_pair(const SymbolString& x, const SymbolString& y,
                              std::span<const SymbolString> traces, double q) {
  const auto witness = find_separation(x, y, q, default_arc_parameter(x.size()));
  const auto empirical = empirical_mean_vector(traces, x.size());
  const std::size_t j = witness.j;
  const double ex = exact_mean_vector(x, q).values[j];
  const double ey = exact_mean_vector(y, q).values[j];
  const double dx = std::abs(empirical.values[j] - ex);
  const double dy = std::abs(empirical.values[j] - ey);
  if (dx < dy) return x;
  if (dy < dx) return y;
  return std::min(x, y);
}

CandidateSet CandidateSet::all(std::size_t n) {
  if (n > kExhaustiveCandidateCap) {
    throw Error(ErrorCode::kSizeLimit,
                "exhaustive candidates are capped at n = " +
                    std::to_string(kExhaustiveCandidateCap));
  }
  CandidateSet set;
  set.length_ = n;
  set.exhaustive_ = true;
  return set;
}

CandidateSet CandidateSet::list(std::vector<SymbolString> members) {
  if (members.empty()) throw Error(ErrorCode::kNoCandidates, "empty candidate list");
  CandidateSet set;
  set.length_ = members.front().size();
  for (const auto& m : members) {
    if (m.size() != set.length_) {
      throw Error(ErrorCode::kInvalidArgument, "candidates differ in length");
    }
  }
  set.exhaustive_ = false;
  set.members_ = std::move(members);
  return set;
}

std::size_t CandidateSet::count() const noexcept {
  return exhaustive_ ? (std::size_t{1} << length_) : members_.size();
}

SymbolString CandidateSet::at(std::size_t index) const {
  if (!exhaustive_) return members_.at(index);
  std::vector<std::uint8_t> bits(length_);
  for (std::size_t i = 0; i < length_; ++i) {
    bits[i] = static_cast<std::uint8_t>((index >> (length_ - 1 - i)) & 1U);
  }
  return SymbolString(std::move(bits));
}

SymbolString ml_reconstruct(std::span<const SymbolString> traces,
                            std::size_t n, double q,
                            const CandidateSet& candidates) {
  check_q(q);
  if (traces.empty()) throw Error(ErrorCode::kEmptyInput, "no traces");
  if (candidates.length() != n) {
    throw Error(ErrorCode::kInvalidArgument, "candidate length differs from n");
  }
  const auto counts = tally(traces);
  constexpr double kNegInf = -std::numeric_limits<double>::infinity();
  double best_score = kNegInf;
  SymbolString winner;
  bool found = false;
  for (std::size_t c = 0; c < candidates.count(); ++c) {
    SymbolString cand = candidates.at(c);
    double score = 0.0;
    for (const auto& [trace, mult] : counts) {
      score += mult * string_trace_log_prob(cand, trace, q);
      // Terms are non-positive: once below the incumbent the candidate
      // cannot win.
      if (score < best_score || score == kNegInf) break;
    }
    if (score == kNegInf) continue;
    if (!found || score > best_score ||
        (score == best_score && cand < winner)) {
      best_score = score;
      winner = std::move(cand);
      found = true;
    }
  }
  if (!found) {
    throw Error(ErrorCode::kInconsistentTraces,
                "some trace is not a subsequence of any candidate");
  }
  return winner;
}

SymbolString mean_reconstruct(std::span<const SymbolString> traces,
                              std::size_t n, double q,
                              const CandidateSet& candidates) {
  check_q(q);
  if (candidates.length() != n) {
    throw Error(ErrorCode::kInvalidArgument, "candidate length differs from n");
  }
  const auto empirical = empirical_mean_vector(traces, n);
  const auto op = mean_operator(n, q);
  double best_gap = std::numeric_limits<double>::infinity();
  SymbolString winner;
  bool found = false;
  for (std::size_t c = 0; c < candidates.count(); ++c) {
    SymbolString cand = candidates.at(c);
    const auto exact = apply_operator(op, cand);
    double gap = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      gap = std::max(gap, std::abs(empirical.values[j] - exact[j]));
    }
    if (!found || gap < best_gap || (gap == best_gap && cand < winner)) {
      best_gap = gap;
      winner = std::move(cand);
      found = true;
    }
  }
  return winner;
}

CandidateSet default_candidates(std::span<const SymbolString> traces,
                                std::size_t n) {
  if (n <= kExhaustiveCandidateCap) return CandidateSet::all(n);
  std::set<SymbolString> full;
  for (const auto& t : traces) {
    if (t.size() == n) full.insert(t);
  }
  if (full.empty()) {
    throw Error(ErrorCode::kNoCandidates,
                "no trace of full length " + std::to_string(n));
  }
  return CandidateSet::list({full.begin(), full.end()});
}

StringReconstructor ml_reconstructor() {
  return [](std::span<const SymbolString> traces, std::size_t n, double q) {
    return ml_reconstruct(traces, n, q, default_candidates(traces, n));
  };
}

StringReconstructor mean_reconstructor() {
  return [](std::span<const SymbolString> traces, std::size_t n, double q) {
    return mean_reconstruct(traces, n, q, default_candidates(traces, n));
  };
}

StringReconstructor make_reconstructor(std::string_view name) {
  if (name == "ml") return ml_reconstructor();
  if (name == "mean") return mean_reconstructor();
  throw Error(ErrorCode::kInvalidArgument,
              "unknown reconstructor '" + std::string(name) + "'");
}

}  // namespace treetrace

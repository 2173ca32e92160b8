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

#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <string_view>
#include <vector>

#include "treetrace/symbol_string.hpp"

namespace treetrace {

// Per-position expectation of a trace padded with zeros to length n.
struct MeanVector {
  std::vector<double> values;
  std::size_t n = 0;
  double q = 0.0;
};

// Exact E[padded trace_j] = p * sum_{k >= j} s_k C(k, j) p^j q^(k-j) under
// the string deletion channel.
MeanVector exact_mean_vector(const SymbolString& s, double q);

// Coordinate-wise average of the zero-padded traces. Throws kEmptyInput on an
// empty list and kInvalidArgument when a trace is longer than n.
MeanVector empirical_mean_vector(std::span<const SymbolString> traces,
                                 std::size_t n);

inline constexpr std::size_t kArcGridPoints = 1024;

// ceil(n^(1/3)), at least 1.
std::size_t default_arc_parameter(std::size_t n);

// Largest |A(z)| for A(z) = sum_k a_k z^k over kArcGridPoints evenly spaced
// points of the arc {e^{i theta} : |theta| <= pi / L}, endpoints included.
struct ArcMaximum {
  double value = 0.0;
  std::complex<double> z;
};
ArcMaximum arc_maximum(std::span<const int> coefficients, std::size_t arc_param);

struct SeparationWitness {
  std::size_t j = 0;          // smallest position maximizing |E[X_j - Y_j]|
  double magnitude = 0.0;     // |E[X_j - Y_j]|
  std::size_t arc_param = 1;  // L
  std::complex<double> z;     // maximizer of |A| on the arc, A = x - y
  std::complex<double> w;     // (z - q) / p
  double poly_value = 0.0;    // |A(z)|
};

// Throws kDegeneratePair when x == y, kInvalidArgument on length mismatch or
// arc_param == 0.
SeparationWitness find_separation(const SymbolString& x, const SymbolString& y,
                                  double q, std::size_t arc_param);

// Chooses whichever of x, y has its exact mean at the witness position closer
// to the empirical mean there; ties go to the lexicographically smaller one.
SymbolString distinguish_pair(const SymbolString& x, const SymbolString& y,
                              std::span<const SymbolString> traces, double q);

// Either every binary string of a length, in lexicographic order, or an
// explicit list (kept in the given order).
class CandidateSet {
 public:
  static CandidateSet all(std::size_t n);
  static CandidateSet list(std::vector<SymbolString> members);

  std::size_t length() const noexcept { return length_; }
  std::size_t count() const noexcept;
  SymbolString at(std::size_t index) const;

 private:
  std::size_t length_ = 0;
  bool exhaustive_ = true;
  std::vector<SymbolString> members_;
};

inline constexpr std::size_t kExhaustiveCandidateCap = 20;

// Maximum-likelihood candidate under the string channel; ties go to the
// lexicographically smallest. Throws kInconsistentTraces when every candidate
// has zero likelihood, kEmptyInput without traces.
SymbolString ml_reconstruct(std::span<const SymbolString> traces,
                            std::size_t n, double q,
                            const CandidateSet& candidates);

// Candidate minimizing max_j |empirical_j - exact_j|; ties go to the
// lexicographically smallest.
SymbolString mean_reconstruct(std::span<const SymbolString> traces,
                              std::size_t n, double q,
                              const CandidateSet& candidates);

// Pluggable string reconstructor: (traces, n, q) -> string of length n.
using StringReconstructor = std::function<SymbolString(
    std::span<const SymbolString>, std::size_t, double)>;

// For n <= kExhaustiveCandidateCap the candidates are all of {0,1}^n; above
// that they are the distinct observed traces of full length n (throws
// kNoCandidates when no trace has length n).
CandidateSet default_candidates(std::span<const SymbolString> traces,
                                std::size_t n);

StringReconstructor ml_reconstructor();
StringReconstructor mean_reconstructor();

// "ml" or "mean".
StringReconstructor make_reconstructor(std::string_view name);

}  // namespace treetrace

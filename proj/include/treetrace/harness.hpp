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
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "treetrace/channels.hpp"

namespace treetrace {

// One experiment: an instance family, a channel, a grid of trace counts and a
// number of independent trials per grid point.
//
// Families:
//   random   random topology and labels, labels recovered with the topology
//            known; with model=string a random n-bit string instead
//   path     the same on a path of n nodes
//   forked   decide between A_n and B_n (fair coin for the truth)
//   encoded  random |S| = n string encoded as a tree; TED traces only
//   fuzzy    random fuzzy tree with n nodes; TED traces only
struct ExperimentSpec {
  std::string experiment = "experiment";
  std::string family = "random";
  std::size_t n = 10;
  ChannelSpec channel{ChannelModel::kTed, 0.1};
  std::vector<std::size_t> trace_grid{1};
  std::size_t trials = 10;
  double delta = 0.05;
  std::uint64_t master_seed = 1;
  std::string output;  // CSV path; empty for none

  std::string reconstructor = "ml";  // ml | mean; encoded: ml | tracked
  std::size_t degree = 0;            // fuzzy degree m; 0 derives it
  std::size_t buffer = 0;            // encoded buffer; 0 derives it
  std::size_t planned_traces = 0;    // N behind derived m and buffer; 0: largest count
  std::size_t threads = 0;           // 0: hardware concurrency
  bool timing = true;                // false writes wall_time_ms as 0

  // Throws kInvalidArgument or kUnknownFamily.
  void validate() const;
};

// Reads flat key=value text, one key per line; '#' starts a comment. Keys:
// experiment family n model q traces (comma list) trials delta seed out
// reconstructor m ell planned threads timing. Throws kSyntax on a bad line or
// unknown key (details: line number).
ExperimentSpec parse_experiment_spec(std::string_view text);

struct ResultRow {
  std::string experiment;
  std::string family;
  std::size_t n = 0;
  double q = 0.0;
  std::string model;
  std::size_t traces = 0;
  std::size_t trials = 0;
  std::size_t successes = 0;
  double rate = 0.0;
  double wall_time_ms = 0.0;
  std::uint64_t seed = 0;
};

inline constexpr std::string_view kCsvHeader =
    "experiment,family,n,q,model,traces,trials,successes,rate,wall_time_ms,seed";

void write_csv(std::ostream& out, const std::vector<ResultRow>& rows);
std::string format_csv(const std::vector<ResultRow>& rows);

// Outcome of trial `trial` at grid point `grid` with the given trace count.
// Uses only the stream seeded by trial_seed(master, grid, trial).
bool run_trial(const ExperimentSpec& spec, std::size_t grid, std::size_t trial,
               std::size_t traces);

// Runs every grid point; trials run on a thread pool and are assembled in
// (grid, trial) order. Writes the CSV when spec.output is set (kIo on
// failure).
std::vector<ResultRow> run_experiment(const ExperimentSpec& spec);

inline constexpr std::size_t kSearchCap = std::size_t{1} << 20;

struct SearchResult {
  bool reached = false;
  std::size_t traces = 0;        // first count at the target when reached
  std::vector<ResultRow> curve;  // one row per doubling step
};

// The doubling loop without the error: stops at the target or after the
// largest count not above `cap`.
SearchResult doubling_curve(const ExperimentSpec& spec, double target,
                            std::size_t cap = kSearchCap);

// Trace counts 1, 2, 4, ... (grid index = step) until the success rate
// reaches `target`; throws kBudgetExceeded once the count would pass `cap`.
// The error details carry the last count tried and its rate. The trace grid
// of `spec` is ignored; unless planned_traces is set, a derived buffer or
// fuzzy degree uses the count being tried.
SearchResult doubling_search(const ExperimentSpec& spec, double target,
                             std::size_t cap = kSearchCap);

}  // namespace treetrace

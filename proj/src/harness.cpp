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

#include "treetrace/harness.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cstdio>
#include <exception>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include "treetrace/error.hpp"
#include "treetrace/instances.hpp"
#include "treetrace/rng.hpp"
#include "treetrace/string_recon.hpp"
#include "treetrace/tree_recon.hpp"

namespace treetrace {

namespace {

const std::vector<std::string_view> kFamilies = {"random", "path", "forked",
                                                 "encoded", "fuzzy"};

std::string shortest(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

bool is_path(const Tree& t) {
  NodeId u = t.root();
  while (!t.is_leaf(u)) {
    if (t.children(u).size() != 1) return false;
    u = t.children(u).front();
  }
  return true;
}

// Failures that mean "the pipeline could not reconstruct", as opposed to
// misuse of the library.
bool is_reconstruction_failure(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInconsistentTraces:
    case ErrorCode::kNoCandidates:
    case ErrorCode::kReconstructionFailed:
    case ErrorCode::kUndecidedPosition:
    case ErrorCode::kMalformedPair:
      return true;
    default:
      return false;
  }
}

std::size_t planned(const ExperimentSpec& spec, std::size_t traces) {
  if (spec.planned_traces != 0) return spec.planned_traces;
  if (!spec.trace_grid.empty()) return spec.trace_grid.back();
  return traces;
}

std::vector<Tree> sample_traces(const Tree& t, const ChannelSpec& channel,
                                std::size_t count, Rng& rng) {
  std::vector<Tree> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(sample_tree_trace(t, channel, rng));
  return out;
}

bool trial_labels(const ExperimentSpec& spec, const Tree& topology,
                  std::size_t traces, Rng& rng) {
  const auto reconstructor = make_reconstructor(spec.reconstructor);
  const Tree truth = random_labels(topology, rng);
  const auto sampled = sample_traces(truth, spec.channel, traces, rng);
  const Tree got = reconstruct_labels_known_topology(topology, sampled,
                                                     spec.channel.q, reconstructor);
  return trees_equal(got, truth);
}

bool trial_string(const ExperimentSpec& spec, std::size_t traces, Rng& rng) {
  const auto reconstructor = make_reconstructor(spec.reconstructor);
  const SymbolString truth = random_bits(spec.n, rng);
  std::vector<SymbolString> sampled;
  sampled.reserve(traces);
  for (std::size_t i = 0; i < traces; ++i) {
    sampled.push_back(string_trace(truth, spec.channel.q, rng));
  }
  return reconstructor(sampled, spec.n, spec.channel.q) == truth;
}

// Decides B_n as soon as a trace that is not a path appears (only B_n can
// produce one), A_n otherwise.
bool trial_forked(const ExperimentSpec& spec, std::size_t traces, Rng& rng) {
  const bool truth_is_forked = rng.bernoulli(0.5);
  const Tree truth = truth_is_forked ? forked_tree(spec.n) : path_tree(spec.n);
  bool saw_fork = false;
  for (std::size_t i = 0; i < traces && !saw_fork; ++i) {
    saw_fork = !is_path(sample_tree_trace(truth, spec.channel, rng));
  }
  return saw_fork == truth_is_forked;
}

bool trial_encoded(const ExperimentSpec& spec, std::size_t traces, Rng& rng) {
  const std::size_t buffer =
      spec.buffer != 0 ? spec.buffer
                       : encoding_buffer(spec.delta, planned(spec, traces), spec.channel.q);
  const EncodedInstance inst = encode_string_as_tree(random_bits(spec.n, rng), buffer);
  const auto sampled = sample_traces(inst.tree, spec.channel, traces, rng);
  const SymbolString got =
      spec.reconstructor == "tracked"
          ? reconstruct_encoded_tracked(sampled, spec.n, buffer)
          : reconstruct_encoded(sampled, spec.n, buffer, spec.channel.q);
  return got == inst.source;
}

bool trial_fuzzy(const ExperimentSpec& spec, std::size_t traces, Rng& rng) {
  const std::size_t m =
      spec.degree != 0
          ? spec.degree
          : fuzzy_degree(spec.n, planned(spec, traces), spec.delta, spec.channel.q);
  const Tree truth = random_fuzzy_tree(spec.n, m, rng);
  const auto sampled = sample_traces(truth, spec.channel, traces, rng);
  const Tree got = reconstruct_fuzzy(sampled, spec.n, m, spec.channel.q,
                                     make_reconstructor(spec.reconstructor));
  return trees_equal(got, truth);
}

std::size_t worker_count(const ExperimentSpec& spec, std::size_t jobs) {
  std::size_t threads = spec.threads;
  if (threads == 0) threads = std::max(1U, std::thread::hardware_concurrency());
  return std::max<std::size_t>(1, std::min(threads, jobs));
}

// Successes of every trial at one grid point.
std::size_t run_grid_point(const ExperimentSpec& spec, std::size_t grid,
                           std::size_t traces) {
  std::vector<char> outcome(spec.trials, 0);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_lock;
  auto work = [&] {
    while (true) {
      const std::size_t trial = next.fetch_add(1);
      if (trial >= spec.trials) return;
      try {
        outcome[trial] = run_trial(spec, grid, trial, traces) ? 1 : 0;
      } catch (...) {
        std::lock_guard<std::mutex> hold(failure_lock);
        if (!failure) failure = std::current_exception();
        next.store(spec.trials);
      }
    }
  };
  const std::size_t workers = worker_count(spec, spec.trials);
  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t i = 0; i < workers; ++i) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);
  return static_cast<std::size_t>(std::count(outcome.begin(), outcome.end(), 1));
}

ResultRow make_row(const ExperimentSpec& spec, std::size_t traces,
                   std::size_t successes, double ms) {
  ResultRow row;
  row.experiment = spec.experiment;
  row.family = spec.family;
  row.n = spec.n;
  row.q = spec.channel.q;
  row.model = to_string(spec.channel.model);
  row.traces = traces;
  row.trials = spec.trials;
  row.successes = successes;
  row.rate = static_cast<double>(successes) / static_cast<double>(spec.trials);
  row.wall_time_ms = spec.timing ? ms : 0.0;
  row.seed = spec.master_seed;
  return row;
}

ResultRow timed_grid_point(const ExperimentSpec& spec, std::size_t grid,
                           std::size_t traces) {
  const auto start = std::chrono::steady_clock::now();
  const std::size_t successes = run_grid_point(spec, grid, traces);
  const std::chrono::duration<double, std::milli> elapsed =
      std::chrono::steady_clock::now() - start;
  return make_row(spec, traces, successes, elapsed.count());
}

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

template <typename T>
T parse_number(const std::string& value, const std::string& key, std::size_t line) {
  T out{};
  const auto res = std::from_chars(value.data(), value.data() + value.size(), out);
  if (res.ec != std::errc() || res.ptr != value.data() + value.size()) {
    throw Error(ErrorCode::kSyntax, "bad value for '" + key + "': " + value,
                {std::to_string(line)});
  }
  return out;
}

}  // namespace

void ExperimentSpec::validate() const {
  channel.validate();
  if (std::find(kFamilies.begin(), kFamilies.end(), family) == kFamilies.end()) {
    throw Error(ErrorCode::kUnknownFamily, "unknown family '" + family + "'");
  }
  if (trials == 0) throw Error(ErrorCode::kInvalidArgument, "trials must be >= 1");
  if (!(delta > 0.0 && delta < 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "delta must lie in (0, 1)");
  }
  for (std::size_t i = 0; i < trace_grid.size(); ++i) {
    if (trace_grid[i] == 0 || (i > 0 && trace_grid[i] <= trace_grid[i - 1])) {
      throw Error(ErrorCode::kInvalidArgument,
                  "trace grid must be strictly ascending and positive");
    }
  }
  if (reconstructor != "ml" && reconstructor != "mean" && reconstructor != "tracked") {
    throw Error(ErrorCode::kInvalidArgument,
                "unknown reconstructor '" + reconstructor + "'");
  }
  if (reconstructor == "tracked" && family != "encoded") {
    throw Error(ErrorCode::kInvalidArgument, "reconstructor 'tracked' needs family encoded");
  }
  const bool string_model = channel.model == ChannelModel::kString;
  if (string_model && family != "random" && family != "path") {
    throw Error(ErrorCode::kInvalidArgument,
                "model string applies to families random and path only");
  }
  if ((family == "encoded" || family == "fuzzy") && channel.model != ChannelModel::kTed) {
    throw Error(ErrorCode::kInvalidArgument, "family " + family + " needs model ted");
  }
  if (family == "encoded" && (n == 0 || n > kEncodedLengthCap)) {
    throw Error(ErrorCode::kInvalidArgument,
                "encoded family needs 1 <= n <= " + std::to_string(kEncodedLengthCap));
  }
  if (family == "forked" && n < 2) {
    throw Error(ErrorCode::kInvalidArgument, "forked family needs n >= 2");
  }
  if (n == 0) throw Error(ErrorCode::kInvalidArgument, "n must be >= 1");
}

ExperimentSpec parse_experiment_spec(std::string_view text) {
  ExperimentSpec spec;
  std::size_t line_no = 0;
  std::istringstream in{std::string(text)};
  std::string raw;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto hash = raw.find('#');
    const std::string line = trim(std::string_view(raw).substr(0, hash));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw Error(ErrorCode::kSyntax, "expected key=value: " + line,
                  {std::to_string(line_no)});
    }
    const std::string key = trim(std::string_view(line).substr(0, eq));
    const std::string value = trim(std::string_view(line).substr(eq + 1));
    if (key == "experiment") {
      spec.experiment = value;
    } else if (key == "family") {
      spec.family = value;
    } else if (key == "n") {
      spec.n = parse_number<std::size_t>(value, key, line_no);
    } else if (key == "model") {
      spec.channel.model = parse_channel_model(value);
    } else if (key == "q") {
      spec.channel.q = parse_number<double>(value, key, line_no);
    } else if (key == "traces") {
      spec.trace_grid.clear();
      std::istringstream items(value);
      std::string item;
      while (std::getline(items, item, ',')) {
        spec.trace_grid.push_back(parse_number<std::size_t>(trim(item), key, line_no));
      }
    } else if (key == "trials") {
      spec.trials = parse_number<std::size_t>(value, key, line_no);
    } else if (key == "delta") {
      spec.delta = parse_number<double>(value, key, line_no);
    } else if (key == "seed") {
      spec.master_seed = parse_number<std::uint64_t>(value, key, line_no);
    } else if (key == "out") {
      spec.output = value;
    } else if (key == "reconstructor") {
      spec.reconstructor = value;
    } else if (key == "m") {
      spec.degree = parse_number<std::size_t>(value, key, line_no);
    } else if (key == "ell") {
      spec.buffer = parse_number<std::size_t>(value, key, line_no);
    } else if (key == "planned") {
      spec.planned_traces = parse_number<std::size_t>(value, key, line_no);
    } else if (key == "threads") {
      spec.threads = parse_number<std::size_t>(value, key, line_no);
    } else if (key == "timing") {
      spec.timing = parse_number<int>(value, key, line_no) != 0;
    } else {
      throw Error(ErrorCode::kSyntax, "unknown key '" + key + "'",
                  {std::to_string(line_no)});
    }
  }
  return spec;
}

void write_csv(std::ostream& out, const std::vector<ResultRow>& rows) {
  out << kCsvHeader << '\n';
  for (const auto& r : rows) {
    char ms[32];
    std::snprintf(ms, sizeof ms, "%.3f", r.wall_time_ms);
    out << r.experiment << ',' << r.family << ',' << r.n << ',' << shortest(r.q)
        << ',' << r.model << ',' << r.traces << ',' << r.trials << ','
        << r.successes << ',' << shortest(r.rate) << ','
        << (r.wall_time_ms == 0.0 ? std::string("0") : std::string(ms)) << ','
        << r.seed << '\n';
  }
}

std::string format_csv(const std::vector<ResultRow>& rows) {
  std::ostringstream out;
  write_csv(out, rows);
  return out.str();
}

bool run_trial(const ExperimentSpec& spec, std::size_t grid, std::size_t trial,
               std::size_t traces) {
  Rng rng(trial_seed(spec.master_seed, grid, trial));
  try {
    if (spec.family == "forked") return trial_forked(spec, traces, rng);
    if (spec.family == "encoded") return trial_encoded(spec, traces, rng);
    if (spec.family == "fuzzy") return trial_fuzzy(spec, traces, rng);
    if (spec.channel.model == ChannelModel::kString) {
      return trial_string(spec, traces, rng);
    }
    if (spec.family == "path") {
      return trial_labels(spec, path_tree(spec.n - 1), traces, rng);
    }
    if (spec.family == "random") {
      return trial_labels(spec, random_tree(spec.n, rng), traces, rng);
    }
  } catch (const Error& e) {
    if (is_reconstruction_failure(e.code())) return false;
    throw;
  }
  throw Error(ErrorCode::kUnknownFamily, "unknown family '" + spec.family + "'");
}

std::vector<ResultRow> run_experiment(const ExperimentSpec& spec) {
  spec.validate();
  if (spec.trace_grid.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "trace grid is empty");
  }
  std::vector<ResultRow> rows;
  for (std::size_t g = 0; g < spec.trace_grid.size(); ++g) {
    rows.push_back(timed_grid_point(spec, g, spec.trace_grid[g]));
  }
  if (!spec.output.empty()) {
    std::ofstream file(spec.output, std::ios::binary);
    if (!file) throw Error(ErrorCode::kIo, "cannot open '" + spec.output + "'");
    write_csv(file, rows);
    if (!file) throw Error(ErrorCode::kIo, "cannot write '" + spec.output + "'");
  }
  return rows;
}

SearchResult doubling_curve(const ExperimentSpec& base, double target,
                            std::size_t cap) {
  base.validate();
  if (!(target > 0.0 && target < 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "target rate must lie in (0, 1)");
  }
  // Without a grid, derived buffer and degree follow the current count.
  ExperimentSpec spec = base;
  spec.trace_grid.clear();
  SearchResult result;
  std::size_t step = 0;
  for (std::size_t traces = 1; traces <= cap; traces *= 2, ++step) {
    ResultRow row = timed_grid_point(spec, step, traces);
    const double rate = row.rate;
    result.curve.push_back(std::move(row));
    if (rate >= target) {
      result.reached = true;
      result.traces = traces;
      break;
    }
  }
  return result;
}

SearchResult doubling_search(const ExperimentSpec& spec, double target,
                             std::size_t cap) {
  SearchResult result = doubling_curve(spec, target, cap);
  if (result.reached) return result;
  const ResultRow& last = result.curve.back();
  throw Error(ErrorCode::kBudgetExceeded,
              "success rate stayed below " + shortest(target) + " up to " +
                  std::to_string(cap) + " traces",
              {std::to_string(last.traces), shortest(last.rate)});
}

}  // namespace treetrace

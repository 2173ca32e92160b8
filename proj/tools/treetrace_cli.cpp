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

// Command-line front end. Talks to the library through the C interface only.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "treetrace/treetrace.h"

namespace {

struct TextDeleter {
  void operator()(tt_text* t) const { tt_text_free(t); }
};
struct TreeDeleter {
  void operator()(tt_tree* t) const { tt_tree_free(t); }
};
using Text = std::unique_ptr<tt_text, TextDeleter>;
using TreePtr = std::unique_ptr<tt_tree, TreeDeleter>;

// Exit statuses.
constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitBudget = 3;

struct Failure {
  tt_status status;
};

void check(tt_status status) {
  if (status != TT_OK) throw Failure{status};
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void emit(const std::string& text, const std::string& out) {
  if (out.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream file(out, std::ios::binary);
  if (!file) throw std::runtime_error("cannot write '" + out + "'");
  file << text;
  if (!text.empty() && text.back() != '\n') file << '\n';
}

TreePtr tree_from(const std::string& text, const std::string& file) {
  std::string source = text;
  if (source.empty() && !file.empty()) {
    source = read_file(file);
    source = source.substr(0, source.find('\n'));
  }
  if (source.empty()) throw std::runtime_error("a tree is required (--tree or --tree-file)");
  tt_tree* t = nullptr;
  check(tt_tree_parse(source.c_str(), &t));
  return TreePtr(t);
}

std::string format(const tt_tree* t) {
  tt_text* raw = nullptr;
  check(tt_tree_format(t, &raw));
  return tt_text_data(Text(raw).get());
}

// Options shared by experiment and search; every set flag becomes a key=value
// line appended after the spec file, so flags override the file.
struct SpecFlags {
  std::string spec_file;
  std::optional<std::string> experiment, family, model, traces, out, reconstructor;
  std::optional<double> q, delta;
  std::optional<std::size_t> n, trials, m, ell, planned, threads;
  std::optional<std::uint64_t> seed;
  std::optional<int> timing;

  void attach(CLI::App* app) {
    app->add_option("--spec", spec_file, "key=value spec file");
    app->add_option("--experiment", experiment, "experiment id for the CSV");
    app->add_option("--family", family, "random | path | forked | encoded | fuzzy");
    app->add_option("--model", model, "ted | lp | string");
    app->add_option("--q", q, "deletion probability");
    app->add_option("--n", n, "instance size");
    app->add_option("--seed", seed, "master seed");
    app->add_option("--trials", trials, "trials per grid point");
    app->add_option("--traces", traces, "trace-count grid, e.g. 1,2,4");
    app->add_option("--delta", delta, "target failure probability");
    app->add_option("--out", out, "CSV output path");
    app->add_option("--reconstructor", reconstructor, "ml | mean | tracked");
    app->add_option("--m", m, "fuzzy degree (0 derives it)");
    app->add_option("--ell", ell, "encoded buffer length (0 derives it)");
    app->add_option("--planned", planned, "planned trace count behind derived m/ell");
    app->add_option("--threads", threads, "worker threads (0 = all cores)");
    app->add_option("--timing", timing, "1 records wall time, 0 writes 0");
  }

  std::string text() const {
    std::ostringstream s;
    if (!spec_file.empty()) s << read_file(spec_file) << '\n';
    auto put = [&](const char* key, const auto& v) {
      if (v) s << key << '=' << *v << '\n';
    };
    put("experiment", experiment);
    put("family", family);
    put("model", model);
    put("q", q);
    put("n", n);
    put("seed", seed);
    put("trials", trials);
    put("traces", traces);
    put("delta", delta);
    put("out", out);
    put("reconstructor", reconstructor);
    put("m", m);
    put("ell", ell);
    put("planned", planned);
    put("threads", threads);
    put("timing", timing);
    return s.str();
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"treetrace: trace reconstruction for ordered trees"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(tt_version()));

  // gen
  auto* gen = app.add_subcommand("gen", "emit an instance as tree text");
  std::string gen_family = "random", gen_bits, gen_out;
  std::size_t gen_n = 10, gen_planned = 1, gen_m = 0, gen_ell = 0;
  double gen_q = 0.1, gen_delta = 0.05;
  std::uint64_t gen_seed = 1;
  gen->add_option("--family", gen_family, "random | path | forked | unforked | encoded | fuzzy");
  gen->add_option("--n", gen_n, "nodes (encoded: string length)");
  gen->add_option("--q", gen_q, "deletion probability for derived parameters");
  gen->add_option("--delta", gen_delta, "failure probability for derived parameters");
  gen->add_option("--traces", gen_planned, "planned trace count for derived parameters");
  gen->add_option("--m", gen_m, "fuzzy degree (0 derives it)");
  gen->add_option("--ell", gen_ell, "encoded buffer (0 derives it)");
  gen->add_option("--bits", gen_bits, "encoded source string");
  gen->add_option("--seed", gen_seed, "seed");
  gen->add_option("--out", gen_out, "output file");

  // trace
  auto* trace = app.add_subcommand("trace", "sample traces, one per line");
  std::string tr_tree, tr_tree_file, tr_model = "ted", tr_string, tr_out;
  double tr_q = 0.1;
  std::size_t tr_count = 10;
  std::uint64_t tr_seed = 1;
  trace->add_option("--tree", tr_tree, "source tree text");
  trace->add_option("--tree-file", tr_tree_file, "file whose first line is the tree");
  trace->add_option("--string", tr_string, "binary source string (model string)");
  trace->add_option("--model", tr_model, "ted | lp | string");
  trace->add_option("--q", tr_q, "deletion probability");
  trace->add_option("--traces", tr_count, "number of traces");
  trace->add_option("--seed", tr_seed, "seed");
  trace->add_option("--out", tr_out, "output file");

  // recon
  auto* recon = app.add_subcommand("recon", "run a reconstruction pipeline on a trace file");
  std::string rc_family = "random", rc_in, rc_tree, rc_tree_file, rc_model = "ted",
              rc_reconstructor = "ml", rc_out;
  double rc_q = 0.1;
  std::size_t rc_n = 0, rc_m = 0, rc_ell = 0;
  recon->add_option("--family", rc_family, "random | path (known topology) | fuzzy | encoded");
  recon->add_option("--in", rc_in, "trace file")->required();
  recon->add_option("--tree", rc_tree, "known topology (random, path)");
  recon->add_option("--tree-file", rc_tree_file, "file whose first line is the topology");
  recon->add_option("--model", rc_model, "string selects plain string reconstruction");
  recon->add_option("--q", rc_q, "deletion probability");
  recon->add_option("--n", rc_n, "size (fuzzy: nodes; encoded/string: length)");
  recon->add_option("--m", rc_m, "fuzzy degree");
  recon->add_option("--ell", rc_ell, "encoded buffer");
  recon->add_option("--reconstructor", rc_reconstructor, "ml | mean | tracked (encoded)");
  recon->add_option("--out", rc_out, "output file");

  // enumerate
  auto* enumerate = app.add_subcommand("enumerate", "print LP_k or the exact TED trace law");
  std::string en_tree, en_tree_file, en_model = "lp", en_out;
  std::size_t en_k = 1;
  double en_q = 0.5;
  enumerate->add_option("--tree", en_tree, "tree text");
  enumerate->add_option("--tree-file", en_tree_file, "file whose first line is the tree");
  enumerate->add_option("--model", en_model, "lp | ted");
  enumerate->add_option("--k", en_k, "deletions (lp)");
  enumerate->add_option("--q", en_q, "deletion probability (ted)");
  enumerate->add_option("--out", en_out, "output file");

  // experiment / search
  auto* experiment = app.add_subcommand("experiment", "run an experiment spec, print CSV");
  SpecFlags ex_flags;
  ex_flags.attach(experiment);

  auto* search = app.add_subcommand("search", "doubling search for the trace budget");
  SpecFlags se_flags;
  se_flags.attach(search);
  std::optional<double> se_target;
  std::size_t se_cap = 0;
  search->add_option("--target", se_target, "success rate to reach (default 1 - delta)");
  search->add_option("--cap", se_cap, "largest trace count (default 2^20)");

  // verify
  auto* verify = app.add_subcommand("verify", "run the property suite");
  std::string level = "quick";
  verify->add_option("--level", level, "quick | full");

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) {
      const tt_gen_options opts{gen_family.c_str(), gen_n,   gen_q,
                                gen_delta,          gen_planned, gen_m,
                                gen_ell,            gen_bits.empty() ? nullptr : gen_bits.c_str(),
                                gen_seed};
      tt_tree* raw = nullptr;
      tt_text* info = nullptr;
      check(tt_generate(&opts, &raw, &info));
      TreePtr t(raw);
      Text meta(info);
      std::istringstream lines(tt_text_data(meta.get()));
      for (std::string line; std::getline(lines, line);) std::cerr << "# " << line << '\n';
      emit(format(t.get()), gen_out);
    } else if (trace->parsed()) {
      tt_text* raw = nullptr;
      if (tr_model == "string") {
        if (tr_string.empty()) throw std::runtime_error("model string needs --string");
        check(tt_sample_string_traces(tr_string.c_str(), tr_q, tr_seed, tr_count, &raw));
      } else {
        const TreePtr t = tree_from(tr_tree, tr_tree_file);
        check(tt_sample_traces(t.get(), tr_model.c_str(), tr_q, tr_seed, tr_count, &raw));
      }
      emit(tt_text_data(Text(raw).get()), tr_out);
    } else if (recon->parsed()) {
      const std::string traces = read_file(rc_in);
      if (rc_model == "string") {
        tt_text* raw = nullptr;
        check(tt_reconstruct_string(traces.c_str(), rc_n, rc_q, rc_reconstructor.c_str(), &raw));
        emit(tt_text_data(Text(raw).get()), rc_out);
      } else if (rc_family == "fuzzy") {
        tt_tree* raw = nullptr;
        check(tt_reconstruct_fuzzy(traces.c_str(), rc_n, rc_m, rc_q,
                                   rc_reconstructor.c_str(), &raw));
        emit(format(TreePtr(raw).get()), rc_out);
      } else if (rc_family == "encoded") {
        tt_text* raw = nullptr;
        check(tt_reconstruct_encoded(traces.c_str(), rc_n, rc_ell, rc_q,
                                     rc_reconstructor == "tracked" ? 1 : 0, &raw));
        emit(tt_text_data(Text(raw).get()), rc_out);
      } else if (rc_family == "random" || rc_family == "path") {
        const TreePtr topology = tree_from(rc_tree, rc_tree_file);
        tt_tree* raw = nullptr;
        check(tt_reconstruct_labels(topology.get(), traces.c_str(), rc_q,
                                    rc_reconstructor.c_str(), &raw));
        emit(format(TreePtr(raw).get()), rc_out);
      } else {
        throw std::runtime_error("recon has no pipeline for family '" + rc_family + "'");
      }
    } else if (enumerate->parsed()) {
      const TreePtr t = tree_from(en_tree, en_tree_file);
      tt_text* raw = nullptr;
      if (en_model == "lp") {
        check(tt_enumerate_lp(t.get(), en_k, &raw));
      } else if (en_model == "ted") {
        check(tt_enumerate_ted(t.get(), en_q, &raw));
      } else {
        throw std::runtime_error("enumerate supports models lp and ted");
      }
      emit(tt_text_data(Text(raw).get()), en_out);
    } else if (experiment->parsed()) {
      tt_text* raw = nullptr;
      check(tt_run_experiment(ex_flags.text().c_str(), &raw));
      // The library writes the file itself when out is set.
      if (!ex_flags.out) std::cout << tt_text_data(Text(raw).get());
      else tt_text_free(raw);
    } else if (search->parsed()) {
      const double delta = se_flags.delta.value_or(0.05);
      const double target = se_target.value_or(1.0 - delta);
      // The curve goes to --out when given; the grid key is irrelevant here.
      std::optional<std::string> out = se_flags.out;
      se_flags.out.reset();
      std::size_t traces = 0;
      tt_text* raw = nullptr;
      const tt_status status =
          tt_search(se_flags.text().c_str(), target, se_cap, &traces, &raw);
      if (status != TT_OK && status != TT_E_BUDGET_EXCEEDED) throw Failure{status};
      emit(tt_text_data(Text(raw).get()), out.value_or(""));
      if (status == TT_E_BUDGET_EXCEEDED) {
        std::cerr << "treetrace: " << tt_last_error() << '\n';
        return kExitBudget;
      }
      std::cerr << "traces=" << traces << '\n';
    } else if (verify->parsed()) {
      int passed = 0;
      tt_text* raw = nullptr;
      check(tt_verify(level.c_str(), &passed, &raw));
      std::cout << tt_text_data(Text(raw).get());
      return passed ? kExitOk : kExitError;
    }
  } catch (const Failure& f) {
    const std::string msg = tt_last_error();
    std::cerr << "treetrace: " << (msg.empty() ? tt_status_name(f.status) : msg) << '\n';
    return kExitError;
  } catch (const std::exception& e) {
    std::cerr << "treetrace: " << e.what() << '\n';
    return kExitError;
  }
  return kExitOk;
}

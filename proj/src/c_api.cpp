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

#include "treetrace/treetrace.h"

#include <exception>
#include <new>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "treetrace/channels.hpp"
#include "treetrace/error.hpp"
#include "treetrace/harness.hpp"
#include "treetrace/instances.hpp"
#include "treetrace/rng.hpp"
#include "treetrace/string_recon.hpp"
#include "treetrace/tree_recon.hpp"
#include "treetrace/verify.hpp"

struct tt_tree {
  treetrace::Tree tree;
};

struct tt_text {
  std::string data;
};

namespace {

using treetrace::Error;
using treetrace::ErrorCode;

thread_local std::string last_error;

tt_status status_of(ErrorCode code) {
  return static_cast<tt_status>(static_cast<int>(code) + 1);
}

// Runs `body`, translating exceptions into a status and a thread-local
// message.
template <typename Body>
tt_status guarded(Body body) {
  try {
    body();
    last_error.clear();
    return TT_OK;
  } catch (const Error& e) {
    last_error = e.what();
    if (!e.details().empty()) {
      last_error += " [";
      for (std::size_t i = 0; i < e.details().size(); ++i) {
        last_error += (i ? "," : "") + e.details()[i];
      }
      last_error += "]";
    }
    return status_of(e.code());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return TT_E_INTERNAL;
  } catch (const std::exception& e) {
    last_error = e.what();
    return TT_E_INTERNAL;
  } catch (...) {
    last_error = "unknown failure";
    return TT_E_INTERNAL;
  }
}

void require(const void* p, const char* what) {
  if (p == nullptr) {
    throw Error(ErrorCode::kInvalidArgument, std::string(what) + " is NULL");
  }
}

tt_text* make_text(std::string s) { return new tt_text{std::move(s)}; }
tt_tree* make_tree(treetrace::Tree t) { return new tt_tree{std::move(t)}; }

std::vector<std::string> lines_of(const char* text) {
  std::vector<std::string> out;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
    if (!line.empty()) out.push_back(line);
  }
  return out;
}

std::vector<treetrace::Tree> parse_tree_lines(const char* text) {
  std::vector<treetrace::Tree> out;
  for (const auto& line : lines_of(text)) out.push_back(treetrace::parse_tree(line));
  return out;
}

std::vector<treetrace::SymbolString> parse_string_lines(const char* text) {
  std::vector<treetrace::SymbolString> out;
  for (const auto& line : lines_of(text)) {
    out.push_back(line == "-" ? treetrace::SymbolString()
                              : treetrace::SymbolString::parse(line));
  }
  return out;
}

std::string string_line(const treetrace::SymbolString& s) {
  return s.empty() ? "-" : s.str();
}

std::string name_or(const char* s, const char* fallback) {
  return s == nullptr ? fallback : s;
}

}  // namespace

extern "C" {

const char* tt_version(void) { return "0.1.0"; }

const char* tt_status_name(tt_status status) {
  if (status == TT_OK) return "ok";
  if (status == TT_E_INTERNAL) return "internal";
  const int code = static_cast<int>(status) - 1;
  if (code < 0 || code > static_cast<int>(ErrorCode::kBudgetExceeded)) return "unknown";
  return treetrace::to_string(static_cast<ErrorCode>(code));
}

const char* tt_last_error(void) { return last_error.c_str(); }

const char* tt_text_data(const tt_text* text) {
  return text == nullptr ? "" : text->data.c_str();
}

size_t tt_text_size(const tt_text* text) {
  return text == nullptr ? 0 : text->data.size();
}

void tt_text_free(tt_text* text) { delete text; }

tt_status tt_tree_parse(const char* text, tt_tree** out) {
  return guarded([&] {
    require(text, "text");
    require(out, "out");
    *out = make_tree(treetrace::parse_tree(text));
  });
}

void tt_tree_free(tt_tree* tree) { delete tree; }

tt_status tt_tree_format(const tt_tree* tree, tt_text** out) {
  return guarded([&] {
    require(tree, "tree");
    require(out, "out");
    *out = make_text(treetrace::format_tree(tree->tree));
  });
}

size_t tt_tree_size(const tt_tree* tree) { return tree == nullptr ? 0 : tree->tree.size(); }

int tt_tree_equal(const tt_tree* a, const tt_tree* b) {
  if (a == nullptr || b == nullptr) return 0;
  return treetrace::trees_equal(a->tree, b->tree) ? 1 : 0;
}

tt_status tt_generate(const tt_gen_options* options, tt_tree** out, tt_text** info) {
  return guarded([&] {
    require(options, "options");
    require(out, "out");
    using namespace treetrace;
    const std::string family = name_or(options->family, "random");
    const std::size_t n = options->n;
    const std::size_t planned = options->planned_traces == 0 ? 1 : options->planned_traces;
    Rng rng(options->seed);
    std::ostringstream meta;
    meta << "family=" << family << "\n";
    Tree tree;
    if (family == "random") {
      if (n == 0) throw Error(ErrorCode::kInvalidArgument, "n must be >= 1");
      tree = random_labels(random_tree(n, rng), rng);
    } else if (family == "path") {
      if (n == 0) throw Error(ErrorCode::kInvalidArgument, "n must be >= 1");
      tree = random_labels(path_tree(n - 1), rng);
    } else if (family == "forked") {
      tree = forked_tree(n);
    } else if (family == "unforked") {
      tree = path_tree(n);
    } else if (family == "encoded") {
      const SymbolString bits = options->bits != nullptr
                                    ? SymbolString::parse(options->bits)
                                    : random_bits(n, rng);
      const std::size_t buffer = options->buffer != 0
                                     ? options->buffer
                                     : encoding_buffer(options->delta, planned, options->q);
      const EncodedInstance inst = encode_string_as_tree(bits, buffer);
      meta << "bits=" << bits.str() << "\nlength=" << bits.size()
           << "\nbuffer=" << buffer << "\n";
      tree = inst.tree;
    } else if (family == "fuzzy") {
      const std::size_t m = options->degree != 0
                                ? options->degree
                                : fuzzy_degree(n, planned, options->delta, options->q);
      meta << "degree=" << m << "\n";
      tree = random_fuzzy_tree(n, m, rng);
    } else {
      throw Error(ErrorCode::kUnknownFamily, "unknown family '" + family + "'");
    }
    meta << "nodes=" << tree.size() << "\n";
    *out = make_tree(std::move(tree));
    if (info != nullptr) *info = make_text(meta.str());
  });
}

tt_status tt_sample_traces(const tt_tree* tree, const char* model, double q,
                           uint64_t seed, size_t count, tt_text** out) {
  return guarded([&] {
    require(tree, "tree");
    require(out, "out");
    using namespace treetrace;
    const ChannelSpec channel{parse_channel_model(name_or(model, "ted")), q};
    channel.validate();
    Rng rng(seed);
    std::string text;
    for (std::size_t i = 0; i < count; ++i) {
      text += format_tree(sample_tree_trace(tree->tree, channel, rng));
      text += '\n';
    }
    *out = make_text(std::move(text));
  });
}

tt_status tt_sample_string_traces(const char* bits, double q, uint64_t seed,
                                  size_t count, tt_text** out) {
  return guarded([&] {
    require(bits, "bits");
    require(out, "out");
    using namespace treetrace;
    ChannelSpec{ChannelModel::kString, q}.validate();
    const SymbolString s = SymbolString::parse(bits);
    Rng rng(seed);
    std::string text;
    for (std::size_t i = 0; i < count; ++i) {
      text += string_line(string_trace(s, q, rng));
      text += '\n';
    }
    *out = make_text(std::move(text));
  });
}

tt_status tt_reconstruct_labels(const tt_tree* topology, const char* traces, double q,
                                const char* reconstructor, tt_tree** out) {
  return guarded([&] {
    require(topology, "topology");
    require(traces, "traces");
    require(out, "out");
    using namespace treetrace;
    const auto list = parse_tree_lines(traces);
    *out = make_tree(reconstruct_labels_known_topology(
        topology->tree, list, q, make_reconstructor(name_or(reconstructor, "ml"))));
  });
}

tt_status tt_reconstruct_fuzzy(const char* traces, size_t n, size_t degree, double q,
                               const char* reconstructor, tt_tree** out) {
  return guarded([&] {
    require(traces, "traces");
    require(out, "out");
    using namespace treetrace;
    const auto list = parse_tree_lines(traces);
    *out = make_tree(reconstruct_fuzzy(list, n, degree, q,
                                       make_reconstructor(name_or(reconstructor, "ml"))));
  });
}

tt_status tt_reconstruct_encoded(const char* traces, size_t length, size_t buffer,
                                 double q, int tracked, tt_text** out) {
  return guarded([&] {
    require(traces, "traces");
    require(out, "out");
    using namespace treetrace;
    const auto list = parse_tree_lines(traces);
    const SymbolString bits = tracked != 0
                                  ? reconstruct_encoded_tracked(list, length, buffer)
                                  : reconstruct_encoded(list, length, buffer, q);
    *out = make_text(bits.str());
  });
}

tt_status tt_reconstruct_string(const char* traces, size_t n, double q,
                                const char* reconstructor, tt_text** out) {
  return guarded([&] {
    require(traces, "traces");
    require(out, "out");
    using namespace treetrace;
    const auto list = parse_string_lines(traces);
    if (list.empty()) throw Error(ErrorCode::kEmptyInput, "no traces");
    *out = make_text(make_reconstructor(name_or(reconstructor, "ml"))(list, n, q).str());
  });
}

tt_status tt_enumerate_lp(const tt_tree* tree, size_t k, tt_text** out) {
  return guarded([&] {
    require(tree, "tree");
    require(out, "out");
    std::string text;
    for (const auto& t : treetrace::lp_trace_set(tree->tree, k)) {
      text += treetrace::format_tree(t);
      text += '\n';
    }
    *out = make_text(std::move(text));
  });
}

tt_status tt_enumerate_ted(const tt_tree* tree, double q, tt_text** out) {
  return guarded([&] {
    require(tree, "tree");
    require(out, "out");
    std::ostringstream text;
    text.precision(17);
    for (const auto& [key, prob] : treetrace::ted_trace_distribution(tree->tree, q).entries) {
      text << prob << '\t' << key << '\n';
    }
    *out = make_text(text.str());
  });
}

tt_status tt_run_experiment(const char* spec, tt_text** out) {
  return guarded([&] {
    require(spec, "spec");
    require(out, "out");
    using namespace treetrace;
    *out = make_text(format_csv(run_experiment(parse_experiment_spec(spec))));
  });
}

tt_status tt_search(const char* spec, double target, size_t cap, size_t* traces,
                    tt_text** curve) {
  tt_status status = TT_OK;
  treetrace::SearchResult result;
  const tt_status setup = guarded([&] {
    require(spec, "spec");
    result = treetrace::doubling_curve(treetrace::parse_experiment_spec(spec), target,
                                       cap == 0 ? treetrace::kSearchCap : cap);
  });
  if (setup != TT_OK) return setup;
  if (curve != nullptr) *curve = make_text(treetrace::format_csv(result.curve));
  if (!result.reached) {
    last_error = "budget-exceeded: success rate stayed below target up to " +
                 std::to_string(result.curve.empty() ? 0 : result.curve.back().traces) +
                 " traces";
    status = TT_E_BUDGET_EXCEEDED;
  } else if (traces != nullptr) {
    *traces = result.traces;
  }
  return status;
}

tt_status tt_verify(const char* level, int* passed, tt_text** report) {
  return guarded([&] {
    require(passed, "passed");
    using namespace treetrace;
    const VerifyReport r = verify_suite(parse_verify_level(name_or(level, "quick")));
    *passed = r.all_passed() ? 1 : 0;
    if (report != nullptr) {
      std::ostringstream text;
      print_report(text, r);
      *report = make_text(text.str());
    }
  });
}

tt_status tt_buffer_length(double delta, size_t planned_traces, double q, size_t* out) {
  return guarded([&] {
    require(out, "out");
    *out = treetrace::buffer_length(delta, planned_traces, q);
  });
}

tt_status tt_fuzzy_degree(size_t n, size_t planned_traces, double delta, double q,
                          size_t* out) {
  return guarded([&] {
    require(out, "out");
    *out = treetrace::fuzzy_degree(n, planned_traces, delta, q);
  });
}

}  // extern "C"

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

/* C interface to treetrace. All functions are thread-safe; objects are not
 * shared between threads unless the caller synchronizes. Functions returning
 * tt_status leave a message for tt_last_error() on failure; output pointers
 * are untouched unless the call succeeds (tt_search is the one exception, see
 * below). */
#ifndef TREETRACE_H_
#define TREETRACE_H_

#include <stddef.h>
#include <stdint.h>

#if defined(TREETRACE_BUILDING_LIBRARY)
#define TT_API __attribute__((visibility("default")))
#else
#define TT_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum tt_status {
  TT_OK = 0,
  TT_E_INVALID_ARGUMENT = 1,
  TT_E_MALFORMED_STRING = 2,
  TT_E_SYNTAX = 3,
  TT_E_INVALID_DELETION = 4,
  TT_E_STALE_TARGET = 5,
  TT_E_SIZE_LIMIT = 6,
  TT_E_EMPTY_INPUT = 7,
  TT_E_DEGENERATE_PAIR = 8,
  TT_E_INCONSISTENT_TRACES = 9,
  TT_E_NO_CANDIDATES = 10,
  TT_E_PROTOCOL = 11,
  TT_E_MALFORMED_PAIR = 12,
  TT_E_RECONSTRUCTION_FAILED = 13,
  TT_E_UNDECIDED_POSITION = 14,
  TT_E_UNKNOWN_FAMILY = 15,
  TT_E_IO = 16,
  TT_E_BUDGET_EXCEEDED = 17,
  TT_E_INTERNAL = 99
} tt_status;

typedef struct tt_tree tt_tree; /* immutable ordered labeled tree */
typedef struct tt_text tt_text; /* owned, NUL-terminated text */

TT_API const char* tt_version(void);
/* Stable lowercase name, e.g. "budget-exceeded". */
TT_API const char* tt_status_name(tt_status status);
/* Message of the last failed call on this thread; "" when none. */
TT_API const char* tt_last_error(void);

TT_API const char* tt_text_data(const tt_text* text);
TT_API size_t tt_text_size(const tt_text* text);
TT_API void tt_text_free(tt_text* text);

/* Trees in the text grammar LABEL [ "(" node ("," node)* ")" ]. */
TT_API tt_status tt_tree_parse(const char* text, tt_tree** out);
TT_API void tt_tree_free(tt_tree* tree);
TT_API tt_status tt_tree_format(const tt_tree* tree, tt_text** out);
TT_API size_t tt_tree_size(const tt_tree* tree);
/* 1 when shape and labels agree, 0 otherwise (or on NULL). */
TT_API int tt_tree_equal(const tt_tree* a, const tt_tree* b);

typedef struct tt_gen_options {
  const char* family;      /* random | path | forked | encoded | fuzzy | unforked */
  size_t n;                /* nodes; for encoded the string length */
  double q;                /* used to derive buffer / degree */
  double delta;            /* used to derive buffer / degree */
  size_t planned_traces;   /* N used to derive buffer / degree */
  size_t degree;           /* fuzzy degree; 0 derives it */
  size_t buffer;           /* encoded buffer; 0 derives it */
  const char* bits;        /* encoded source string; NULL draws one */
  uint64_t seed;
} tt_gen_options;

/* Builds an instance. "path" is the path of n nodes with random labels,
 * "random" a uniform topology with random labels, "forked" B_n and
 * "unforked" A_n. When `info` is non-NULL it receives key=value lines
 * describing the instance (source bits, buffer, degree). */
TT_API tt_status tt_generate(const tt_gen_options* options, tt_tree** out,
                             tt_text** info);

/* Samples `count` traces, one per line. model: "ted" or "lp". */
TT_API tt_status tt_sample_traces(const tt_tree* tree, const char* model, double q,
                                  uint64_t seed, size_t count, tt_text** out);
/* String channel on a binary string; an empty trace is written as "-". */
TT_API tt_status tt_sample_string_traces(const char* bits, double q, uint64_t seed,
                                         size_t count, tt_text** out);

/* Trace lists are newline-separated; blank lines are skipped and "-" is the
 * empty string. reconstructor: "ml" or "mean". */
TT_API tt_status tt_reconstruct_labels(const tt_tree* topology, const char* traces,
                                       double q, const char* reconstructor,
                                       tt_tree** out);
TT_API tt_status tt_reconstruct_fuzzy(const char* traces, size_t n, size_t degree,
                                      double q, const char* reconstructor,
                                      tt_tree** out);
/* tracked != 0 selects the identifier-based decoder. */
TT_API tt_status tt_reconstruct_encoded(const char* traces, size_t length,
                                        size_t buffer, double q, int tracked,
                                        tt_text** out);
TT_API tt_status tt_reconstruct_string(const char* traces, size_t n, double q,
                                       const char* reconstructor, tt_text** out);

/* LP_k(tree), one tree per line in canonical order. */
TT_API tt_status tt_enumerate_lp(const tt_tree* tree, size_t k, tt_text** out);
/* Exact TED trace law, lines "probability<TAB>tree". */
TT_API tt_status tt_enumerate_ted(const tt_tree* tree, double q, tt_text** out);

/* Runs an experiment described by key=value text; `out` receives the CSV. */
TT_API tt_status tt_run_experiment(const char* spec, tt_text** out);
/* Doubling search. On success stores the count in *traces. The curve CSV is
 * stored in *curve both on success and on TT_E_BUDGET_EXCEEDED. */
TT_API tt_status tt_search(const char* spec, double target, size_t cap,
                           size_t* traces, tt_text** curve);

/* Runs the property suite ("quick" or "full"). *passed is 1 when every
 * property holds. */
TT_API tt_status tt_verify(const char* level, int* passed, tt_text** report);

TT_API tt_status tt_buffer_length(double delta, size_t planned_traces, double q,
                                  size_t* out);
TT_API tt_status tt_fuzzy_degree(size_t n, size_t planned_traces, double delta,
                                 double q, size_t* out);

#ifdef __cplusplus
}
#endif

#endif /* TREETRACE_H_ */

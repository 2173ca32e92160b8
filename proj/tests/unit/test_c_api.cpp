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

#include <gtest/gtest.h>

#include <algorithm>
#include <string>

#include "treetrace/treetrace.h"

namespace {

std::string take(tt_text* text) {
  std::string s(tt_text_data(text), tt_text_size(text));
  tt_text_free(text);
  return s;
}

tt_tree* parse(const char* text) {
  tt_tree* t = nullptr;
  EXPECT_EQ(tt_tree_parse(text, &t), TT_OK) << tt_last_error();
  return t;
}

TEST(CApi, VersionAndStatusNames) {
  EXPECT_STREQ(tt_version(), "0.1.0");
  EXPECT_STREQ(tt_status_name(TT_OK), "ok");
  EXPECT_STREQ(tt_status_name(TT_E_BUDGET_EXCEEDED), "budget-exceeded");
}

TEST(CApi, TreeRoundTrip) {
  tt_tree* t = parse("0(1,0(1))");
  EXPECT_EQ(tt_tree_size(t), 4U);
  tt_text* text = nullptr;
  ASSERT_EQ(tt_tree_format(t, &text), TT_OK);
  EXPECT_EQ(take(text), "0(1,0(1))");
  tt_tree* u = parse("0(1,0(1))");
  tt_tree* v = parse("0(1,0(0))");
  EXPECT_EQ(tt_tree_equal(t, u), 1);
  EXPECT_EQ(tt_tree_equal(t, v), 0);
  EXPECT_EQ(tt_tree_equal(t, nullptr), 0);
  tt_tree_free(t);
  tt_tree_free(u);
  tt_tree_free(v);
}

TEST(CApi, ErrorsReported) {
  tt_tree* t = nullptr;
  EXPECT_EQ(tt_tree_parse("0(", &t), TT_E_SYNTAX);
  EXPECT_EQ(t, nullptr);
  EXPECT_NE(std::string(tt_last_error()).find("syntax"), std::string::npos);
  EXPECT_EQ(tt_tree_parse(nullptr, &t), TT_E_INVALID_ARGUMENT);
  EXPECT_EQ(tt_tree_parse("0", nullptr), TT_E_INVALID_ARGUMENT);
  tt_text* out = nullptr;
  EXPECT_EQ(tt_run_experiment("family=nope\n", &out), TT_E_UNKNOWN_FAMILY);
  EXPECT_EQ(out, nullptr);
}

TEST(CApi, GenerateEncoded) {
  tt_gen_options o{};
  o.family = "encoded";
  o.n = 2;
  o.buffer = 1;
  o.bits = "01";
  tt_tree* t = nullptr;
  tt_text* info = nullptr;
  ASSERT_EQ(tt_generate(&o, &t, &info), TT_OK) << tt_last_error();
  const std::string meta = take(info);
  EXPECT_NE(meta.find("bits=01"), std::string::npos) << meta;
  tt_text* text = nullptr;
  ASSERT_EQ(tt_tree_format(t, &text), TT_OK);
  EXPECT_EQ(take(text), "0(0(0,0(0,0)))");
  tt_tree_free(t);
}

TEST(CApi, SampleAndReconstructLabels) {
  tt_tree* t = parse("1(0,1(0))");
  tt_text* traces = nullptr;
  ASSERT_EQ(tt_sample_traces(t, "ted", 0.0, 1, 3, &traces), TT_OK);
  const std::string lines = take(traces);
  EXPECT_EQ(lines, "1(0,1(0))\n1(0,1(0))\n1(0,1(0))\n");
  tt_tree* topo = parse("0(0,0(0))");
  tt_tree* out = nullptr;
  ASSERT_EQ(tt_reconstruct_labels(topo, lines.c_str(), 0.0, "ml", &out), TT_OK)
      << tt_last_error();
  EXPECT_EQ(tt_tree_equal(out, t), 1);
  EXPECT_EQ(tt_sample_traces(t, "string", 0.1, 1, 3, &traces), TT_E_INVALID_ARGUMENT);
  tt_tree_free(out);
  tt_tree_free(topo);
  tt_tree_free(t);
}

TEST(CApi, StringTraces) {
  tt_text* traces = nullptr;
  ASSERT_EQ(tt_sample_string_traces("0110", 0.0, 1, 2, &traces), TT_OK);
  const std::string lines = take(traces);
  EXPECT_EQ(lines, "0110\n0110\n");
  tt_text* out = nullptr;
  ASSERT_EQ(tt_reconstruct_string(lines.c_str(), 4, 0.0, "ml", &out), TT_OK);
  EXPECT_EQ(take(out), "0110");
  ASSERT_EQ(tt_reconstruct_string("1\n1\n11\n", 2, 0.5, "ml", &out), TT_OK);
  EXPECT_EQ(take(out), "11");
  ASSERT_EQ(tt_reconstruct_string("-\n", 2, 0.5, "ml", &out), TT_OK);
  EXPECT_EQ(take(out), "00");
}

TEST(CApi, Enumerate) {
  tt_tree* a = parse("0(0(0(0(0(0(0))))))");
  tt_text* out = nullptr;
  ASSERT_EQ(tt_enumerate_lp(a, 2, &out), TT_OK);
  EXPECT_EQ(take(out), "0(0(0(0(0))))\n");
  tt_tree* pair = parse("0(1)");
  ASSERT_EQ(tt_enumerate_ted(pair, 0.5, &out), TT_OK);
  EXPECT_EQ(take(out), "0.5\t0\n0.5\t0(1)\n");
  tt_tree_free(a);
  tt_tree_free(pair);
}

TEST(CApi, ExperimentAndSearch) {
  tt_text* out = nullptr;
  ASSERT_EQ(tt_run_experiment("family=path\nn=6\nq=0\ntraces=1\ntrials=3\ntiming=0\n", &out),
            TT_OK)
      << tt_last_error();
  EXPECT_EQ(take(out),
            "experiment,family,n,q,model,traces,trials,successes,rate,wall_time_ms,seed\n"
            "experiment,path,6,0,ted,1,3,3,1,0,1\n");

  size_t traces = 0;
  tt_text* curve = nullptr;
  ASSERT_EQ(tt_search("family=random\nn=6\nq=0\ntrials=4\ntiming=0\n", 0.95, 1024, &traces,
                      &curve),
            TT_OK);
  EXPECT_EQ(traces, 1U);
  tt_text_free(curve);

  curve = nullptr;
  EXPECT_EQ(tt_search("family=forked\nn=12\nmodel=lp\nq=0.5\ntrials=10\ntiming=0\n", 0.95, 8,
                      &traces, &curve),
            TT_E_BUDGET_EXCEEDED);
  ASSERT_NE(curve, nullptr);
  const std::string csv = take(curve);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 5);
}

TEST(CApi, Verify) {
  int passed = 0;
  tt_text* report = nullptr;
  ASSERT_EQ(tt_verify("quick", &passed, &report), TT_OK);
  EXPECT_EQ(passed, 1);
  EXPECT_NE(take(report).find("PASS"), std::string::npos);
  EXPECT_EQ(tt_verify("medium", &passed, &report), TT_E_INVALID_ARGUMENT);
}

TEST(CApi, ParameterHelpers) {
  size_t v = 0;
  ASSERT_EQ(tt_buffer_length(0.01, 1000, 0.5, &v), TT_OK);
  EXPECT_EQ(v, 17U);
  ASSERT_EQ(tt_fuzzy_degree(30, 100, 0.01, 0.2, &v), TT_OK);
  EXPECT_EQ(v, 8U);
  EXPECT_EQ(tt_buffer_length(0.01, 1000, 1.5, &v), TT_E_INVALID_ARGUMENT);
}

}  // namespace

// Copyright 2026 The qclass Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>
#include <thread>

#include "qclass/qclass.h"

namespace {

std::string take(qclass_string* s) {
  std::string out = qclass_string_data(s);
  qclass_string_free(s);
  return out;
}

}  // namespace

TEST(CApi, Version) { EXPECT_STREQ(qclass_version(), "0.1.0"); }

TEST(CApi, MachineEval) {
  qclass_machine_params p;
  qclass_machine_params_default(&p);
  p.n = 1;
  qclass_report* rep = nullptr;
  ASSERT_EQ(qclass_machine_eval(QCLASS_MACHINE_LM, &p, &rep), QCLASS_OK);
  EXPECT_NEAR(qclass_report_error(rep), (6.0 - std::sqrt(3.0)) / 12.0, 1e-12);
  EXPECT_NEAR(qclass_report_excess(rep), (4.0 - std::sqrt(3.0)) / 12.0, 1e-12);
  qclass_string* js = nullptr;
  ASSERT_EQ(qclass_report_json(rep, &js), QCLASS_OK);
  const std::string text = take(js);
  EXPECT_NE(text.find("\"error_probability\": 0.35566243270259357"), std::string::npos) << text;
  qclass_report_free(rep);

  p.n = -1;
  p.nA = 3;
  p.nC = 1;
  ASSERT_EQ(qclass_machine_eval(QCLASS_MACHINE_OPT, &p, &rep), QCLASS_OK);
  EXPECT_GT(qclass_report_error(rep), 1.0 / 6.0);
  EXPECT_LT(qclass_report_error(rep), 0.5);
  qclass_report_free(rep);
}

TEST(CApi, Errors) {
  qclass_machine_params p;
  qclass_machine_params_default(&p);
  p.r = 0.0;
  qclass_report* rep = nullptr;
  EXPECT_EQ(qclass_machine_eval(QCLASS_MACHINE_LM, &p, &rep), QCLASS_ERR_DOMAIN);
  EXPECT_EQ(rep, nullptr);
  EXPECT_NE(std::string(qclass_last_error()).find("r must"), std::string::npos);
  EXPECT_EQ(qclass_machine_eval(QCLASS_MACHINE_LM, nullptr, &rep), QCLASS_ERR_USAGE);

  double v = 0.0;
  EXPECT_EQ(qclass_su2_cg(2, 1, 1, 1, 3, 2, &v), QCLASS_ERR_DOMAIN);
  EXPECT_EQ(qclass_su2_cg(2, 0, 1, 1, 3, 1, &v), QCLASS_OK);
  EXPECT_STREQ(qclass_last_error(), "");

  qclass_verify* vr = nullptr;
  EXPECT_EQ(qclass_verify_run("nope", 1, 1e-8, 1, &vr), QCLASS_ERR_USAGE);
  EXPECT_STREQ(qclass_status_name(QCLASS_ERR_INFEASIBLE), "infeasible");
}

TEST(CApi, LastErrorIsPerThread) {
  qclass_machine_params p;
  qclass_machine_params_default(&p);
  p.r = 2.0;
  qclass_report* rep = nullptr;
  ASSERT_EQ(qclass_machine_eval(QCLASS_MACHINE_OPT, &p, &rep), QCLASS_ERR_DOMAIN);
  std::string other = "unset";
  std::thread t([&] { other = qclass_last_error(); });
  t.join();
  EXPECT_EQ(other, "");
  EXPECT_NE(std::string(qclass_last_error()), "");
}

TEST(CApi, Su2) {
  double v = 0.0;
  ASSERT_EQ(qclass_su2_6j(1, 1, 2, 1, 1, 0, &v), QCLASS_OK);
  EXPECT_NEAR(v, 0.5, 1e-14);
  int64_t m = 0;
  ASSERT_EQ(qclass_su2_multiplicity(4, 2, &m), QCLASS_OK);
  EXPECT_EQ(m, 3);
}

TEST(CApi, Sweep) {
  qclass_sweep_config c;
  qclass_sweep_config_default(&c);
  EXPECT_EQ(c.n_max, 5);
  EXPECT_EQ(c.steps, 46);
  c.n_max = 2;
  c.steps = 3;
  c.threads = 1;
  qclass_sweep* s = nullptr;
  ASSERT_EQ(qclass_sweep_run(&c, &s), QCLASS_OK);
  ASSERT_EQ(qclass_sweep_size(s), 6u);
  qclass_sweep_row row;
  ASSERT_EQ(qclass_sweep_get(s, 5, &row), QCLASS_OK);
  EXPECT_EQ(row.n, 2);
  EXPECT_EQ(row.r, 1.0);
  EXPECT_EQ(row.failed, 0);
  EXPECT_EQ(qclass_sweep_get(s, 6, &row), QCLASS_ERR_USAGE);
  const std::string path = ::testing::TempDir() + "qclass_capi_sweep.csv";
  ASSERT_EQ(qclass_sweep_write_csv(s, path.c_str()), QCLASS_OK);
  std::ifstream f(path);
  std::string header;
  std::getline(f, header);
  EXPECT_EQ(header, "n,r,R_lm,R_opt,rel_gap,solver_gap");
  EXPECT_EQ(qclass_sweep_write_csv(s, "/nonexistent/dir/x.csv"), QCLASS_ERR_IO);
  qclass_sweep_free(s);
  std::remove(path.c_str());

  c.steps = 0;
  EXPECT_EQ(qclass_sweep_run(&c, &s), QCLASS_ERR_DOMAIN);
}

TEST(CApi, Verify) {
  qclass_verify* v = nullptr;
  ASSERT_EQ(qclass_verify_run("su2", 1, 1e-8, 1, &v), QCLASS_OK);
  EXPECT_EQ(qclass_verify_passed(v), 1);
  EXPECT_GT(qclass_verify_size(v), 5u);
  qclass_string* js = nullptr;
  ASSERT_EQ(qclass_verify_json(v, &js), QCLASS_OK);
  EXPECT_NE(take(js).find("\"id\": \"cg_orthonormality\""), std::string::npos);
  qclass_verify_free(v);
}

TEST(CApi, Dumps) {
  qclass_string* js = nullptr;
  ASSERT_EQ(qclass_dump_sigma_diff(1, 1, 0.5, &js), QCLASS_OK);
  EXPECT_NE(take(js).find("\"basis_order\": \"(AC)B\""), std::string::npos);
  ASSERT_EQ(qclass_dump_gamma(1, 1, 0.5, &js), QCLASS_OK);
  EXPECT_NE(take(js).find("\"kind\": \"two_system\""), std::string::npos);
  ASSERT_EQ(qclass_dump_seed(1, 1.0, 1e-8, 500, &js), QCLASS_OK);
  EXPECT_NE(take(js).find("\"constraint_residuals\""), std::string::npos);
  EXPECT_EQ(qclass_dump_gamma(-2, 1, 0.5, &js), QCLASS_ERR_DOMAIN);
  ASSERT_EQ(qclass_json_format("{\"x\": 0.1, \"y\": 2.0}", &js), QCLASS_OK);
  EXPECT_EQ(take(js), "{\n  \"x\": 0.10000000000000001,\n  \"y\": 2.0\n}");
  EXPECT_EQ(qclass_json_format("{", &js), QCLASS_ERR_USAGE);
}

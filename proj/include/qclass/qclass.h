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

/* C interface to the qclass library. Every entry point returns a status code;
   on failure qclass_last_error() holds the message for the calling thread. */
#ifndef QCLASS_QCLASS_H
#define QCLASS_QCLASS_H

#include <stddef.h>
#include <stdint.h>

#if defined(QCLASS_BUILDING_LIBRARY)
#define QCLASS_API __attribute__((visibility("default")))
#else
#define QCLASS_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum qclass_status {
  QCLASS_OK = 0,
  QCLASS_ERR_DOMAIN = 1,
  QCLASS_ERR_USAGE = 2,
  QCLASS_ERR_VERIFY = 3,
  QCLASS_ERR_INTEGRITY = 4,
  QCLASS_ERR_SOLVER = 5,
  QCLASS_ERR_INFEASIBLE = 6,
  QCLASS_ERR_IO = 7,
  QCLASS_ERR_INTERNAL = 8
} qclass_status;

typedef enum qclass_machine {
  QCLASS_MACHINE_OPT = 0,
  QCLASS_MACHINE_LM = 1,
  QCLASS_MACHINE_ED = 2,    /* continuous covariant estimation */
  QCLASS_MACHINE_ED_N1 = 3, /* optimal finite E&D, n = 1 only */
  QCLASS_MACHINE_REVERSED = 4
} qclass_machine;

typedef struct qclass_report qclass_report;
typedef struct qclass_sweep qclass_sweep;
typedef struct qclass_verify qclass_verify;
typedef struct qclass_string qclass_string;

/* nA, nC < 0 means balanced (both equal n). */
typedef struct qclass_machine_params {
  int n;
  int nA;
  int nC;
  double r;
  double tol;
  int max_iterations;
} qclass_machine_params;

typedef struct qclass_sweep_config {
  int n_min;
  int n_max;
  double r_min;
  double r_max;
  int steps;
  double tol;
  int max_iterations;
  int threads; /* 0: hardware concurrency */
} qclass_sweep_config;

typedef struct qclass_sweep_row {
  int n;
  double r;
  double r_lm;
  double r_opt;
  double rel_gap;
  double solver_gap;
  int failed;
} qclass_sweep_row;

QCLASS_API const char* qclass_version(void);
QCLASS_API const char* qclass_last_error(void);
QCLASS_API const char* qclass_status_name(qclass_status status);

QCLASS_API void qclass_machine_params_default(qclass_machine_params* params);
QCLASS_API qclass_status qclass_machine_eval(qclass_machine machine, const qclass_machine_params* params,
                                             qclass_report** out);
QCLASS_API double qclass_report_error(const qclass_report* report);
QCLASS_API double qclass_report_excess(const qclass_report* report);
QCLASS_API qclass_status qclass_report_json(const qclass_report* report, qclass_string** out);
QCLASS_API void qclass_report_free(qclass_report* report);

QCLASS_API void qclass_sweep_config_default(qclass_sweep_config* config);
QCLASS_API qclass_status qclass_sweep_run(const qclass_sweep_config* config, qclass_sweep** out);
QCLASS_API size_t qclass_sweep_size(const qclass_sweep* sweep);
QCLASS_API qclass_status qclass_sweep_get(const qclass_sweep* sweep, size_t index, qclass_sweep_row* row);
QCLASS_API qclass_status qclass_sweep_write_csv(const qclass_sweep* sweep, const char* path);
QCLASS_API void qclass_sweep_free(qclass_sweep* sweep);

/* suite: su2, blocks, machines, mixed, oracle or all. */
QCLASS_API qclass_status qclass_verify_run(const char* suite, uint64_t seed, double tol, int threads,
                                           qclass_verify** out);
QCLASS_API int qclass_verify_passed(const qclass_verify* report);
QCLASS_API size_t qclass_verify_size(const qclass_verify* report);
QCLASS_API qclass_status qclass_verify_json(const qclass_verify* report, qclass_string** out);
QCLASS_API void qclass_verify_free(qclass_verify* report);

/* Angular momenta are passed doubled (2j, 2m). */
QCLASS_API qclass_status qclass_su2_cg(int j1, int m1, int j2, int m2, int J, int M, double* out);
QCLASS_API qclass_status qclass_su2_6j(int j1, int j2, int j3, int j4, int j5, int j6, double* out);
QCLASS_API qclass_status qclass_su2_multiplicity(int n, int j, int64_t* out);

QCLASS_API qclass_status qclass_dump_sigma_diff(int jA, int jC, double r, qclass_string** out);
QCLASS_API qclass_status qclass_dump_gamma(int jA, int jC, double r, qclass_string** out);
QCLASS_API qclass_status qclass_dump_seed(int n, double r, double tol, int max_iterations, qclass_string** out);

/* Re-serializes a JSON document with 17 significant digits. */
QCLASS_API qclass_status qclass_json_format(const char* json, qclass_string** out);

QCLASS_API const char* qclass_string_data(const qclass_string* s);
QCLASS_API void qclass_string_free(qclass_string* s);

#ifdef __cplusplus
}
#endif

#endif

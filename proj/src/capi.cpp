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

#include "qclass/qclass.h"

#include <exception>
#include <fstream>
#include <new>
#include <string>

#include "qclass/errors.hpp"
#include "qclass/json_io.hpp"
#include "qclass/machines.hpp"
#include "qclass/mixed.hpp"
#include "qclass/su2.hpp"
#include "qclass/verify.hpp"

struct qclass_report {
  qclass::MachineReport value;
};
struct qclass_sweep {
  qclass::SweepTable value;
};
struct qclass_verify {
  std::vector<qclass::verify::Check> checks;
};
struct qclass_string {
  std::string value;
};

namespace {

thread_local std::string last_error;

template <class F>
qclass_status guarded(F&& f) {
  last_error.clear();
  try {
    return f();
  } catch (const qclass::InfeasibleError& e) {
    last_error = e.what();
    return QCLASS_ERR_INFEASIBLE;
  } catch (const qclass::DomainError& e) {
    last_error = e.what();
    return QCLASS_ERR_DOMAIN;
  } catch (const qclass::IntegrityError& e) {
    last_error = e.what();
    return QCLASS_ERR_INTEGRITY;
  } catch (const qclass::SolverError& e) {
    last_error = e.what();
    return QCLASS_ERR_SOLVER;
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return QCLASS_ERR_INTERNAL;
  } catch (const std::exception& e) {
    last_error = e.what();
    return QCLASS_ERR_INTERNAL;
  } catch (...) {
    last_error = "unknown error";
    return QCLASS_ERR_INTERNAL;
  }
}

qclass_status usage(const char* msg) {
  last_error = msg;
  return QCLASS_ERR_USAGE;
}

qclass::HalfInteger h(int twice) { return qclass::HalfInteger::from_twice(twice); }

qclass::MachineReport eval(qclass_machine machine, const qclass_machine_params& p) {
  using namespace qclass;
  const bool unbalanced = p.nA >= 0 || p.nC >= 0;
  if (unbalanced && (p.nA < 0 || p.nC < 0)) throw DomainError("nA and nC must be given together");
  if (!(p.r > 0.0 && p.r <= 1.0)) throw DomainError("r must lie in (0, 1]");
  const bool pure = p.r == 1.0;
  const sdp::SolverOptions so{p.tol, p.max_iterations};

  switch (machine) {
    case QCLASS_MACHINE_OPT: {
      if (unbalanced) {
        if (!pure) throw DomainError("unbalanced programmable machine is available for pure states only");
        auto rep = make_report(MachineId::opt, std::max(p.nA, p.nC), 1.0, programmable_error_unbalanced(p.nA, p.nC),
                               Method::closed_form);
        rep.nA = p.nA;
        rep.nC = p.nC;
        return rep;
      }
      if (pure) return make_report(MachineId::opt, p.n, 1.0, programmable_error_pure(p.n), Method::closed_form);
      return mixed_programmable_risk(p.n, p.r);
    }
    case QCLASS_MACHINE_LM: {
      if (unbalanced) throw DomainError("the learning machine takes a single n");
      if (pure) {
        auto rep = make_report(MachineId::lm, p.n, 1.0, lm_error(p.n), Method::closed_form);
        rep.delta = lm_delta(p.n);
        return rep;
      }
      return mixed_lm_risk(p.n, p.r, so);
    }
    case QCLASS_MACHINE_ED: {
      if (unbalanced || !pure) throw DomainError("estimate-and-discriminate is available for balanced pure states only");
      auto rep = make_report(MachineId::ed_continuous, p.n, 1.0, ed_error_continuous(p.n), Method::closed_form);
      rep.delta = ed_delta_continuous(p.n);
      return rep;
    }
    case QCLASS_MACHINE_ED_N1: {
      if (unbalanced || !pure || p.n != 1) throw DomainError("the optimal finite E&D machine is tabulated for n = 1, r = 1");
      auto rep = make_report(MachineId::ed_n1, 1, 1.0, ed_error_n1_optimal(), Method::closed_form);
      rep.delta = ed_delta_n1_optimal();
      return rep;
    }
    case QCLASS_MACHINE_REVERSED: {
      if (unbalanced || !pure) throw DomainError("the reversed machine is available for balanced pure states only");
      return make_report(MachineId::reversed, p.n, 1.0, reversed_lm_error(p.n), Method::closed_form);
    }
  }
  throw DomainError("unknown machine");
}

qclass_status emit(const qclass::json_io::Json& j, qclass_string** out) {
  *out = new qclass_string{qclass::json_io::dump(j)};
  return QCLASS_OK;
}

}  // namespace

extern "C" {

const char* qclass_version(void) { return QCLASS_VERSION; }

const char* qclass_last_error(void) { return last_error.c_str(); }

const char* qclass_status_name(qclass_status status) {
  switch (status) {
    case QCLASS_OK: return "ok";
    case QCLASS_ERR_DOMAIN: return "domain";
    case QCLASS_ERR_USAGE: return "usage";
    case QCLASS_ERR_VERIFY: return "verify";
    case QCLASS_ERR_INTEGRITY: return "integrity";
    case QCLASS_ERR_SOLVER: return "solver";
    case QCLASS_ERR_INFEASIBLE: return "infeasible";
    case QCLASS_ERR_IO: return "io";
    case QCLASS_ERR_INTERNAL: return "internal";
  }
  return "unknown";
}

void qclass_machine_params_default(qclass_machine_params* params) {
  if (!params) return;
  *params = {1, -1, -1, 1.0, 1e-8, 500};
}

qclass_status qclass_machine_eval(qclass_machine machine, const qclass_machine_params* params, qclass_report** out) {
  if (!params || !out) return usage("null argument");
  *out = nullptr;
  return guarded([&] {
    *out = new qclass_report{eval(machine, *params)};
    return QCLASS_OK;
  });
}

double qclass_report_error(const qclass_report* report) { return report ? report->value.error_probability : 0.0; }

double qclass_report_excess(const qclass_report* report) { return report ? report->value.excess_risk : 0.0; }

qclass_status qclass_report_json(const qclass_report* report, qclass_string** out) {
  if (!report || !out) return usage("null argument");
  return guarded([&] { return emit(qclass::json_io::to_json(report->value), out); });
}

void qclass_report_free(qclass_report* report) { delete report; }

void qclass_sweep_config_default(qclass_sweep_config* config) {
  if (!config) return;
  const qclass::SweepConfig d;
  *config = {d.n_min, d.n_max, d.r_min, d.r_max, d.steps, d.solver.tol, d.solver.max_iterations, d.threads};
}

qclass_status qclass_sweep_run(const qclass_sweep_config* config, qclass_sweep** out) {
  if (!config || !out) return usage("null argument");
  *out = nullptr;
  return guarded([&] {
    qclass::SweepConfig c;
    c.n_min = config->n_min;
    c.n_max = config->n_max;
    c.r_min = config->r_min;
    c.r_max = config->r_max;
    c.steps = config->steps;
    c.solver.tol = config->tol;
    c.solver.max_iterations = config->max_iterations;
    c.threads = config->threads;
    *out = new qclass_sweep{qclass::run_sweep(c)};
    return QCLASS_OK;
  });
}

size_t qclass_sweep_size(const qclass_sweep* sweep) { return sweep ? sweep->value.rows.size() : 0; }

qclass_status qclass_sweep_get(const qclass_sweep* sweep, size_t index, qclass_sweep_row* row) {
  if (!sweep || !row) return usage("null argument");
  if (index >= sweep->value.rows.size()) return usage("row index out of range");
  const auto& s = sweep->value.rows[index];
  *row = {s.n, s.r, s.R_lm, s.R_opt, s.rel_gap, s.solver_gap, s.error ? 1 : 0};
  return QCLASS_OK;
}

qclass_status qclass_sweep_write_csv(const qclass_sweep* sweep, const char* path) {
  if (!sweep || !path) return usage("null argument");
  return guarded([&] {
    std::ofstream f(path);
    if (!f) {
      last_error = std::string("cannot open ") + path;
      return QCLASS_ERR_IO;
    }
    qclass::write_csv(sweep->value, f);
    f.flush();
    if (!f) {
      last_error = std::string("write failed: ") + path;
      return QCLASS_ERR_IO;
    }
    return QCLASS_OK;
  });
}

void qclass_sweep_free(qclass_sweep* sweep) { delete sweep; }

qclass_status qclass_verify_run(const char* suite, uint64_t seed, double tol, int threads, qclass_verify** out) {
  if (!suite || !out) return usage("null argument");
  *out = nullptr;
  return guarded([&] {
    qclass::verify::Suite s;
    try {
      s = qclass::verify::parse_suite(suite);
    } catch (const qclass::DomainError& e) {
      return usage(e.what());
    }
    qclass::verify::Options o;
    o.seed = seed;
    o.tol = tol;
    o.threads = threads;
    *out = new qclass_verify{qclass::verify::run(s, o)};
    return QCLASS_OK;
  });
}

int qclass_verify_passed(const qclass_verify* report) {
  return report && qclass::verify::all_pass(report->checks) ? 1 : 0;
}

size_t qclass_verify_size(const qclass_verify* report) { return report ? report->checks.size() : 0; }

qclass_status qclass_verify_json(const qclass_verify* report, qclass_string** out) {
  if (!report || !out) return usage("null argument");
  return guarded([&] { return emit(qclass::verify::to_json(report->checks), out); });
}

void qclass_verify_free(qclass_verify* report) { delete report; }

qclass_status qclass_su2_cg(int j1, int m1, int j2, int m2, int J, int M, double* out) {
  if (!out) return usage("null argument");
  return guarded([&] {
    *out = qclass::su2::clebsch_gordan(h(j1), h(m1), h(j2), h(m2), h(J), h(M));
    return QCLASS_OK;
  });
}

qclass_status qclass_su2_6j(int j1, int j2, int j3, int j4, int j5, int j6, double* out) {
  if (!out) return usage("null argument");
  return guarded([&] {
    *out = qclass::su2::wigner_6j(h(j1), h(j2), h(j3), h(j4), h(j5), h(j6));
    return QCLASS_OK;
  });
}

qclass_status qclass_su2_multiplicity(int n, int j, int64_t* out) {
  if (!out) return usage("null argument");
  return guarded([&] {
    *out = qclass::su2::multiplicity(n, h(j));
    return QCLASS_OK;
  });
}

qclass_status qclass_dump_sigma_diff(int jA, int jC, double r, qclass_string** out) {
  if (!out) return usage("null argument");
  return guarded([&] { return emit(qclass::json_io::to_json(qclass::average_state_diff_mixed({h(jA), h(jC)}, r)), out); });
}

qclass_status qclass_dump_gamma(int jA, int jC, double r, qclass_string** out) {
  if (!out) return usage("null argument");
  return guarded([&] { return emit(qclass::json_io::to_json(qclass::gamma_up_mixed({h(jA), h(jC)}, r)), out); });
}

qclass_status qclass_dump_seed(int n, double r, double tol, int max_iterations, qclass_string** out) {
  if (!out) return usage("null argument");
  return guarded([&] {
    const auto sol = qclass::solve_mixed_lm(n, r, {tol, max_iterations});
    return emit(qclass::json_io::to_json(sol.problem, sol.seed), out);
  });
}

qclass_status qclass_json_format(const char* json, qclass_string** out) {
  if (!json || !out) return usage("null argument");
  return guarded([&] {
    auto j = qclass::json_io::Json::parse(json, nullptr, false);
    if (j.is_discarded()) return usage("malformed JSON");
    return emit(j, out);
  });
}

const char* qclass_string_data(const qclass_string* s) { return s ? s->value.c_str() : ""; }

void qclass_string_free(qclass_string* s) { delete s; }

}  // extern "C"

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

#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "qclass/qclass.h"

namespace {

using Json = nlohmann::ordered_json;

enum Exit { kOk = 0, kDomain = 1, kUsage = 2, kVerify = 3 };

int exit_for(qclass_status s) {
  switch (s) {
    case QCLASS_OK: return kOk;
    case QCLASS_ERR_USAGE: return kUsage;
    case QCLASS_ERR_VERIFY: return kVerify;
    default: return kDomain;
  }
}

int fail(qclass_status s) {
  std::cerr << "qclass: " << qclass_status_name(s) << " error: " << qclass_last_error() << "\n";
  return exit_for(s);
}

// Owns a qclass_string.
struct Text {
  qclass_string* s = nullptr;
  ~Text() { qclass_string_free(s); }
  std::string str() const { return qclass_string_data(s); }
};

std::string format(const Json& j) {
  Text t;
  if (qclass_json_format(j.dump().c_str(), &t.s) != QCLASS_OK) return j.dump(2);
  return t.str();
}

std::string fmt17(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::optional<std::string> env(const char* name) {
  const char* v = std::getenv(name);
  if (!v || !*v) return std::nullopt;
  return std::string(v);
}

// flags > QCLASS_* environment > defaults
template <class T>
void apply_env(T& value, const CLI::Option* flag, const char* name) {
  if (flag->count() > 0) return;
  if (auto v = env(name)) {
    try {
      if constexpr (std::is_same_v<T, double>)
        value = std::stod(*v);
      else if constexpr (std::is_same_v<T, int>)
        value = std::stoi(*v);
      else
        value = static_cast<T>(std::stoull(*v));
    } catch (const std::exception&) {
      throw CLI::ValidationError(name, "cannot parse '" + *v + "'");
    }
  }
}

std::string timestamp() {
  std::time_t t = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

Json manifest(const std::vector<std::string>& argv, Json config, std::optional<std::uint64_t> seed, Json tolerances) {
  Json m;
  m["command_line"] = argv;
  m["config"] = std::move(config);
  m["version"] = qclass_version();
  m["rng_seed"] = seed ? Json(*seed) : Json(nullptr);
  m["timestamp"] = timestamp();
  m["tolerances"] = std::move(tolerances);
  return m;
}

std::string sidecar_path(const std::string& out) {
  std::filesystem::path p(out);
  p.replace_extension();
  return p.string() + ".manifest.json";
}

bool write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path);
  if (!f) return false;
  f << text << "\n";
  f.flush();
  return static_cast<bool>(f);
}

int write_or_print(const std::string& out, const std::string& text) {
  if (out.empty()) {
    std::cout << text << "\n";
    return kOk;
  }
  if (!write_file(out, text)) {
    std::cerr << "qclass: io error: cannot write " << out << "\n";
    return kDomain;
  }
  return kOk;
}

// "3/2", "1.5" and "3" are all accepted; returns 2j.
int parse_twice(const std::string& s) {
  const auto slash = s.find('/');
  if (slash != std::string::npos) {
    if (s.substr(slash + 1) != "2") throw CLI::ValidationError("angular momentum", "denominator must be 2: " + s);
    return std::stoi(s.substr(0, slash));
  }
  const double v = std::stod(s);
  const double t = 2.0 * v;
  if (t != static_cast<double>(static_cast<long>(t)))
    throw CLI::ValidationError("angular momentum", "not a multiple of 1/2: " + s);
  return static_cast<int>(t);
}

struct MachineArgs {
  std::string kind;
  int n = -1;
  double r = 1.0;
  int nA = -1, nC = -1;
  bool json = false;
  bool n1_optimal = false;
  double tol = 1e-8;
  int max_iterations = 500;
};

int cmd_machine(const MachineArgs& a) {
  qclass_machine m = QCLASS_MACHINE_OPT;
  if (a.kind == "lm") m = QCLASS_MACHINE_LM;
  if (a.kind == "ed") m = a.n1_optimal ? QCLASS_MACHINE_ED_N1 : QCLASS_MACHINE_ED;
  if (a.kind == "reversed") m = QCLASS_MACHINE_REVERSED;
  if (a.n1_optimal && a.kind != "ed") {
    std::cerr << "qclass: --n1-optimal applies to 'ed' only\n";
    return kUsage;
  }
  if (a.n < 0 && (a.nA < 0 || a.nC < 0)) {
    std::cerr << "qclass: machine needs --n or both --nA and --nC\n";
    return kUsage;
  }
  qclass_machine_params p;
  qclass_machine_params_default(&p);
  p.n = a.n >= 0 ? a.n : std::max(a.nA, a.nC);
  p.nA = a.nA;
  p.nC = a.nC;
  p.r = a.r;
  p.tol = a.tol;
  p.max_iterations = a.max_iterations;

  qclass_report* rep = nullptr;
  if (auto s = qclass_machine_eval(m, &p, &rep); s != QCLASS_OK) return fail(s);
  if (a.json) {
    Text t;
    const auto s = qclass_report_json(rep, &t.s);
    qclass_report_free(rep);
    if (s != QCLASS_OK) return fail(s);
    std::cout << t.str() << "\n";
    return kOk;
  }
  std::cout << "machine " << a.kind << (a.n1_optimal ? " (n=1 optimal)" : "") << "\n"
            << "error_probability " << fmt17(qclass_report_error(rep)) << "\n"
            << "excess_risk       " << fmt17(qclass_report_excess(rep)) << "\n";
  qclass_report_free(rep);
  return kOk;
}

struct SweepArgs {
  std::string name = "fig1";
  int n_min = 1, n_max = 5;
  double r_min = 0.1, r_max = 1.0;
  int steps = 46;
  std::string out = "fig1.csv";
  double tol = 1e-8;
  int max_iterations = 500;
  int threads = 0;
};

int cmd_sweep(const SweepArgs& a, const std::vector<std::string>& argv) {
  qclass_sweep_config c;
  qclass_sweep_config_default(&c);
  c.n_min = a.n_min;
  c.n_max = a.n_max;
  c.r_min = a.r_min;
  c.r_max = a.r_max;
  c.steps = a.steps;
  c.tol = a.tol;
  c.max_iterations = a.max_iterations;
  c.threads = a.threads;

  qclass_sweep* sw = nullptr;
  if (auto s = qclass_sweep_run(&c, &sw); s != QCLASS_OK) return fail(s);
  const auto s = qclass_sweep_write_csv(sw, a.out.c_str());
  size_t failed = 0;
  for (size_t i = 0; i < qclass_sweep_size(sw); ++i) {
    qclass_sweep_row row;
    if (qclass_sweep_get(sw, i, &row) == QCLASS_OK && row.failed) ++failed;
  }
  const size_t rows = qclass_sweep_size(sw);
  qclass_sweep_free(sw);
  if (s != QCLASS_OK) return fail(s);

  Json config{{"sweep", a.name}, {"n_min", a.n_min},   {"n_max", a.n_max},
              {"r_min", a.r_min}, {"r_max", a.r_max},   {"steps", a.steps},
              {"threads", a.threads}, {"output", a.out}, {"rows", rows}, {"failed_rows", failed}};
  Json tol{{"sdp_tol", a.tol}, {"sdp_max_iterations", a.max_iterations}};
  const auto side = sidecar_path(a.out);
  if (!write_file(side, format(manifest(argv, config, std::nullopt, tol)))) {
    std::cerr << "qclass: io error: cannot write " << side << "\n";
    return kDomain;
  }
  std::cerr << "wrote " << rows << " rows to " << a.out << " (manifest " << side << ")\n";
  return kOk;
}

struct VerifyArgs {
  std::string suite = "all";
  std::uint64_t seed = 1;
  double tol = 1e-8;
  int threads = 0;
  std::string out;
};

int cmd_verify(const VerifyArgs& a, const std::vector<std::string>& argv) {
  qclass_verify* v = nullptr;
  if (auto s = qclass_verify_run(a.suite.c_str(), a.seed, a.tol, a.threads, &v); s != QCLASS_OK) return fail(s);
  Text checks;
  const auto s = qclass_verify_json(v, &checks.s);
  const bool pass = qclass_verify_passed(v) != 0;
  qclass_verify_free(v);
  if (s != QCLASS_OK) return fail(s);

  // No timestamp here, so equal seeds give byte-identical reports.
  Json report;
  report["suite"] = a.suite;
  report["seed"] = a.seed;
  report["tol"] = a.tol;
  report["version"] = qclass_version();
  report["pass"] = pass;
  if (!a.out.empty()) report["manifest"] = std::filesystem::path(sidecar_path(a.out)).filename().string();
  report["checks"] = Json::parse(checks.str());
  const std::string text = format(report);

  if (int rc = write_or_print(a.out, text); rc != kOk) return rc;
  if (!a.out.empty()) {
    Json config{{"suite", a.suite}, {"threads", a.threads}, {"output", a.out}};
    Json tolerances = Json::object();
    for (const auto& c : report["checks"]) tolerances[c["id"].get<std::string>()] = c["tolerance"];
    tolerances["sdp_tol"] = a.tol;
    if (!write_file(sidecar_path(a.out), format(manifest(argv, config, a.seed, tolerances)))) {
      std::cerr << "qclass: io error: cannot write " << sidecar_path(a.out) << "\n";
      return kDomain;
    }
  }
  for (const auto& c : report["checks"])
    if (!c["pass"].get<bool>()) std::cerr << "FAIL " << c["id"].get<std::string>() << "\n";
  return pass ? kOk : kVerify;
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv, argv + argc);
  CLI::App app{"qclass: quantum learning machine for qubit classification"};
  app.set_version_flag("--version", std::string(qclass_version()));
  app.require_subcommand(1);

  MachineArgs ma;
  auto* machine = app.add_subcommand("machine", "error probability and excess risk of one machine");
  machine->add_option("kind", ma.kind, "opt, lm, ed or reversed")
      ->required()
      ->check(CLI::IsMember({"opt", "lm", "ed", "reversed"}));
  machine->add_option("--n", ma.n, "training copies per class")->check(CLI::NonNegativeNumber);
  machine->add_option("--r", ma.r, "Bloch radius (purity) in (0, 1]");
  machine->add_option("--nA", ma.nA, "copies of class 0 (unbalanced)")->check(CLI::NonNegativeNumber);
  machine->add_option("--nC", ma.nC, "copies of class 1 (unbalanced)")->check(CLI::NonNegativeNumber);
  machine->add_flag("--json", ma.json, "print the report as JSON");
  machine->add_flag("--n1-optimal", ma.n1_optimal, "ed: optimal finite measurement at n = 1");
  auto* m_tol = machine->add_option("--tol", ma.tol, "SDP tolerance (r < 1)");
  machine->add_option("--max-iterations", ma.max_iterations, "SDP iteration cap")->check(CLI::PositiveNumber);

  SweepArgs sa;
  auto* sweep = app.add_subcommand("sweep", "parameter sweep written as CSV");
  sweep->add_option("name", sa.name, "sweep name")->required()->check(CLI::IsMember({"fig1"}));
  sweep->add_option("--n-min", sa.n_min)->check(CLI::PositiveNumber);
  sweep->add_option("--n-max", sa.n_max)->check(CLI::PositiveNumber);
  sweep->add_option("--r-min", sa.r_min);
  sweep->add_option("--r-max", sa.r_max);
  sweep->add_option("--steps", sa.steps)->check(CLI::PositiveNumber);
  sweep->add_option("--out", sa.out, "CSV path; the manifest goes next to it");
  auto* s_tol = sweep->add_option("--tol", sa.tol);
  sweep->add_option("--max-iterations", sa.max_iterations)->check(CLI::PositiveNumber);
  auto* s_threads = sweep->add_option("--threads", sa.threads)->check(CLI::NonNegativeNumber);

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "run invariant and oracle checks");
  verify->add_option("--suite", va.suite)->check(CLI::IsMember({"su2", "blocks", "machines", "mixed", "oracle", "all"}));
  auto* v_seed = verify->add_option("--seed", va.seed);
  auto* v_tol = verify->add_option("--tol", va.tol);
  auto* v_threads = verify->add_option("--threads", va.threads)->check(CLI::NonNegativeNumber);
  verify->add_option("--out", va.out, "write the JSON report here (plus manifest)");

  auto* su2 = app.add_subcommand("su2", "angular momentum coefficients (j, m as 3/2, 1.5 or 1)");
  su2->require_subcommand(1);
  std::vector<std::string> cg_args, sixj_args;
  int mult_n = 0;
  std::string mult_j;
  auto* cg = su2->add_subcommand("cg", "<j1 m1 j2 m2 | J M>");
  cg->add_option("values", cg_args)->required()->expected(6);
  auto* sixj = su2->add_subcommand("6j", "{j1 j2 j3; j4 j5 j6}");
  sixj->add_option("values", sixj_args)->required()->expected(6);
  auto* mult = su2->add_subcommand("multiplicity", "multiplicity of spin j in n qubits");
  mult->add_option("n", mult_n)->required()->check(CLI::NonNegativeNumber);
  mult->add_option("j", mult_j)->required();

  auto* dump = app.add_subcommand("dump", "JSON debug dumps");
  dump->require_subcommand(1);
  std::string jA = "1/2", jC = "1/2", dump_out;
  double dump_r = 1.0, dump_tol = 1e-8;
  int dump_n = 1, dump_iter = 500;
  auto* d_sigma = dump->add_subcommand("sigma-diff", "sigma_0,xi - sigma_1,xi for one block");
  auto* d_gamma = dump->add_subcommand("gamma", "Gamma_up,xi for one block");
  for (auto* d : {d_sigma, d_gamma}) {
    d->add_option("--jA", jA)->required();
    d->add_option("--jC", jC)->required();
    d->add_option("--r", dump_r);
    d->add_option("--out", dump_out);
  }
  auto* d_seed = dump->add_subcommand("seed", "solved block SDP seed");
  d_seed->add_option("--n", dump_n)->required()->check(CLI::PositiveNumber);
  d_seed->add_option("--r", dump_r);
  auto* d_tol = d_seed->add_option("--tol", dump_tol);
  d_seed->add_option("--max-iterations", dump_iter)->check(CLI::PositiveNumber);
  d_seed->add_option("--out", dump_out);

  try {
    app.parse(argc, argv);
    apply_env(ma.tol, m_tol, "QCLASS_TOL");
    apply_env(sa.tol, s_tol, "QCLASS_TOL");
    apply_env(sa.threads, s_threads, "QCLASS_THREADS");
    apply_env(va.seed, v_seed, "QCLASS_SEED");
    apply_env(va.tol, v_tol, "QCLASS_TOL");
    apply_env(va.threads, v_threads, "QCLASS_THREADS");
    apply_env(dump_tol, d_tol, "QCLASS_TOL");
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (*machine) return cmd_machine(ma);
    if (*sweep) return cmd_sweep(sa, args);
    if (*verify) return cmd_verify(va, args);
    if (*su2) {
      if (*mult) {
        std::int64_t v = 0;
        if (auto s = qclass_su2_multiplicity(mult_n, parse_twice(mult_j), &v); s != QCLASS_OK) return fail(s);
        std::cout << v << "\n";
        return kOk;
      }
      const auto& raw = *cg ? cg_args : sixj_args;
      int t[6];
      for (int i = 0; i < 6; ++i) t[i] = parse_twice(raw[i]);
      double v = 0.0;
      const auto s = *cg ? qclass_su2_cg(t[0], t[1], t[2], t[3], t[4], t[5], &v)
                         : qclass_su2_6j(t[0], t[1], t[2], t[3], t[4], t[5], &v);
      if (s != QCLASS_OK) return fail(s);
      std::cout << fmt17(v) << "\n";
      return kOk;
    }
    if (*dump) {
      Text t;
      qclass_status s;
      if (*d_seed)
        s = qclass_dump_seed(dump_n, dump_r, dump_tol, dump_iter, &t.s);
      else if (*d_sigma)
        s = qclass_dump_sigma_diff(parse_twice(jA), parse_twice(jC), dump_r, &t.s);
      else
        s = qclass_dump_gamma(parse_twice(jA), parse_twice(jC), dump_r, &t.s);
      if (s != QCLASS_OK) return fail(s);
      return write_or_print(dump_out, t.str());
    }
  } catch (const CLI::ValidationError& e) {
    std::cerr << "qclass: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "qclass: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}

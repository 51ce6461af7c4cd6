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

#include "qclass/json_io.hpp"

#include <cmath>
#include <cstdio>
#include <map>

namespace qclass::json_io {

namespace {

void write(const Json& j, int indent, int depth, std::string& out) {
  auto newline = [&](int d) {
    if (indent < 0) return;
    out += '\n';
    out.append(static_cast<std::size_t>(indent * d), ' ');
  };
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += '{';
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ',';
        first = false;
        newline(depth + 1);
        out += Json(it.key()).dump();
        out += indent < 0 ? ":" : ": ";
        write(it.value(), indent, depth + 1, out);
      }
      newline(depth);
      out += '}';
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      out += '[';
      bool first = true;
      for (const auto& v : j) {
        if (!first) out += ',';
        first = false;
        newline(depth + 1);
        write(v, indent, depth + 1, out);
      }
      newline(depth);
      out += ']';
      return;
    }
    case Json::value_t::number_float: {
      const double v = j.get<double>();
      if (!std::isfinite(v)) {
        out += "null";
        return;
      }
      char buf[64];
      std::snprintf(buf, sizeof buf, "%.17g", v);
      out += buf;
      // Keep floats recognisable as floats.
      if (std::string_view(buf).find_first_of(".eEn") == std::string_view::npos) out += ".0";
      return;
    }
    default:
      out += j.dump();
  }
}

Json matrix_rows(const Eigen::MatrixXd& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(m(i, k));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json label_json(const BlockLabel& l) { return Json{{"jA", l.jA.str()}, {"jC", l.jC.str()}}; }

}  // namespace

std::string dump(const Json& j, int indent) {
  std::string out;
  write(j, indent, 0, out);
  return out;
}

Json to_json(const MachineReport& report) {
  Json j;
  j["machine"] = to_string(report.machine);
  j["n"] = report.n;
  if (report.nA) j["nA"] = *report.nA;
  if (report.nC) j["nC"] = *report.nC;
  j["r"] = report.r;
  j["error_probability"] = report.error_probability;
  j["excess_risk"] = report.excess_risk;
  j["method"] = to_string(report.method);
  if (report.delta) j["delta"] = *report.delta;
  if (report.solver_gap) j["solver_gap"] = *report.solver_gap;
  return j;
}

Json to_json(const BlockOperator& op) {
  Json j;
  j["label"] = label_json(op.label());
  j["kind"] = op.kind() == BlockKind::two_system ? "two_system" : "three_system";
  j["basis_order"] = op.kind() == BlockKind::two_system ? "(AC)" : "(AC)B";
  Json sectors = Json::array();
  for (const auto& [tM, sec] : op.sectors()) {
    Json s;
    s["M"] = HalfInteger::from_twice(tM).str();
    Json basis = Json::array();
    for (const auto& b : sec.basis) {
      if (op.kind() == BlockKind::two_system)
        basis.push_back(Json{{"j", b.total.str()}});
      else
        basis.push_back(Json{{"j_AC", b.intermediate.str()}, {"J", b.total.str()}});
    }
    s["basis"] = std::move(basis);
    s["matrix"] = matrix_rows(sec.matrix);
    sectors.push_back(std::move(s));
  }
  j["sectors"] = std::move(sectors);
  return j;
}

Json to_json(const sdp::BlockSdpProblem& problem, const sdp::Seed& seed) {
  Json j;
  j["objective"] = seed.objective;
  j["dual_bound"] = seed.dual_bound;
  j["gap"] = seed.gap;
  j["iterations"] = seed.iterations;
  Json blocks = Json::array();
  for (const auto& blk : seed.blocks) {
    Json b;
    b["xi"] = label_json(blk.key.xi);
    b["m"] = HalfInteger::from_twice(blk.key.twice_m).str();
    Json js = Json::array();
    for (HalfInteger x : blk.js) js.push_back(x.str());
    b["rows"] = std::move(js);
    b["matrix"] = matrix_rows(blk.omega);
    Json ev = Json::array();
    if (blk.omega.size() > 0) {
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (blk.omega + blk.omega.transpose()),
                                                        Eigen::EigenvaluesOnly);
      for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) ev.push_back(es.eigenvalues()(i));
    }
    b["eigenvalues"] = std::move(ev);
    blocks.push_back(std::move(b));
  }
  j["blocks"] = std::move(blocks);

  std::map<std::pair<BlockLabel, int>, double> sums;
  for (const auto& blk : seed.blocks)
    for (std::size_t a = 0; a < blk.js.size(); ++a)
      sums[{blk.key.xi, blk.js[a].twice()}] += blk.omega(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(a));
  Json res = Json::array();
  for (const auto& c : problem.constraints) {
    res.push_back(Json{{"xi", label_json(c.xi)},
                       {"j", c.j.str()},
                       {"target", c.target},
                       {"residual", sums[{c.xi, c.j.twice()}] - c.target}});
  }
  j["constraint_residuals"] = std::move(res);
  return j;
}

}  // namespace qclass::json_io

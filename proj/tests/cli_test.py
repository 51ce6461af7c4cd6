# Copyright 2026 The qclass Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""End-to-end checks of the qclass command line: outputs, exit codes, schemas."""

import csv
import json
import os
import subprocess
import sys
from pathlib import Path

import jsonschema

CLI, SCHEMAS, WORK = str(Path(sys.argv[1]).resolve()), Path(sys.argv[2]), Path(sys.argv[3])
WORK.mkdir(parents=True, exist_ok=True)
failures = []


def run(*args, env=None):
    e = {k: v for k, v in os.environ.items() if not k.startswith("QCLASS_")}
    e.update(env or {})
    p = subprocess.run([CLI, *args], capture_output=True, text=True, env=e, cwd=WORK)
    return p.returncode, p.stdout, p.stderr


def check(name, ok, detail=""):
    print(("PASS " if ok else "FAIL ") + name + (f" ({detail})" if detail and not ok else ""))
    if not ok:
        failures.append(name)


def schema(name):
    return json.loads((SCHEMAS / name).read_text())


def valid(doc, name):
    try:
        jsonschema.validate(doc, schema(name))
        return True
    except jsonschema.ValidationError as e:
        print("   ", e.message)
        return False


rc, out, _ = run("machine", "lm", "--n", "1")
check("machine lm n=1 error", rc == 0 and "0.35566243270259357" in out, out)
check("machine lm n=1 excess", "0.18899576603592688" in out, out)

rc, out, _ = run("machine", "reversed", "--n", "1", "--json")
doc = json.loads(out)
check("machine reversed n=1", rc == 0 and abs(doc["error_probability"] - 11 / 24) < 1e-15, out)
check("machine report schema", valid(doc, "machine_report.schema.json"))

rc, out, _ = run("machine", "opt", "--nA", "3", "--nC", "1", "--json")
doc = json.loads(out)
check("machine opt unbalanced in (1/6, 1/2)", rc == 0 and 1 / 6 < doc["error_probability"] < 0.5, out)
check("unbalanced report schema", valid(doc, "machine_report.schema.json"))

rc, out, _ = run("machine", "lm", "--n", "2", "--r", "0.6", "--json")
doc = json.loads(out)
check("machine lm mixed uses sdp", rc == 0 and doc["method"] == "sdp" and "solver_gap" in doc, out)
check("mixed report schema", valid(doc, "machine_report.schema.json"))

rc, out, _ = run("machine", "ed", "--n", "1", "--n1-optimal")
check("machine ed n=1 optimal", rc == 0 and "0.38214886980224" in out, out)

check("bad subcommand exits 2", run("machine", "best", "--n", "1")[0] == 2)
check("missing flag value exits 2", run("machine", "lm", "--n")[0] == 2)
check("no arguments exits 2", run()[0] == 2)
check("domain error exits 1", run("machine", "lm", "--n", "1", "--r", "0")[0] == 1)
check("unbalanced mixed exits 1", run("machine", "opt", "--nA", "2", "--nC", "1", "--r", "0.5")[0] == 1)

rc, out, _ = run("su2", "cg", "1", "0", "1/2", "1/2", "3/2", "1/2")
check("su2 cg", rc == 0 and out.strip() == "0.81649658092772615", out)
rc, out, _ = run("su2", "6j", "1/2", "1/2", "1", "1/2", "1/2", "1")
check("su2 6j", rc == 0 and abs(float(out) - 1 / 6) < 1e-15, out)
rc, out, _ = run("su2", "multiplicity", "4", "1")
check("su2 multiplicity", rc == 0 and out.strip() == "3", out)
check("su2 parity error exits 1", run("su2", "multiplicity", "3", "1")[0] == 1)

rc, out, _ = run("verify", "--suite", "machines", "--out", "verify.json")
doc = json.loads((WORK / "verify.json").read_text())
ids = {c["id"]: c["pass"] for c in doc["checks"]}
check("verify machines exits 0", rc == 0)
check("verify machines has lm_equals_opt_n1_20 pass", ids.get("lm_equals_opt_n1_20") is True)
check("verify report schema", valid(doc, "verify_report.schema.json"))
man = json.loads((WORK / "verify.manifest.json").read_text())
check("verify manifest schema", valid(man, "manifest.schema.json"))
check("verify manifest seed", man["rng_seed"] == 1 and doc["manifest"] == "verify.manifest.json")

a = run("verify", "--suite", "oracle", "--seed", "7")
b = run("verify", "--suite", "oracle", "--seed", "7")
check("verify oracle byte-identical", a[1] == b[1] and a[0] == b[0] == 0)
c = run("verify", "--suite", "oracle", env={"QCLASS_SEED": "7"})
check("QCLASS_SEED applies", c[1] == a[1])
d = run("verify", "--suite", "oracle", "--seed", "9", env={"QCLASS_SEED": "7"})
check("flag beats environment", json.loads(d[1])["seed"] == 9)
check("malformed environment exits 2", run("verify", "--suite", "su2", env={"QCLASS_SEED": "x"})[0] == 2)

rc, out, _ = run("verify", "--suite", "mixed")
doc = json.loads(out)
ids = {c["id"]: c["pass"] for c in doc["checks"]}
check("verify mixed reports n2 gap check", "n2_worst_gap_le_0.5pct" in ids)
check("verify exit code follows report", rc == (0 if doc["pass"] else 3), f"rc={rc}")

rc, _, err = run("sweep", "fig1", "--out", "fig1.csv", "--threads", "1")
rows = list(csv.DictReader((WORK / "fig1.csv").open()))
check("sweep exits 0", rc == 0, err)
check("sweep has 5x46 rows", len(rows) == 230, str(len(rows)))
check("sweep dominance", all(float(r["rel_gap"]) >= -1e-7 for r in rows))
check("sweep n=1 coincidence", all(float(r["rel_gap"]) <= 1e-6 for r in rows if r["n"] == "1"))
pure = {1: 0.18899576603592688}
check("sweep r=1 n=1 pure value", any(r["n"] == "1" and float(r["r"]) == 1.0
                                     and abs(float(r["R_opt"]) - pure[1]) < 1e-12 for r in rows))
man = json.loads((WORK / "fig1.manifest.json").read_text())
check("sweep manifest schema", valid(man, "manifest.schema.json"))
check("sweep manifest tolerance", man["tolerances"]["sdp_tol"] == 1e-8)
rc, _, _ = run("sweep", "fig1", "--n-max", "1", "--steps", "2", "--tol", "1e-7", "--out", "small.csv",
               env={"QCLASS_TOL": "1e-6"})
man = json.loads((WORK / "small.manifest.json").read_text())
check("sweep flag tol beats environment", rc == 0 and man["tolerances"]["sdp_tol"] == 1e-7)
rc, _, _ = run("sweep", "fig1", "--n-max", "1", "--steps", "2", "--out", "env.csv", env={"QCLASS_TOL": "1e-6"})
man = json.loads((WORK / "env.manifest.json").read_text())
check("sweep environment tol", rc == 0 and man["tolerances"]["sdp_tol"] == 1e-6)
check("unwritable sweep path exits 1", run("sweep", "fig1", "--n-max", "1", "--steps", "2",
                                           "--out", "/nonexistent/dir/x.csv")[0] == 1)

rc, out, _ = run("dump", "sigma-diff", "--jA", "1/2", "--jC", "1", "--r", "0.5")
check("dump sigma-diff schema", rc == 0 and valid(json.loads(out), "block_dump.schema.json"))
rc, out, _ = run("dump", "gamma", "--jA", "1", "--jC", "1", "--r", "0.7")
check("dump gamma schema", rc == 0 and valid(json.loads(out), "block_dump.schema.json"))
rc, out, _ = run("dump", "seed", "--n", "2", "--r", "0.5")
doc = json.loads(out)
check("dump seed schema", rc == 0 and valid(doc, "seed_dump.schema.json"))
check("dump seed residuals", all(abs(c["residual"]) <= 1e-8 for c in doc["constraint_residuals"]))
check("dump bad label exits 1", run("dump", "gamma", "--jA", "-1", "--jC", "1")[0] == 1)

print(f"{len(failures)} failure(s)")
sys.exit(1 if failures else 0)

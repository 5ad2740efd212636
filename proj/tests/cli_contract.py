"""Exit codes, schema validity and determinism of the spinlab CLI.

usage: cli_contract.py <spinlab binary> <report.schema.json>
"""

import json
import os
import re
import subprocess
import sys
import tempfile

import jsonschema

BIN, SCHEMA_PATH = sys.argv[1], sys.argv[2]
with open(SCHEMA_PATH) as f:
    VALIDATOR = jsonschema.Draft202012Validator(json.load(f))

OMEGA = ["0", "0", "0", "1", "0", "0", "0", "0", "0", "1", "0", "0"]
I_OMEGA = ["0", "0", "-1", "0", "0", "0", "0", "0", "-1", "0", "0", "0"]
ASD_C = ["0", "0", "1", "0", "0", "0", "0", "0", "-1", "0", "0", "0"]
XI12 = ["1", "0"] + ["0"] * 10

failures = []


def run(args, env=None, expect=0):
    full_env = dict(os.environ)
    full_env.pop("SPINLAB_SEED", None)
    full_env.update(env or {})
    p = subprocess.run([BIN] + args, capture_output=True, text=True, env=full_env)
    if p.returncode != expect:
        failures.append(f"{args}: exit {p.returncode}, expected {expect}\n{p.stderr}")
    return p


def report(args, env=None, expect=0):
    p = run(["--json"] + args, env, expect)
    try:
        doc = json.loads(p.stdout)
    except json.JSONDecodeError:
        failures.append(f"{args}: stdout is not JSON: {p.stdout[:200]!r}")
        return None
    errors = sorted(VALIDATOR.iter_errors(doc), key=str)
    if errors:
        failures.append(f"{args}: schema violation: {errors[0].message}")
    return doc


def check(cond, msg):
    if not cond:
        failures.append(msg)


def strip_timestamp(text):
    return re.sub(r'"timestamp":\s*"[^"]*"', '"timestamp":""', text)


# decompose
doc = report(["decompose"] + OMEGA)
if doc:
    check(doc["payload"]["decomposition"]["trace"] == ["1", "0"], "omega trace")
    check(doc["payload"]["lambda"] == ["2", "0"], "omega Lambda")
    check(doc["payload"]["asd_part"] == [["0", "0"]] * 6, "omega ASD part")
doc = report(["decompose"] + ASD_C)
if doc:
    check(doc["payload"]["asd_coefficients"] == [["0", "0"], ["0", "0"], ["1", "0"]], "ASD basis (a,b,c)")
doc = report(["--mode", "float", "decompose", "0.3", "-1.5", "2", "0.25", "1e-3", "7", "-4", "0", "0.5", "0.5", "-2", "1"])
if doc:
    check(doc["payload"]["recompose_residual"] == 0.0, "float round trip")
run(["decompose", "1", "2"], expect=64)
run(["decompose", "a"] + ["0"] * 11, expect=64)

# action
doc = report(["action", "--block", "even"] + I_OMEGA)
if doc:
    check(doc["payload"]["matrix"] == [[["2", "0"], ["0", "0"]], [["0", "0"], ["-2", "0"]]], "i omega even block")
    check(doc["payload"]["verdict"] == "Indefinite", "i omega verdict")
doc = report(["action", "--block", "odd"] + ASD_C)
if doc:
    check(doc["payload"]["matrix"] == [[["2", "0"], ["0", "0"]], [["0", "0"], ["-2", "0"]]], "ASD odd block")
doc = report(["action"] + ["0"] * 12)
if doc:
    check(doc["payload"]["verdict"] == "Zero", "zero form verdict")
p = run(["action", "--block", "even"] + XI12, expect=64)
check("refused" in p.stderr, "even block refusal message")
run(["action", "--block", "diagonal"] + OMEGA, expect=64)

# verify
for suite in ["clifford", "decomp", "propositions", "theorem"]:
    doc = report(["verify", "--suite", suite, "--samples", "100"])
    if doc:
        check(doc["payload"]["passed"], f"{suite} passes")
        check(all(i["max_residual"] == 0.0 for i in doc["payload"]["invariants"] if i["tolerance"] == 0.0),
              f"{suite} exact residuals")
doc = report(["--mode", "float", "verify", "--suite", "theorem", "--samples", "1000"])
if doc:
    inv = {i["name"]: i for i in doc["payload"]["invariants"]}
    check(inv["main_theorem_indefinite"]["samples"] == 1000 and inv["main_theorem_indefinite"]["failures"] == 0,
          "theorem 1000/1000")
run(["verify", "--suite", "nope"], expect=64)
run(["verify", "--suite", "clifford", "--samples", "0"], expect=64)
run(["verify", "--suite", "clifford", "--mode", "double"], expect=64)
run(["verify"], expect=64)
run([], expect=64)

# torus
with tempfile.TemporaryDirectory() as tmp:
    csv_path = os.path.join(tmp, "e.csv")
    doc = report(["--csv", csv_path, "torus", "--N", "32", "--volume", "1", "--degree", "-1", "--eigs", "3"])
    if doc:
        pay = doc["payload"]
        check(abs(pay["eigenvalues"][0] - 2 * 3.141592653589793) / (2 * 3.141592653589793) < 0.05, "Landau level")
        check(abs(pay["sharp_bound"] - 2 * 3.141592653589793) < 1e-12, "sharp bound 2 pi")
    with open(csv_path) as f:
        lines = f.read().splitlines()
    check(lines[0] == "index,eigenvalue" and len(lines) == 4, "CSV table")
    doc = report(["torus", "--N", "16", "--degree", "0", "--eigs", "2"])
    if doc:
        check(abs(doc["payload"]["eigenvalues"][0]) < 1e-10, "flat bundle lowest 0")
    doc = report(["torus", "--N", "32", "--degree", "-2", "--volume", "4", "--check-bounds"])
    if doc:
        check(doc["payload"]["checks"]["bounds"]["passed"], "d=-2 V=4 bound check")
        check(abs(doc["payload"]["sharp_bound"] - 3.141592653589793) < 1e-12, "sharp bound pi")
    report(["torus", "--N", "16", "--degree", "-1", "--check-identity"])
    run(["torus", "--N", "3"], expect=64)
    run(["torus", "--volume", "-1"], expect=64)
    run(["--mode", "exact", "torus"], expect=64)
    run(["--csv", csv_path, "decompose"] + OMEGA, expect=64)

    # --out writes the same document that --json prints
    out_path = os.path.join(tmp, "r.json")
    p = run(["--json", "--out", out_path, "--seed", "5", "verify", "--suite", "decomp", "--samples", "20"])
    with open(out_path) as f:
        check(strip_timestamp(f.read().strip()) == strip_timestamp(p.stdout.strip()), "--out matches stdout")

# determinism, seeds and worker count
a = run(["--json", "--seed", "77", "verify", "--suite", "theorem", "--samples", "300", "--mode", "float"])
b = run(["--json", "--seed", "77", "--jobs", "3", "verify", "--suite", "theorem", "--samples", "300", "--mode", "float"])
check(strip_timestamp(a.stdout) == strip_timestamp(b.stdout), "payload bytes independent of --jobs")
c = run(["--json", "verify", "--suite", "theorem", "--samples", "300", "--mode", "float"], env={"SPINLAB_SEED": "77"})
check(strip_timestamp(a.stdout) == strip_timestamp(c.stdout), "SPINLAB_SEED equals --seed")
d = run(["--json", "--seed", "78", "verify", "--suite", "theorem", "--samples", "300", "--mode", "float"],
        env={"SPINLAB_SEED": "77"})
check(json.loads(d.stdout)["manifest"]["seed"] == 78, "--seed wins over SPINLAB_SEED")
t1 = run(["--json", "torus", "--N", "16", "--degree", "-1", "--check-identity"])
t2 = run(["--json", "torus", "--N", "16", "--degree", "-1", "--check-identity"])
check(strip_timestamp(t1.stdout) == strip_timestamp(t2.stdout), "torus payload deterministic")
run(["verify", "--suite", "clifford"], env={"SPINLAB_SEED": "x"}, expect=64)

if failures:
    print("\n".join(failures))
    sys.exit(1)
print("cli contract: all checks passed")

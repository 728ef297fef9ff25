"""End-to-end checks of the rotm binary: exit codes, schema conformance,
output determinism and document round trips."""

import json
import math
import os
import subprocess
import sys
import tempfile
from pathlib import Path

import jsonschema
from referencing import Registry, Resource

ROTM = sys.argv[1]
ROOT = Path(sys.argv[2])
MACHINES = ROOT / "machines"

schemas = {p.name: json.loads(p.read_text()) for p in (ROOT / "schemas").glob("*.schema.json")}
registry = Registry().with_resources((name, Resource.from_contents(s)) for name, s in schemas.items())
failures = []


def check(ok, what):
    if not ok:
        failures.append(what)
    print(("ok   " if ok else "FAIL ") + what)


def rotm(*args, env=None):
    full_env = dict(os.environ, **(env or {}))
    return subprocess.run([ROTM, *map(str, args)], capture_output=True, text=True, env=full_env)


def conforms(doc, schema):
    try:
        jsonschema.Draft202012Validator(schemas[schema], registry=registry).validate(doc)
        return True
    except jsonschema.ValidationError as e:
        print("     schema:", e.message)
        return False


def json_of(result, schema, label):
    try:
        doc = json.loads(result.stdout)
    except json.JSONDecodeError:
        check(False, f"{label}: stdout is JSON")
        return None
    check(conforms(doc, schema), f"{label}: matches {schema}")
    return doc


m = lambda name: MACHINES / f"{name}.rom"

# validate
r = rotm("validate", m("N"), "--strict")
doc = json_of(r, "validate.schema.json", "validate N --strict")
check(r.returncode == 0 and doc and doc["valid"] and doc["coverage"] == 1.0, "validate N --strict: valid, full coverage")
with tempfile.TemporaryDirectory() as tmp:
    partial = Path(tmp) / "partial.rom"
    partial.write_text("\n".join(l for l in m("N").read_text().splitlines() if not l.startswith("rule q0 b")) + "\n")
    r = rotm("validate", partial, "--strict")
    doc = json_of(r, "validate.schema.json", "validate partial --strict")
    check(r.returncode == 3 and doc and "missing rule (q0, b, [_])" in doc["errors"], "strict: missing rule reported")
    r = rotm("validate", partial)
    doc = json_of(r, "validate.schema.json", "validate partial")
    check(r.returncode == 0 and doc and abs(doc["coverage"] - 2 / 3) < 1e-12 and doc["warnings"],
          "lenient: coverage 2/3 with warning")
    empty = Path(tmp) / "empty.rom"
    empty.write_text("")
    r = rotm("validate", empty)
    check(r.returncode == 2 and "line 1" in r.stderr, "empty document: parse error at line 1, exit 2")

# run
r = rotm("run", m("N"), "--input", "bba", "--trace")
doc = json_of(r, "run.schema.json", "run N bba")
check(doc and doc["outcome"] == "accepted" and doc["steps"] == 3 and doc["final_dp"]["input_head"] == 4,
      "run N bba: accepted in 3 steps at head 4")
lines = r.stderr.strip().splitlines()
check(len(lines) == 4 and lines[0].startswith("step=0 state=q0 ihead=1 rule=- tapes="), "run --trace: one line per step")
r = rotm("run", m("spin"), "--input", "", "--max-steps", "50")
doc = json_of(r, "run.schema.json", "run spin")
check(doc and doc["outcome"] == "timeout" and doc["steps"] == 50, "run spin: timeout at 50")
r = rotm("run", m("N"), "--input", "bca")
check(r.returncode == 2 and "position 2" in r.stderr, "run N bca: input alphabet error")

# verify
r = rotm("verify", m("M_bad"), "--exhaustive", "--max-len", "2")
doc = json_of(r, "verify.schema.json", "verify M_bad")
check(r.returncode == 3, "verify M_bad --exhaustive: exit 3")
ce = doc and doc["exhaustive"]["counterexample"]
check(bool(ce) and ce["input"] == "aa" and ce["config"]["state"] == "q1" and ce["config"]["input_head"] == 3,
      "verify M_bad: witness aa at (q1, 3)")
r = rotm("verify", m("N"), "--static")
doc = json_of(r, "verify.schema.json", "verify N --static")
check(r.returncode == 0 and doc and doc["verdict"] == "statically-reversible", "verify N --static: exit 0")
r = rotm("verify", m("N"), "--exhaustive", "--max-len", "8", "--max-steps", "1000")
doc = json_of(r, "verify.schema.json", "verify N --exhaustive")
check(r.returncode == 0 and doc and doc["exhaustive"]["counterexample"] is None, "verify N: no counterexample")
one = rotm("verify", m("M_tally"), "--exhaustive", "--max-len", "7", "--jobs", "1").stdout
eight = rotm("verify", m("M_tally"), "--exhaustive", "--max-len", "7", "--jobs", "8").stdout
check(one == eight, "verify --jobs 8 is byte-identical")

# census
r = rotm("census", m("N"), "--len", "3")
doc = json_of(r, "census.schema.json", "census N --len 3")
check(r.returncode == 0 and doc and doc["D"] == 4 and doc["cost_bits"] == 2.0, "census N --len 3: D=4, 2.0 bits")
r = rotm("census", m("N"), "--range", "1..16", "--csv")
rows = [l.split(",") for l in r.stdout.strip().splitlines()]
check(rows[0] == ["n", "D", "cost_bits", "ceil_bits", "timeouts"], "census --csv header")
check(all(int(row[1]) == int(row[0]) + 1 and float(row[2]) == math.log2(int(row[0]) + 1) for row in rows[1:]),
      "census N 1..16: D = n+1, cost = log2(n+1)")
r = rotm("census", m("N"), "--range", "1..4")
json_of(r, "census.schema.json", "census --range JSON")
one = rotm("census", m("M_tally"), "--len", "9", "--jobs", "1").stdout
eight = rotm("census", m("M_tally"), "--len", "9", "--jobs", "8").stdout
check(one == eight, "census --jobs 8 is byte-identical")
r = rotm("census", m("N"), "--len", "12", env={"ROTM_BUDGET": "1000"})
check(r.returncode == 4, "census over ROTM_BUDGET: exit 4")
r = rotm("census", m("spin"), "--len", "2", "--max-steps", "10")
check(r.returncode == 3, "census of a non-halting machine: exit 3")
r = rotm("census", m("N"))
check(r.returncode == 2 and "Usage" in r.stderr + r.stdout, "census without a length: usage error")

# family
r = rotm("family", m("N"), "--len", "5")
doc = json_of(r, "family.schema.json", "family N")
check(r.returncode == 0 and doc and doc["distinct"] and len(doc["members"]) == 6, "family N 5: 6 distinct dps")
r = rotm("family", m("M_bad"), "--len", "5")
doc = json_of(r, "family.schema.json", "family M_bad")
check(r.returncode == 3 and doc and not doc["distinct"], "family M_bad 5: not distinct, exit 3")

# embed / invert
with tempfile.TemporaryDirectory() as tmp:
    emb, inv, back = (Path(tmp) / f for f in ("emb.rom", "inv.rom", "back.rom"))
    check(rotm("embed", m("N"), "-o", emb).returncode == 0, "embed N")
    check("machine N_hist" in emb.read_text() and rotm("validate", emb).returncode == 0, "embedded N validates")
    check(rotm("verify", emb, "--static").returncode == 0, "embedded N is statically reversible")
    check(rotm("invert", emb, "-o", inv).returncode == 0, "invert embedded N")
    check("semantics: reverse" in inv.read_text(), "inverse carries reverse semantics")
    check(rotm("invert", inv, "-o", back).returncode == 0 and back.read_text() == emb.read_text(),
          "invert twice restores the document")
    check(rotm("invert", m("M_bad"), "-o", inv).returncode == 3, "invert M_bad refused, exit 3")

# pipeline
r = rotm("pipeline", m("M_inc"), "--input", "011")
doc = json_of(r, "pipeline.schema.json", "pipeline M_inc 011")
check(r.returncode == 0 and doc and doc["output"] == "100" and doc["cleanliness"]["garbage_cells"] == 0,
      "pipeline M_inc 011: output 100, clean")
r = rotm("pipeline", m("M_parity"), "--input", "aaaaaaa")
doc = json_of(r, "pipeline.schema.json", "pipeline M_parity")
check(doc and doc["output"] == "1" and doc["stages"][1]["steps"] == doc["stages"][3]["steps"],
      "pipeline M_parity a^7: output 1, symmetric stages")

# demon
args = ("demon", "--molecules", 10, "--steps", 1024, "--trials", 20000, "--seed", 42)
one = rotm(*args, "--jobs", "1")
eight = rotm(*args, "--jobs", "8")
doc = json_of(one, "demon.schema.json", "demon")
check(one.stdout == eight.stdout, "demon --jobs 8 is byte-identical")
check(doc and abs(doc["empirical_p"] - 0.6323) <= 0.02 and doc["mean_dS"] == -doc["empirical_p"] * 10,
      "demon: empirical p near 0.6323, mean_dS identity")
r = rotm("demon", "--molecules", 3, "--steps", 5, "--trials", 100, "--seed", 1, "--csv")
check(r.returncode == 0 and r.stdout.startswith("a_count,trials\n"), "demon --csv histogram")
r = rotm("demon", "--molecules", 0, "--steps", 5, "--trials", 100, "--seed", 1)
check(r.returncode == 2, "demon with zero molecules: usage error")

# ledger
r = rotm("ledger", "--molecules", 10, "--steps", 1024, "--machine", m("N"))
doc = json_of(r, "ledger.schema.json", "ledger 10 1024")
check(r.returncode == 0 and doc and doc["verdict"] == "holds" and abs(doc["H"] - math.log2(1025)) < 1e-12,
      "ledger 10 1024: holds with H = log2(1025)")
r = rotm("ledger", "--molecules", 1, "--steps", 1)
doc = json_of(r, "ledger.schema.json", "ledger 1 1")
check(doc and doc["dS"] == -0.5 and doc["H"] == 1.0 and doc["magnitude_check"] is None, "ledger 1 1")
r = rotm("ledger", "--molecules", 6, "--steps", 64, "--machine", m("M_tally"))
check(r.returncode == 3, "ledger without a cost model: exit 3")

# determinism and usage
check(rotm("census", m("N"), "--len", "5").stdout == rotm("census", m("N"), "--len", "5").stdout,
      "identical invocations give identical output")
r = rotm("bogus")
check(r.returncode == 2, "unknown subcommand: exit 2")
r = rotm()
check(r.returncode == 2, "no subcommand: exit 2")

print(f"{len(failures)} failure(s)")
sys.exit(1 if failures else 0)

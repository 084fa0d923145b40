#!/usr/bin/env python3
"""End-to-end checks of the qsym command line: exit codes, schema validity,
reproducibility and markdown/JSON agreement."""

import json
import os
import subprocess
import sys
import tempfile

import jsonschema

QSYM, SCHEMA, GOLDEN = sys.argv[1], sys.argv[2], sys.argv[3]
with open(SCHEMA) as f:
    VALIDATOR = jsonschema.Draft202012Validator(json.load(f))

failures = []


def run(args, expect, env=None):
    full_env = dict(os.environ)
    full_env.update(env or {})
    proc = subprocess.run([QSYM] + args, capture_output=True, env=full_env)
    if proc.returncode != expect:
        failures.append(f"{args}: exit {proc.returncode}, expected {expect}: {proc.stderr.decode()[:400]}")
    return proc


def report(args, expect=0, env=None):
    proc = run(args, expect, env)
    doc = json.loads(proc.stdout)
    errors = sorted(VALIDATOR.iter_errors(doc), key=lambda e: list(e.path))
    for e in errors[:3]:
        failures.append(f"{args}: schema violation at {list(e.path)}: {e.message}")
    return doc, proc.stdout


def check(cond, what):
    if not cond:
        failures.append(what)


def split_row(line):
    cells, cur, i = [], "", 0
    while i < len(line):
        c = line[i]
        if c == "\\" and i + 1 < len(line):
            nxt = line[i + 1]
            cur += "\n" if nxt == "n" else nxt
            i += 2
            continue
        if c == "|":
            cells.append(cur)
            cur = ""
        else:
            cur += c
        i += 1
    # cells render as "| value |": drop the leading empty cell and one padding space per side
    return [c[1:-1] if len(c) >= 2 else c.strip() for c in cells[1:]]


def parse_markdown(text):
    lines = [l for l in text.splitlines() if l.startswith("|")]
    keys = split_row(lines[0])
    return [dict(zip(keys, split_row(l))) for l in lines[2:]]


def cell(value):
    if isinstance(value, list):
        return "(" + ",".join(str(v) for v in value) + ")"
    return str(value)


with tempfile.TemporaryDirectory() as tmp:
    # tables
    doc, _ = report(["tables", "central-force", "--n", "4", "--format", "json"])
    check(len(doc["rows"]) == 4 and doc["verified"], "central-force n=4 has 4 verified rows")
    check([r["k"] for r in doc["rows"]] == [2, 3, 4, 4], "central-force n=4 k column")
    doc, _ = report(["tables", "central-force", "--n", "5", "--format", "json"])
    check(len(doc["rows"]) == 7 and doc["verified"], "central-force n=5 has 7 verified rows")
    doc, _ = report(["tables", "rigid-body", "--max-n", "5", "--format", "json"])
    check(len(doc["rows"]) == 15 and doc["verified"], "rigid-body up to n=5 has 15 verified rows")
    md = run(["tables", "rigid-body", "--max-n", "5", "--format", "markdown"], 0).stdout.decode()
    parsed = parse_markdown(md)
    check(parsed == [{k: cell(v) for k, v in row.items()} for row in doc["rows"]],
          "rigid-body markdown matches the JSON rows")
    md = run(["tables", "central-force", "--n", "5"], 0).stdout.decode()
    doc, _ = report(["tables", "central-force", "--n", "5", "--format", "json"])
    check(parse_markdown(md) == [{k: cell(v) for k, v in row.items()} for row in doc["rows"]],
          "central-force markdown matches the JSON rows")

    # byte-stable golden tables
    for args, name in [(["tables", "rigid-body", "--max-n", "6", "--format", "markdown"], "rigid_body_max6.md"),
                       (["tables", "central-force", "--n", "4", "--format", "json"], "central_force_n4.json"),
                       (["tables", "central-force", "--n", "5"], "central_force_n5.md")]:
        with open(os.path.join(GOLDEN, name), "rb") as f:
            check(run(args, 0).stdout == f.read(), f"{name} matches the golden file")

    # verify
    doc, first = report(["verify", "quantum-central", "--n", "3", "--alpha", "1"])
    ids = {c["id"].rsplit("/", 1)[-1]: c["status"] for c in doc["checks"]}
    check(ids.get("runge_lenz_square") == "pass", "quantum-central reports runge_lenz_square pass")
    _, second = report(["verify", "quantum-central", "--n", "3", "--alpha", "1"])
    check(first == second, "verify output is byte-identical across runs")
    doc, _ = report(["verify", "classical-rigid", "--n", "6", "--q", "1,2,3", "--seed", "7"])
    check((doc["counts"]["k"], doc["counts"]["r"], doc["counts"]["kbar"]) == (5, 6, 8) and doc["passed"],
          "classical-rigid q=(1,2,3) embeds counts (5,6,8)")
    doc, _ = report(["verify", "quantum-rigid", "--n", "6", "--lambda", "1,2,3,4,5,6"])
    ids = {c["id"].rsplit("/", 1)[-1]: c["status"] for c in doc["checks"]}
    check(ids.get("c51_C62_commute") == "pass" and doc["passed"], "quantum-rigid n=6 reports c51_C62_commute pass")
    _, serial = report(["verify", "all", "--n", "3"], env={"QSYM_THREADS": "1"})
    _, parallel = report(["verify", "all", "--n", "3"], env={"QSYM_THREADS": "3"})
    check(serial == parallel, "verify all is independent of the thread count")
    doc, _ = report(["verify", "classical-rigid", "--lambda", "1,2,2", "--timings"])
    check(all("elapsed_ms" in c for c in doc["checks"]), "--timings adds elapsed_ms")
    md = run(["verify", "classical-central", "--n", "3", "--format", "markdown"], 0).stdout.decode()
    doc, _ = report(["verify", "classical-central", "--n", "3"])
    check(parse_markdown(md) == [{k: c[k] for k in ("id", "status", "claim", "witness")} for c in doc["checks"]],
          "verify markdown matches the JSON checks")

    # simulate
    csv = os.path.join(tmp, "traj.csv")
    doc, _ = report(["simulate", "--n", "4", "--lambda", "1,2,3,4", "--t-end", "10", "--dt", "1e-3", "--csv", csv])
    check(doc["passed"] and all(d["drift"] < 1e-6 for d in doc["drift"]), "generic simulate drift below 1e-6")
    with open(csv) as f:
        header = f.readline().strip()
        rows = sum(1 for _ in f)
    check(header == "t,P_1_2,P_1_3,P_1_4,P_2_3,P_2_4,P_3_4,H,c_2_0,c_3_1,c_4_2,c_4_0", "CSV header")
    check(rows == 10001, "CSV has one row per step")
    doc, _ = report(["simulate", "--lambda", "2,2,2,2", "--csv", csv])
    check(all(d["drift"] == 0 for d in doc["drift"]), "equal moments give zero drift")
    report(["simulate", "--lambda", "1,2,3,4", "--tolerance", "1e-12", "--csv", csv], expect=0)
    doc, _ = report(["simulate", "--lambda", "1,2,3,4", "--tolerance", "1e-17", "--csv", csv], expect=1)
    check(not doc["passed"], "sub-round-off tolerance fails")
    proc = run(["simulate", "--lambda", "1,2,3", "--p0", "1e200,1e200,1e200", "--dt", "1", "--t-end", "5",
                "--csv", csv], 1)
    check(b"step 1" in proc.stderr, "non-finite state reports the step index")

    # usage errors
    run(["verify", "nonsense"], 2)
    run(["verify", "quantum-rigid", "--n", "7"], 2)
    run(["verify", "classical-rigid", "--q", "1,2", "--n", "4"], 2)
    run(["verify", "classical-rigid", "--lambda", "1,x"], 2)
    run(["simulate", "--lambda", "1,-2,3"], 2)
    run(["tables", "central-force", "--n", "9"], 2)
    run([], 2)
    run(["--help"], 0)

for f in failures:
    print("FAIL:", f)
print(f"{len(failures)} failure(s)")
sys.exit(1 if failures else 0)

#!/usr/bin/env python3
"""End-to-end checks for the grope command-line tool.

usage: check_cli.py <grope binary> <data dir> <schema dir>

Every case runs twice; stdout and any trace file must match byte for byte.
JSON output and JSON-lines traces are validated against the shipped schemas.
"""

import json
import os
import subprocess
import sys
import tempfile
from pathlib import Path

import jsonschema

TREE_Y = "(* *)"
TREE_HH = "((* *) (* *))"


def cases(data):
    theta = str(data / "theta.g")
    y2 = str(data / "y2.cs")
    clean_adv = ["clean", "--state", y2, "--policy", "adversarial", "--bound", "2", "--seed", "7",
                 "--max-degree", "6"]
    # (name, argv, expected exit, schema for stdout, schema for the trace file)
    return [
        ("degree-graph", ["degree", "--graph", theta], 0, None, None),
        ("degree-graph-json", ["degree", "--graph", theta, "--format", "json"], 0, "degree", None),
        ("degree-tree-json", ["degree", "--tree", TREE_HH, "--format", "json"], 0, "degree", None),
        ("class-json", ["class", "--tree", TREE_HH, "--format", "json"], 0, "class", None),
        ("gen-half-json", ["gen", "--kind", "half", "--class", "5", "--format", "json"], 0, "gen", None),
        ("gen-sym-json", ["gen", "--kind", "symmetric", "--height", "2", "--format", "json"], 0, "gen", None),
        ("refine-json", ["refine", "--tree", "[(* *) (* (* *))]", "--format", "json", "--trace", "TRACE"],
         0, "refine", None),
        ("ihx-json", ["ihx-reduce", "--tree", TREE_HH, "--format", "json", "--trace", "TRACE"],
         0, "ihx-reduce", "ihx-trace"),
        ("ihx-text", ["ihx-reduce", "--tree", "(((* *) (* *)) *)"], 0, None, None),
        ("clean-adversarial", clean_adv + ["--format", "json", "--trace", "TRACE"], 0, "clean", "clean-trace"),
        ("clean-runs", clean_adv + ["--runs", "4", "--strategy", "random", "--format", "json", "--trace", "TRACE"],
         0, "clean", "clean-trace"),
        ("clean-zero", ["clean", "--state", y2, "--policy", "zero", "--max-degree", "5", "--format", "json"],
         0, "clean", None),
        ("space-json", ["space", "--class", "4", "--dump", "--format", "json"], 0, "space", None),
        ("space-class2", ["space", "--class", "2", "--format", "json"], 0, "space", None),
        ("span-json", ["span-check", "--class", "5", "--format", "json"], 0, "span-check", None),
        ("bracket-json", ["bracket", "--tree", TREE_HH, "--labels", "1,2,3,4", "--format", "json"],
         0, "bracket", None),
        ("enum-trees", ["enumerate", "--trees", "5", "--format", "json"], 0, "enumerate", None),
        ("enum-planar", ["enumerate", "--trees", "4", "--planar", "--format", "json"], 0, "enumerate", None),
        ("enum-graphs", ["enumerate", "--graphs", "3", "--max-vertices", "8", "--format", "json"],
         0, "enumerate", None),
        # Failure modes.
        ("parse-error", ["degree", "--tree", "((* *)"], 2, None, None),
        ("unknown-flag", ["degree", "--bogus"], 2, None, None),
        ("unknown-subcommand", ["frobnicate"], 2, None, None),
        ("missing-seed", ["clean", "--state", y2, "--policy", "adversarial", "--bound", "1"], 2, None, None),
        ("domain-error", ["gen", "--kind", "half", "--class", "0"], 1, None, None),
        ("magnus-degree", ["bracket", "--tree", TREE_Y, "--labels", "1,2", "--degree", "9"], 1, None, None),
        ("missing-file", ["degree", "--graph", str(data / "does-not-exist.g")], 1, None, None),
    ]


def run(cli, argv, trace):
    args = [trace if a == "TRACE" else a for a in argv]
    proc = subprocess.run([cli] + args, capture_output=True, env={"PATH": os.environ.get("PATH", "")})
    body = Path(trace).read_bytes() if "TRACE" in argv and Path(trace).exists() else b""
    return proc.returncode, proc.stdout, proc.stderr, body


def main():
    if len(sys.argv) != 4:
        print(__doc__.strip().splitlines()[2], file=sys.stderr)
        return 2
    cli, data, schema_dir = sys.argv[1], Path(sys.argv[2]), Path(sys.argv[3])
    schemas = {p.name.removesuffix(".schema.json"): json.loads(p.read_text())
               for p in schema_dir.glob("*.schema.json")}
    failures = []

    def check(cond, name, msg):
        if not cond:
            failures.append(f"{name}: {msg}")

    with tempfile.TemporaryDirectory() as tmp:
        for name, argv, want, out_schema, trace_schema in cases(data):
            results = [run(cli, argv, os.path.join(tmp, f"{name}.{i}.jsonl")) for i in range(2)]
            code, out, err, trace = results[0]
            check(code == want, name, f"exit {code}, expected {want}; stderr: {err.decode(errors='replace')}")
            check(results[0][:2] == results[1][:2], name, "stdout differs between runs")
            check(trace == results[1][3], name, "trace differs between runs")
            if want != 0:
                check(not out, name, "wrote to stdout on failure")
                check(bool(err), name, "no diagnostic on stderr")
                continue
            if out_schema:
                try:
                    jsonschema.validate(json.loads(out), schemas[out_schema])
                except (ValueError, jsonschema.ValidationError) as e:
                    check(False, name, f"stdout does not match {out_schema}: {e}")
            if trace_schema:
                lines = trace.decode().splitlines()
                check(bool(lines), name, "empty trace")
                for n, line in enumerate(lines):
                    try:
                        jsonschema.validate(json.loads(line), schemas[trace_schema])
                    except (ValueError, jsonschema.ValidationError) as e:
                        check(False, name, f"trace line {n + 1} does not match {trace_schema}: {e}")
                        break
                if trace_schema == "clean-trace":
                    verify = subprocess.run([cli, "verify-trace", "--trace", os.path.join(tmp, f"{name}.0.jsonl"),
                                             "--format", "json"], capture_output=True)
                    check(verify.returncode == 0, name, "verify-trace rejected the trace")
                    jsonschema.validate(json.loads(verify.stdout), schemas["verify-trace"])

        code, out, _, _ = run(cli, ["degree", "--graph", str(data / "theta.g")], "")
        check(out == b"v=1 loop=2 grope=3\n", "degree-text", f"unexpected output {out!r}")

    for f in failures:
        print("FAIL", f)
    print(f"{len(cases(data))} cases, {len(failures)} failures")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())

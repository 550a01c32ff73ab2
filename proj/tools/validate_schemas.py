#!/usr/bin/env python3
"""Validate CLI JSON outputs against the schemas shipped in schemas/."""

import json
import pathlib
import subprocess
import sys
import tempfile

import jsonschema

CURVE_289_FLAGS = ["--p", "17", "--a", "2", "--modulus", "3:16:1",
             "--coeffs", "0:0", "0:0", "0:0", "0:0", "1:0"]


def run(cli, args, expect=0):
    r = subprocess.run([cli] + args, capture_output=True, text=True)
    if r.returncode != expect:
        raise SystemExit(f"{' '.join(args)}: exit {r.returncode}, expected {expect}\n{r.stderr}")
    return r.stdout


def check(schemas, name, doc):
    schema = json.loads((schemas / f"{name}.schema.json").read_text())
    jsonschema.validate(doc, schema)
    print(f"ok {name}")


def main():
    cli, schemas = sys.argv[1], pathlib.Path(sys.argv[2])
    with tempfile.TemporaryDirectory() as td:
        out = pathlib.Path(td) / "c.json"

        check(schemas, "bound", json.loads(run(cli, ["bound", "--q", "289", "--k", "4"])))
        check(schemas, "bound",
              json.loads(run(cli, ["bound", "--q", "1024", "--k", "4", "--restricted"])))

        info = json.loads(run(cli, ["curve", "info"] + CURVE_289_FLAGS))
        check(schemas, "curve_report", info)
        check(schemas, "curve", info["curve"])

        place = json.loads(run(cli, ["place", "deg3", "--method", "avoid"] + CURVE_289_FLAGS))
        check(schemas, "place", place)

        spec = json.loads(run(cli, ["code", "construct", "--p", "17", "--a", "2",
                                    "--k", "4", "--seed", "7", "-o", str(out)]))
        check(schemas, "codespec", spec)
        check(schemas, "codespec", json.loads(out.read_text()))
        check(schemas, "curve", spec["curve"])

        verdict = json.loads(run(cli, ["code", "verify", "-i", str(out),
                                       "--mode", "combinatorial"]))
        check(schemas, "verdict", verdict)

        audit = json.loads(run(cli, ["code", "audit", "-i", str(out)]))
        check(schemas, "audit", audit)


if __name__ == "__main__":
    main()

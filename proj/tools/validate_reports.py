#!/usr/bin/env python3
"""Runs the CLI over a fixed battery and validates every report against the schema."""

import csv
import io
import json
import subprocess
import sys

import jsonschema

BATTERY = [
    ["parse", "S2 v (S3 x S4)"],
    ["homology", "S2 x S3"],
    ["loop-series", "S2 v S2", "--max-degree", "8"],
    ["rho", "S2 v S3"],
    ["rho", "S2 x S3"],
    ["log-index", "S2 v S2"],
    ["cofiber", "--A", "S2", "--Z", "S2 x S2", "--inert", "cohomology not single-generated"],
    ["cofiber", "--A", "S2", "--Z", "S3"],
    ["connsum", "--A", "S2", "--M", "S3", "--N", "S3", "--inert", "collar"],
    ["yclass", "--m", "2", "--n", "5", "--J", "S2", "--inert", "class"],
    ["yclass", "--m", "3", "--n", "5", "--J", "S2", "--inert", "class"],
    ["free-loop", "S3 v S3", "--epsilon", "0.15", "--k-min", "12"],
    ["free-loop", "S3", "--max-degree", "10"],
    ["free-loop", "--alphabet", "1,2", "--max-degree", "12", "--method", "both"],
    ["hm-census", "--m", "2", "--n", "2", "--max-degree", "6"],
    ["torsion", "--m", "3", "--n", "3", "--p", "5", "--r", "2", "--max-degree", "12"],
    ["torsion", "--m", "2", "--n", "2", "--p", "3", "--r", "10", "--max-degree", "6"],
    ["primes", "--d", "7", "--s", "1"],
    ["primes", "--space", "S2 x S2"],
    ["retraction", "--A", "S2", "--Z", "S2 x S2", "--inert", "x"],
    ["parse", "S2 v "],
    ["homology", "S1"],
    ["no-such-command"],
]

EXIT_CODES = {None: 0, "hypothesis_error": 1, "validation_error": 1, "parse_error": 2}


def main() -> int:
    cli, schema_path = sys.argv[1], sys.argv[2]
    with open(schema_path, encoding="utf-8") as f:
        schema = json.load(f)
    jsonschema.Draft202012Validator.check_schema(schema)
    validator = jsonschema.Draft202012Validator(schema)
    columns = schema["x-csv-columns"]
    failures = 0

    for args in BATTERY:
        label = " ".join(args)
        proc = subprocess.run([cli, *args], capture_output=True, text=True, check=False)
        try:
            doc = json.loads(proc.stdout)
        except json.JSONDecodeError as e:
            print(f"FAIL {label}: output is not JSON ({e})")
            failures += 1
            continue
        errors = sorted(validator.iter_errors(doc), key=str)
        kind = doc["error"]["kind"] if doc.get("error") else None
        if errors:
            print(f"FAIL {label}: {errors[0].message}")
            failures += 1
        elif proc.returncode != EXIT_CODES[kind]:
            print(f"FAIL {label}: exit {proc.returncode} for error kind {kind}")
            failures += 1
        else:
            print(f"ok   {label}")

        command = doc["request"]["command"]
        proc = subprocess.run([cli, *args, "--format", "csv"], capture_output=True, text=True, check=False)
        header = next(csv.reader(io.StringIO(proc.stdout)), [])
        expected = columns["error" if kind else command]
        if header != expected:
            print(f"FAIL {label} (csv): header {header} != {expected}")
            failures += 1

    print(f"{len(BATTERY)} reports checked, {failures} failures")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())

"""Runs the command-line tool over a fixed invocation list.

validate:    every JSON document conforms to the shipped schema and exit codes match.
determinism: two complete runs produce byte-identical output.
"""
import argparse
import json
import os
import subprocess
import sys
import tempfile

import jsonschema

INVOCATIONS = [
    (["supersingular", "--prime", "5"], 0),
    (["supersingular", "--prime", "7"], 0),
    (["supersingular", "--prime", "499"], 0),
    (["supersingular", "--prime", "6"], 2),
    (["pairing", "--prime", "5"], 0),
    (["pairing", "--prime", "7", "--powered"], 0),
    (["pairing", "--prime", "97"], 0),
    (["theta", "--generators", "{samples}/tate.json", "--alpha", "g1", "--beta", "g1", "--max-length", "12"], 0),
    (["theta", "--generators", "{samples}/tate.json", "--alpha", "identity", "--beta", "g1"], 0),
    (["theta", "--generators", "{samples}/genus2.json", "--alpha", "g1*g2", "--beta", "g2", "--max-length", "5"], 0),
    (["theta", "--generators", "{samples}/genus2.json", "--alpha", "g1", "--beta", "g2", "--max-length", "2"], 4),
    (["theta", "--generators", "{samples}/crossing.json", "--alpha", "g1", "--beta", "g1"], 3),
    (["qseries", "--check", "all", "--prime", "5", "--order", "20"], 0),
    (["qseries", "--check", "all", "--prime", "7", "--order", "20"], 0),
    (["qseries", "--check", "lambda", "--order", "40"], 0),
    (["qseries", "--check", "fourier-mu", "--prime", "13"], 0),
    (["qseries", "--check", "bogus"], 2),
]


def run_all(tool, samples, fmt, cache_dir):
    outputs = []
    env = dict(os.environ, PADIC_PERIODS_CACHE=cache_dir)
    for args, expected in INVOCATIONS:
        argv = [tool] + [a.format(samples=samples) for a in args] + ["--format", fmt]
        proc = subprocess.run(argv, capture_output=True, env=env)
        if proc.returncode != expected:
            sys.exit(f"{' '.join(argv)}: exit {proc.returncode}, expected {expected}\n{proc.stderr.decode()}")
        outputs.append((argv, proc.stdout))
    return outputs


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("mode", choices=["validate", "determinism"])
    ap.add_argument("--tool", required=True)
    ap.add_argument("--samples", required=True)
    ap.add_argument("--schema", required=True)
    ns = ap.parse_args()

    with tempfile.TemporaryDirectory() as cache:
        if ns.mode == "validate":
            with open(ns.schema) as f:
                schema = json.load(f)
            validator = jsonschema.Draft202012Validator(schema)
            count = 0
            for argv, out in run_all(ns.tool, ns.samples, "json", cache):
                if not out:
                    continue
                doc = json.loads(out)
                errors = sorted(validator.iter_errors(doc), key=str)
                if errors:
                    sys.exit(f"{' '.join(argv)}: {errors[0].message}")
                count += 1
            print(f"{count} documents valid")
        else:
            for fmt in ("json", "csv"):
                first = run_all(ns.tool, ns.samples, fmt, cache)
                second = run_all(ns.tool, ns.samples, fmt, cache)
                for (argv, a), (_, b) in zip(first, second):
                    if a != b:
                        sys.exit(f"{' '.join(argv)}: output differs between runs")
            print(f"{len(INVOCATIONS)} invocations byte-identical in json and csv")


if __name__ == "__main__":
    main()

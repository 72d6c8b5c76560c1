"""Rewrite the golden outputs from the current CLI build.

usage: regenerate.py PATH_TO_PINCHCERT
Review the diff before committing: goldens are only as good as the values
they freeze.
"""
import json
import pathlib
import subprocess
import sys

HERE = pathlib.Path(__file__).resolve().parent


def main(argv):
    if len(argv) != 2:
        print(__doc__, file=sys.stderr)
        return 2
    exe = argv[1]
    cases = json.loads((HERE / "cases.json").read_text())
    for case in cases:
        proc = subprocess.run([exe, *case["args"]], capture_output=True, env={})
        (HERE / f"{case['name']}.stdout").write_bytes(proc.stdout)
        (HERE / f"{case['name']}.stderr").write_bytes(proc.stderr)
        (HERE / f"{case['name']}.exit").write_text(f"{proc.returncode}\n")
        print(f"{case['name']}: exit {proc.returncode}")
    return 0


if __name__ == "__main__":
    sys.exit(main(sys.argv))

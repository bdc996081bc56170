#!/usr/bin/env python3
"""Drive the command-line interface and read its JSON reports.

Exit codes: 0 pass, 1 input error, 2 condition violation, 3 non-convergence.
`verify` judges the checkers; `solve` judges convergence (its checker results
are informational).  Reports with the same config and seed are byte-identical
except for wall_time_seconds.
"""

import json
import subprocess
import sys
import tempfile
from pathlib import Path

from matpair import preset_path


def run(*args):
    proc = subprocess.run(
        [sys.executable, "-m", "matpair", *args], capture_output=True, text=True
    )
    return proc


def main():
    tmp = Path(tempfile.mkdtemp())

    out = tmp / "verify.json"
    proc = run("verify", "--config", str(preset_path("pd_pair_spectral")),
               "--out", str(out))
    report = json.loads(out.read_text())
    print("verify pd_pair_spectral -> exit", proc.returncode)
    print("  conditions passed:",
          [report["results"]["conditions"][k]["passed"]
           for k in ("condition_i", "condition_ii", "condition_iii")])

    # scalar_half: checkers fail (exit 2) yet the solve converges (exit 0)
    proc = run("verify", "--config", str(preset_path("scalar_half")))
    print("\nverify scalar_half -> exit", proc.returncode, "(violations found)")

    out = tmp / "solve.json"
    proc = run("solve", "--config", str(preset_path("scalar_half")),
               "--out", str(out))
    report = json.loads(out.read_text())
    print("solve scalar_half  -> exit", proc.returncode,
          "solution", report["solve"]["final_iterate"][0][0][0])

    out = tmp / "linf.json"
    proc = run("example-linf", "--max-index", "20", "--out", str(out))
    report = json.loads(out.read_text())
    print("\nexample-linf -> exit", proc.returncode,
          "| pairs", report["certificate"]["pairs_checked"],
          "| violations", report["certificate"]["violations_total"])

    proc = run("example-linf", "--max-index", "20", "--phi1-slope", "1/8")
    print("example-linf with faulty slope -> exit", proc.returncode)

    proc = run("verify", "--config", "/definitely/missing.json")
    print("\nmissing config -> exit", proc.returncode,
          "|", proc.stderr.strip())


if __name__ == "__main__":
    main()

"""A scripted tour of the command line interface.

Every capability of the library is also reachable through subcommands that
print a JSON report and, where it makes sense, write a CSV trajectory with
the conserved quantities alongside the state.
"""

import json
import subprocess
import sys
import tempfile
from pathlib import Path

def run(*args):
    proc = subprocess.run([sys.executable, "-m", "mbloch.cli", *args],
                          capture_output=True, text=True)
    print(f"$ mbloch {' '.join(args)}")
    print(f"  exit {proc.returncode}")
    if proc.stdout.strip():
        rep = json.loads(proc.stdout)
        for key in list(rep)[:6]:
            print(f"  {key}: {rep[key]}")
    print()
    return proc

with tempfile.TemporaryDirectory() as tmp:
    traj = str(Path(tmp) / "traj.csv")
    run("simulate", "--x1", "1", "--y1", "1", "--x2", "0", "--y2", "0",
        "--z", "1", "--t-end", "10", "--method", "rk45", "--tol", "1e-10",
        "--out", traj)
    print(f"  first lines of {Path(traj).name}:")
    for line in Path(traj).read_text().splitlines()[:3]:
        print(f"    {line[:72]}")
    print()

    run("classify", "--c", "1")
    run("classify", "--c", "0")
    hom = str(Path(tmp) / "hom.csv")
    run("homoclinic", "--c", "1", "--theta0", "0.785", "--sign", "+",
        "--t-min", "-5", "--t-max", "5", "--dt", "0.01", "--out", hom)
    run("rank", "--point", "1,1,1,-1,-1")
    run("invariant-probe", "--m1", "0,1,1", "--t-end", "20")
    run("verify", "--seed", "42", "--level", "quick")

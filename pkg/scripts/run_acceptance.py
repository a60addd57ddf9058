"""Run the acceptance suite and show one PASS/FAIL line per criterion."""
import subprocess
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent


def main():
    cmd = [sys.executable, "-m", "pytest", str(ROOT / "tests" / "test_acceptance.py"), "-s", "-q", "-o", "addopts=", "-p", "no:cacheprovider"]
    proc = subprocess.run(cmd, capture_output=True, text=True, cwd=ROOT)
    for line in proc.stdout.splitlines():
        line = line.lstrip(".")
        if line.startswith(("PASS criterion", "FAIL criterion")):
            print(line)
    if proc.returncode:
        print(proc.stdout[-2000:])
    return proc.returncode


if __name__ == "__main__":
    sys.exit(main())

"""Run every built-in fixture and write one JSON report per fixture.

usage: python3 scripts/run_all_fixtures.py [out_dir]
"""

import sys
from pathlib import Path

from seventerm.fixtures import FIXTURES, fixture
from seventerm.report import run


def main(out_dir="reports"):
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    status = 0
    for name in sorted(FIXTURES):
        report = run(fixture(name))
        (out / f"{name}.json").write_text(report.to_json())
        print(report.summary().splitlines()[0] + f"  [{report.seconds:.2f}s]")
        status |= report.status != "pass"
    return status


if __name__ == "__main__":
    sys.exit(main(*sys.argv[1:]))

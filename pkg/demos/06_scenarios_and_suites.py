"""
Scenarios and property sweeps
=============================

The ``glab`` command runs JSON scenarios and named sweeps; both are
available from Python too.
"""

from pathlib import Path

from glab import run_scenario, run_suite

here = Path(__file__).resolve().parent.parent / "scenarios"
report = run_scenario(here / "type_two.json")
for entry in report.entries:
    print(entry.verdict, entry.op, entry.detail)
print("exit code:", report.exit_code)

print(run_suite("divided-powers").table())
print(run_suite("classify-p-group").table())

# Serializing results and driving the command line.
#
# Run with:  python demos/05_reports_and_cli.py

from consecprimes import NAGURA, PrimeTable, assemble_theorem, emit_report, find_threshold, parse_report
from consecprimes.cli import run

table = PrimeTable()
rep = assemble_theorem(2, NAGURA, 1000, table=table)

# JSON keeps big integers as decimal strings and round-trips exactly
data = emit_report(rep, "json")
print(data.decode())
assert parse_report(data) == rep

# CSV is one headerless row per record
thr = find_threshold(3, 10_000, table=table)
print(emit_report(thr, "csv").decode(), end="")
print(emit_report(thr, "text").decode())

# the same operations from the command line; the return value is the exit code
code = run(["certificate", "--k", "3", "--c", "5", "--n0", "9", "--format", "json"])
print("exit code for a weak bound:", code)
code = run(["verify", "--theorem", "3", "--max-n", "100000", "--format", "csv"])
print("exit code for a passing check:", code)

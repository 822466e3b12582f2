"""Evaluate once versus rebind and re-evaluate: where the ongoing result pays off.

Run with ``python demos/invalidation_cost.py [rows]`` (default 20000).
"""
import sys

from ongoingdb.bench import format_report, run_bench
from ongoingdb.datagen import GenSpec, generate, overlaps_window

rows = int(sys.argv[1]) if len(sys.argv) > 1 else 20_000
spec = GenSpec(rows=rows, pct_ongoing=15, shape="expanding", seed=1)
catalog = {"D": generate(spec)}
lo, hi = overlaps_window(spec)
query = f"select VT overlaps [tick({lo}), tick({hi})) (D)"

print(f"{rows} rows, {spec.n_ongoing} with an expanding end; query: {query}")
rts = [spec.end - 400, spec.end - 200, spec.end]
report = run_bench(query, catalog, rts, modes=("ongoing", "bind", "view"), repetitions=3)
print(format_report(report))
print("break_even_n: how many reference times must be served before one ongoing")
print("evaluation is cheaper than binding the data and re-running the query each time.")

"""Compare the engine against bind-then-evaluate, then plant a bug and watch it get caught.

Run with ``python demos/oracle_check.py``.
"""
import random
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "tests"))

from helpers import OPERATORS, rand_instance  # noqa: E402

from ongoingdb import differential_check, timepoint  # noqa: E402
from ongoingdb.datasets import V_QUERY, running_example  # noqa: E402

print("Running example:", differential_check(V_QUERY, running_example()))


def sweep(seeds: int) -> int:
    failures = 0
    for seed in range(seeds):
        rng = random.Random(seed)
        for op in OPERATORS:
            plan, catalog = rand_instance(rng, op)
            if not differential_check(plan, catalog):
                failures += 1
    return failures


print(f"Random instances, {len(OPERATORS)} operators x 100 seeds: {sweep(100)} failures")

# swap two branches of the less-than decision tree
original = timepoint.less_than


def broken(p, q):
    case = timepoint.decision_case(p.a, p.b, q.a, q.b)
    return timepoint.case_result({2: 3, 3: 2}.get(case, case), p.b, q.a)


timepoint.less_than = broken
try:
    print(f"With cases 2 and 3 swapped: {sweep(100)} failures")
    print("Running example with the bug:", differential_check(V_QUERY, running_example()))
finally:
    timepoint.less_than = original

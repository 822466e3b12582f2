"""Walk through the bug-tracker relations: one query, evaluated once, read at many times.

Run with ``python demos/bug_tracker.py``.
"""
from ongoingdb import bind_relation, evaluate, md, parse, print_plan
from ongoingdb.csvio import write_fixed, write_relation
from ongoingdb.datasets import V_QUERY, running_example

catalog = running_example()
print("Bugs as stored (note the open-ended valid times):")
print(write_relation(catalog["B"], calendar="date"))

plan = parse(V_QUERY)
print("Query plan:")
print(print_plan(plan), end="\n\n")

# the ongoing result is computed once; RT says when each row is part of the answer
result = evaluate(plan, catalog)
print("Ongoing result:")
print(write_relation(result, calendar="date"))

# reading the result at a reference time is a cheap filter, no re-evaluation
for month, day in [(2, 1), (8, 17), (12, 1)]:
    rt = md(month, day)
    print(f"Instantiated at 2019-{month:02d}-{day:02d}:")
    print(write_fixed(bind_relation(result, rt), calendar="date"))

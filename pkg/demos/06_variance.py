"""Variance of E^2 + gamma F^2 representation counts over short intervals."""

import numpy as np

from fqsquares import Field, build_s_table, variance_closed
from fqsquares.variance import variance_case, variance_from_table

for q in (3, 5):
    F = Field(q)
    print(f"\nq = {q}")
    for n in (2, 3):
        for m in range(n):
            table = build_s_table(F, n, m, 1)
            row = []
            for h in range(2 * n + 1):
                brute = variance_from_table(table, h)
                assert brute == variance_closed(q, n, m, h)
                row.append(str(brute))
            print(f"n={n} m={m} [{variance_case(n, m, 0)[0]:>12}]", " | ".join(row))

# the largest spread sits at h = 0, where each interval is a single polynomial
F = Field(3)
table = build_s_table(F, 3, 2, 2)
print("\nS values for n=3, m=2, gamma=2:", dict(zip(*(a.tolist() for a in np.unique(table.counts, return_counts=True)))))

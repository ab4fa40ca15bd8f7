"""Count sequences by the ranks of two nested Hankel matrices and sum the square."""

from fqsquares import Field, census_N, interval_square_sum_via_characters
from fqsquares.charsum import census_regime, census_scan
from fqsquares.variance import square_sum_brute

F = Field(3)
n, m = 3, 1
for h in range(2 * n + 1):
    closed = census_N(F, n, m, h)
    scan = census_scan(F, n, m, h)
    same = list(scan.cells) == closed
    table = ", ".join(f"({c.rho2},{c.rho1}):{c.count}" for c in closed)
    print(f"h={h} {census_regime(n, m, h)[1]:12} {table}  [{'ok' if same else 'DIFF'}; "
          f"{len(scan.excluded)} sequences excluded]")

print("\nsquare sums, characters vs brute force:")
for h in range(2 * n + 1):
    a = interval_square_sum_via_characters(F, n, m, h)
    b = square_sum_brute(F, n, m, h, 2)
    print(f"h={h}: {a} {b}")
    assert a == b

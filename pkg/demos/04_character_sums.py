"""Exact additive character sums: psi(a) = zeta_p^Tr(a) kept as residue counts."""

import itertools
from collections import Counter

from fqsquares import (
    Field, HankelMatrix, char_of_multiset, ms_named, pair_contribution, strict_rho_pi,
)

F = Field(3)
print("sum over F_3       :", char_of_multiset(ms_named(F, "F")))
print("sum over T_3       :", char_of_multiset(ms_named(F, "T")))
g = char_of_multiset(ms_named(F, "S", 1))
print("quadratic Gauss sum:", g, "~", round(g.to_complex().imag, 6), "i")
print("its norm           :", g * char_of_multiset(ms_named(F, "S", 2)))

# |sum_e psi(e^T H(alpha) e)|^2 over monic e depends only on the rank shape of H
n = 2
shapes = Counter()
for alpha in itertools.product(range(3), repeat=2 * n + 1):
    value = pair_contribution(F, alpha, n, "direct")
    rho, pi = strict_rho_pi(HankelMatrix(F, n + 1, n + 1, alpha))
    assert value == pair_contribution(F, alpha, n, "closed")
    shapes[(rho, pi, value)] += 1
print("\n(rho_s, pi_s, value): #alpha")
for key in sorted(shapes):
    print(key, shapes[key])

"""Reduce Hankel matrices to block-diagonal normal form and count the fibers."""

from collections import Counter

from fqsquares import (
    Field, HankelMatrix, all_partitions, count_hankel_with_reduced,
    count_reduced_with_partition, enumerate_hankel, reduce_with_certificate, strict_rho_pi,
)
from fqsquares.hankel import congruence, reduction_fibers

F = Field(3)

H = HankelMatrix(F, 3, 3, (1, 2, 0, 1, 1))
print("H =\n", H.to_array())
print("(rho_s, pi_s) =", strict_rho_pi(H))

R, P = reduce_with_certificate(H)
print("reduced form =\n", R.render())
print("partition =", R.partition.as_tuple())
print("P =\n", P)
assert (congruence(F, P, H) == R.render()).all()   # P H P^T is the reduced form

# How many Hankel matrices land on each reduced form?  Always q^(t-1).
n = 3
fibers = reduction_fibers(F, n)
sizes = Counter(fibers.values())
print(f"\n{len(fibers)} distinct reduced forms for n = {n}; fiber sizes {dict(sizes)}")
assert all(s == count_hankel_with_reduced(M, F) for M, s in fibers.items())

# and how many reduced forms per partition: (q-1)^t q^(r-t)
print("\npartition          #reduced  fiber  product")
total = 0
for Pn in all_partitions(n):
    c = count_reduced_with_partition(Pn, F)
    fiber = F.q ** (Pn.t - 1)
    total += c * fiber
    print(f"{str(Pn.as_tuple()):18} {c:8} {fiber:6} {c * fiber:8}")
print("total", total, "= 3^5 =", 3**5, "=", len(list(enumerate_hankel(F, n))))

"""Value distributions of v^T H v, predicted from the reduced form alone."""

from fqsquares import (
    Field, HankelMatrix, ms_named, reduce, values_closed_hankel, values_closed_triangular,
    values_quadform,
)

F = Field(5)
T = ms_named(F, "T")
print("T_5 (products v1*v2):", T.as_dict())
print("S_5(1) + S_5(-1) == T_5:", ms_named(F, "S", 1) + ms_named(F, "S", 4) == T)
print("2 T_5:", (2 * T).as_dict())

# a skew-triangular block's values depend only on its size and skew-diagonal
for l in (1, 2, 3):
    print(f"l={l}, monic:", values_closed_triangular(F, l, 2, "monic").as_dict())

H = HankelMatrix(F, 4, 4, (1, 3, 0, 2, 4, 4, 1))
print("\nH =\n", H.to_array())
print("partition:", reduce(H).partition.as_tuple())
for mode in ("full", "monic", "last1"):
    enumerated = values_quadform(H, mode)
    print(f"{mode:6}", enumerated.as_dict(), "mass", enumerated.mass)
    # congruence never changes the value multiset
    assert enumerated == values_quadform(reduce(H), mode)
    assert enumerated == values_closed_hankel(H, mode)
print("closed forms agree with enumeration")

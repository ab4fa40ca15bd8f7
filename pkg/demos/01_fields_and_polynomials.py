"""Finite fields, traces and short intervals of polynomials."""

from fqsquares import Field, FqPoly, enumerate_monic, in_interval, interval, parse_field

F3 = Field(3)
F9 = parse_field("3^2:1,0,1")  # F_3[x] / (x^2 + 1)

x = F9([0, 1])
print("in F_9, x * x =", x * x)          # -1 = 2
print("Tr(x) =", x.trace())              # x + x^3 = x - x = 0
print("Tr over F_9:", F9.trace_table.tolist())

# every unit times its inverse
assert all((a * a.inv()).index == 1 for a in F9.elements()[1:])

# polynomials are little-endian coefficient tuples
A = FqPoly(F3, (1, 1))                   # T + 1
B = FqPoly(F3, (2, 1))                   # T + 2
print("(T+1)(T+2) =", A * B)             # T^2 + 2 over F_3

# I(A; h): all B with deg(B - A) < h, made by rewriting the h low coefficients
centre = FqPoly(F3, (0, 0, 0, 0, 1))     # T^4
for h in range(3):
    members = list(interval(centre, h))
    print(f"|I(T^4; {h})| = {len(members)}", members[:3], "...")
    assert all(in_interval(b, centre, h) for b in members)

print("monic cubics over F_3:", len(list(enumerate_monic(F3, 3))))

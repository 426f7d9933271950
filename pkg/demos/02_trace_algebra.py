"""Parsing, normal forms and the named polynomials."""

from pitrace import builtin, multilinearize, parse, std
from pitrace.builtins import BUILTINS

p = parse("[X1,X2]^2")
print("[X1,X2]^2 =", p)

# traces are cyclic, so these collapse to one term
q = parse("tr(X1*X2*X1) + tr(X1^2*X2)")
print("tr(X1 X2 X1) + tr(X1^2 X2) =", q)

# det(X) is sugar for the Newton-identity expression, and needs n
print("det(X1) for n=2:", parse("det(X1)", n=2))

print("std(3) has", len(std(3).items()), "terms")
print("friedland:", builtin("friedland_c"))

# full polarization of X1^2 X2
for part in multilinearize(parse("X1^2*X2")):
    print("polarized:", part)

print()
for name, note in BUILTINS.items():
    print(f"{name:12s} {note}")

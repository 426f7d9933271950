"""Exact matrices over the rationals.

Everything downstream is built on these few operations, so they never
touch floating point.
"""

from pitrace import Matrix, char_poly_coeffs, solve_affine, solve_linear

a = Matrix([[1, "1/2"], [3, 4]])
print("A =", a)
print("det A =", a.det(), " tr A =", a.trace())
print("A^-1 =", a.inverse())

# det(tI - A) = t^2 - e1 t + e2
e1, e2 = char_poly_coeffs(a)
print("e1, e2 =", e1, e2)
print("Cayley-Hamilton holds:", (a @ a - a * e1 + Matrix.identity(2) * e2).is_zero())

# kernel of x + y = 0, one vector per free column
print("kernel of x+y=0:", solve_linear([[1, 1]], 2))
print("solve x+2y=3, y=1:", solve_affine([[1, 2], [0, 1]], [3, 1], 2))

"""Evaluating at matrix tuples, generation, and simultaneous conjugacy."""

from pitrace import (
    IdealPresentation,
    Matrix,
    MatrixTuple,
    conjugate_test,
    evaluate,
    generates,
    ideal_dichotomy,
    parse,
    span_chain,
)

E12, E21 = Matrix.unit(1, 2, 2), Matrix.unit(2, 1, 2)
a = MatrixTuple([E12, E21])

r = evaluate(parse("[X1,X2]^2"), a)
print("[X1,X2]^2 at (E12, E21):", r.value, "scalar:", r.scalar)

print("span chain:", span_chain(a), "-> generates:", generates(a))
d = MatrixTuple([Matrix.diag(1, 2), Matrix.diag(3, 4)])
print("two diagonal matrices:", span_chain(d), "-> generates:", generates(d))

g = Matrix([[1, 1], [0, 1]])
cert = conjugate_test(a, a.conjugate_by(g))
print("conjugate:", cert.conjugate, "witness:", cert.witness)

b = MatrixTuple([E12, E21 + E12])
print("(E12, E21+E12) conjugate to (E12, E21)?", conjugate_test(a, b).conjugate)

# an ideal either kills a generating point or fills all of M_n there
J = IdealPresentation(2, 2, [parse(t, m=2) for t in ("X1*X2 + X2*X1", "X1^2 - 1", "X2^2 - 1")])
pauli = MatrixTuple([E12 + E21, Matrix.diag(1, -1)])
print("Pauli pair:", ideal_dichotomy(J, pauli).value, " (E12, E21):", ideal_dichotomy(J, a).value)

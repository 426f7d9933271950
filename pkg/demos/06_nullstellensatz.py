"""Ideals of finitely many orbits, truncated by degree."""

from pitrace import (
    Matrix,
    MatrixTuple,
    ideal_of_points,
    nullstellensatz_experiment,
    separate,
)

E12, E21 = Matrix.unit(1, 2, 2), Matrix.unit(2, 1, 2)
a = MatrixTuple([E12, E21])

for d in (1, 2):
    ide = ideal_of_points([a], d)
    print(f"d={d}: ambient {ide.ambient_dim}, kernel {ide.kernel_dim}:", [str(p) for p in ide.basis])

target = MatrixTuple([E12, E21 + E12])
print("separating witness:", separate([a], target, 2))
print("swap conjugate:", separate([a], MatrixTuple([E21, E12]), 2))

g = Matrix([[2, 1], [1, 1]])
rep = nullstellensatz_experiment([a], [a.conjugate_by(g), target], 2)
for v in rep.verdicts:
    print("member" if v["member"] else f"not a member, witness {v['witness']}")
print("agrees with conjugacy:", rep.agrees_with_conjugacy)

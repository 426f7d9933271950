"""Trace fingerprints and the Friedland discriminant for pairs of 2x2 matrices."""

import random

from pitrace import Matrix, MatrixTuple, enumerate_necklaces, fingerprint, friedland, generates
from pitrace.linalg import random_tuple

print("necklaces over 2 letters up to length 3:", enumerate_necklaces(2, 3))

a = MatrixTuple([Matrix.unit(1, 2, 2), Matrix.unit(2, 1, 2)])
print(fingerprint(a, 3).to_text())

# friedland(a) != 0 exactly when the pair generates M_2
rng = random.Random(7)
agree = 0
for _ in range(300):
    b = random_tuple(rng, 2, 2, -5, 5)
    agree += (friedland(b) != 0) == generates(b)
print(f"friedland agrees with generation on {agree}/300 random pairs")

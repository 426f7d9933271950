"""Evaluating trace polynomials at points, and what points see of each other.

Elements of the trace ring are treated as equivariant maps: substituting a
point ``a`` of m matrices gives a matrix ``p(a)``.  This module also decides
whether a point generates the full matrix algebra (span closure from the
identity), whether two generating points are simultaneously conjugate
(intertwiner kernel), and the all-or-nothing behaviour of ideals at
generating points.
"""

import enum
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import DimensionError, InternalConsistencyError, PreconditionError
from .linalg import (
    EchelonBasis,
    Matrix,
    _identity,
    _mm,
    _mtrace,
    _norm,
    lcm_of_denominators,
    solve_linear,
)


@dataclass(frozen=True)
class EvaluationReport:
    value: Matrix
    is_zero: bool
    is_scalar: bool
    scalar: object = None

    @classmethod
    def of(cls, value):
        c = value.scalar_value()
        return cls(value, c == 0, c is not None, c)


def _check_arity(p, a):
    if p.m != a.m:
        raise DimensionError(f"polynomial has {p.m} generators but the point has {a.m} matrices")


def evaluate_rows(p, mats, n):
    """Evaluate ``p`` on raw row tuples; returns the raw rows of the value."""
    cache = {(): _identity(n)}

    def word_value(w):
        v = cache.get(w)
        if v is None:
            v = _mm(word_value(w[:-1]), mats[w[-1] - 1])
            cache[w] = v
        return v

    trace_cache = {}

    def trace_value(w):
        t = trace_cache.get(w)
        if t is None:
            t = trace_cache[w] = _mtrace(word_value(w))
        return t

    # Clear denominators so the accumulation runs over integers when it can.
    denom = lcm_of_denominators(c for _, c in p.items())
    acc = [[0] * n for _ in range(n)]
    for (traces, word), c in p.items():
        c = _norm(c * denom)
        for t in traces:
            c = c * trace_value(t)
        if c == 0:
            continue
        val = word_value(word)
        for i in range(n):
            row, arow = val[i], acc[i]
            for j in range(n):
                if row[j]:
                    arow[j] += c * row[j]
    if denom == 1:
        return tuple(tuple(_norm(x) for x in row) for row in acc)
    return tuple(tuple(_norm(Fraction(x) / denom) for x in row) for row in acc)


def evaluate(p, a):
    """Substitute the point ``a`` into ``p`` and classify the value."""
    _check_arity(p, a)
    return EvaluationReport.of(Matrix._wrap(evaluate_rows(p, a.rows(), a.n)))


def span_chain(a):
    """Dimensions of V_0 = span{I}, V_{k+1} = V_k + sum_i V_k a_i until stable."""
    n = a.n
    basis = EchelonBasis(n * n)
    ident = _identity(n)
    basis.add([x for row in ident for x in row])
    frontier = [ident]
    dims = [1]
    mats = a.rows()
    while frontier:
        new = []
        for v in frontier:
            for x in mats:
                w = _mm(v, x)
                if basis.add([e for row in w for e in row]):
                    new.append(w)
        frontier = new
        if new:
            dims.append(len(basis))
    return dims


def generates(a):
    """True when the matrices of ``a`` generate M_n as a unital algebra."""
    return span_chain(a)[-1] == a.n * a.n


@dataclass(frozen=True)
class ConjugacyCertificate:
    conjugate: bool
    witness: Matrix | None
    intertwiner_dim: int
    scope: str = "exact over Q; valid over the algebraic closure"


def intertwiners(a, b):
    """Basis of {g : g a_i = b_i g for all i}, as matrices."""
    if (a.m, a.n) != (b.m, b.n):
        raise DimensionError("points must share (m, n)")
    n = a.n
    nv = n * n
    eqs = []
    for ai, bi in zip(a.rows(), b.rows()):
        for p in range(n):
            for q in range(n):
                # (g a_i)_pq - (b_i g)_pq with g_rs at index r*n + s
                row = [0] * nv
                for k in range(n):
                    row[p * n + k] += ai[k][q]
                    row[k * n + q] -= bi[p][k]
                eqs.append(row)
    return [Matrix._wrap(tuple(tuple(v[i * n:(i + 1) * n]) for i in range(n))) for v in solve_linear(eqs, nv)]


def conjugate_test(a, b, check_generation=True):
    """Decide whether generating points ``a`` and ``b`` lie in one orbit.

    Schur's lemma makes the intertwiner space of two irreducible tuples
    at most one-dimensional, and any nonzero intertwiner invertible.
    """
    if check_generation and not (generates(a) and generates(b)):
        raise PreconditionError("conjugacy is decided only for generating tuples")
    basis = intertwiners(a, b)
    if not basis:
        return ConjugacyCertificate(False, None, 0)
    if len(basis) > 1:
        raise InternalConsistencyError(f"intertwiner space of dimension {len(basis)}; inputs do not generate")
    g = basis[0]
    if g.det() == 0:
        raise InternalConsistencyError("nonzero intertwiner is singular; inputs do not generate")
    return ConjugacyCertificate(True, g, 1)


@dataclass(frozen=True)
class IdealPresentation:
    """Generators of a two-sided ideal of the free algebra, with (m, n)."""

    m: int
    n: int
    generators: tuple = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "generators", tuple(self.generators))
        for g in self.generators:
            if g.m != self.m:
                raise DimensionError("ideal generators must share m")


class ImageType(enum.Enum):
    ZERO_IMAGE = "ZeroImage"
    FULL_IMAGE = "FullImage"


def ideal_dichotomy(J, a):
    """J(a) is (0) or all of M_n at a generating point; say which."""
    if not generates(a):
        raise PreconditionError("the dichotomy holds only at generating points")
    for g in J.generators:
        if not evaluate(g, a).is_zero:
            return ImageType.FULL_IMAGE
    return ImageType.ZERO_IMAGE

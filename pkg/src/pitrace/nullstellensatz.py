"""Point-level experiments with ideals of finite unions of orbits.

Every ideal here is truncated by degree: ``ideal_of_points(X, d)`` returns
a basis of the free-algebra elements of degree <= d vanishing on X.  The
truncation degree is part of every result and nothing claims completeness
beyond it.
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from .algebra import TracePolynomial, to_expression, words_up_to
from .central import dedup_points
from .errors import InternalConsistencyError, PreconditionError, ResourceError, max_terms
from .evaluation import conjugate_test, evaluate, generates
from .linalg import _identity, _mm, solve_linear
from .tuplefile import matrix_to_json


@dataclass(frozen=True)
class PointIdealBasis:
    degree_bound: int
    basis: tuple
    ambient_dim: int
    kernel_dim: int
    rank: int
    words: tuple
    representatives: tuple
    duplicates: dict

    def as_dict(self):
        return {
            "degreeBound": self.degree_bound,
            "ambientDim": self.ambient_dim,
            "kernelDim": self.kernel_dim,
            "rank": self.rank,
            "basis": [to_expression(p) for p in self.basis],
            "representatives": list(self.representatives),
            "duplicates": {str(k): v for k, v in self.duplicates.items()},
        }


def _check_points(points, m=None, n=None):
    if points:
        m0, n0 = points[0].m, points[0].n
        if (m is not None and m != m0) or (n is not None and n != n0):
            raise PreconditionError("points disagree with the given (m, n)")
        m, n = m0, n0
    if m is None or n is None:
        raise PreconditionError("m and n are required when there are no points")
    for i, a in enumerate(points):
        if (a.m, a.n) != (m, n):
            raise PreconditionError("all points must share (m, n)")
        if not generates(a):
            raise PreconditionError(f"point {i} does not generate M_{n}")
    return m, n


def ideal_of_points(points, d, m=None, n=None):
    """Degree-truncated ideal of the orbits of ``points``.

    The words of length <= d (empty word included, graded lex) span the
    ambient space; the basis is the kernel of their joint evaluation at one
    representative per orbit, in the echelon convention of ``solve_linear``.
    """
    m, n = _check_points(points, m, n)
    count = sum(m**k for k in range(d + 1))
    if count > max_terms():
        raise ResourceError(f"{count} words of length <= {d} exceed the ceiling")
    reps, dups = dedup_points(points)
    kept = [points[i].rows() for i in reps]
    words = list(words_up_to(m, d))
    caches = [{(): _identity(n)} for _ in kept]
    columns = []
    for w in words:
        col = []
        for cache, mats in zip(caches, kept):
            if w:
                cache[w] = _mm(cache[w[:-1]], mats[w[-1] - 1])
            col.extend(x for row in cache[w] for x in row)
        columns.append(col)
    equations = [list(r) for r in zip(*columns)] if kept else []
    kernel = solve_linear(equations, len(words))
    basis = tuple(
        TracePolynomial._trusted(m, {((), w): c for w, c in zip(words, v) if c != 0}) for v in kernel
    )
    return PointIdealBasis(
        degree_bound=d,
        basis=basis,
        ambient_dim=len(words),
        kernel_dim=len(basis),
        rank=len(words) - len(basis),
        words=tuple(words),
        representatives=tuple(reps),
        duplicates=dups,
    )


@dataclass(frozen=True)
class NotSeparable:
    reason: str  # "conjugate" or "bound_exhausted"
    degree_bound: int
    conjugate_to: int | None = None

    def __bool__(self):
        return False


def separate(points, target, d_max):
    """First element of degree <= d_max vanishing on ``points`` but not on ``target``.

    Returns a TracePolynomial, or NotSeparable when the target is conjugate
    to a point or no witness exists up to ``d_max``.  The latter only means
    ``d_max`` was too small.
    """
    _check_points(list(points) + [target])
    for i, a in enumerate(points):
        if conjugate_test(a, target, check_generation=False).conjugate:
            return NotSeparable("conjugate", d_max, i)
    for d in range(1, d_max + 1):
        ideal = ideal_of_points(points, d, target.m, target.n)
        for p in ideal.basis:
            if not evaluate(p, target).is_zero:
                return p
    return NotSeparable("bound_exhausted", d_max)


def zero_locus_member(J, a):
    """Whether a generating point lies in the zero locus of the ideal J."""
    if not generates(a):
        raise PreconditionError("zero-locus membership is decided only at generating points")
    return all(evaluate(g, a).is_zero for g in J.generators)


@dataclass
class NullstellensatzReport:
    degree_bound: int
    ideal: PointIdealBasis
    sound: bool
    verdicts: list

    @property
    def agrees_with_conjugacy(self):
        return all(v["agrees"] for v in self.verdicts)

    def as_dict(self):
        return {
            "degreeBound": self.degree_bound,
            "ideal": self.ideal.as_dict(),
            "sound": self.sound,
            "agreesWithConjugacy": self.agrees_with_conjugacy,
            "targets": self.verdicts,
            "scope": f"membership is tested against the degree <= {self.degree_bound} "
            "part of the ideal; a member that is not conjugate means the degree is too small",
        }


def _target_verdict(ideal, points, target):
    witness = next((p for p in ideal.basis if not evaluate(p, target).is_zero), None)
    conj = next(
        (i for i, a in enumerate(points) if conjugate_test(a, target, check_generation=False).conjugate),
        None,
    )
    member = witness is None
    verdict = {
        "member": member,
        "witness": to_expression(witness) if witness is not None else None,
        "witnessValue": matrix_to_json(evaluate(witness, target).value) if witness is not None else None,
        "conjugateTo": conj,
        "agrees": member == (conj is not None),
    }
    if not member and conj is not None:
        raise InternalConsistencyError("an element of I(X) is nonzero at a conjugate of a point of X")
    return verdict


def nullstellensatz_experiment(points, targets, d, jobs=1):
    """Test Z(I(X)) = X on finitely many targets at truncation degree d."""
    m, n = _check_points(list(points) + list(targets))
    ideal = ideal_of_points(points, d, m, n)
    sound = all(evaluate(p, a).is_zero for p in ideal.basis for a in points)
    if not sound:
        raise InternalConsistencyError("an ideal basis element does not vanish on the defining points")
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            verdicts = list(pool.map(lambda t: _target_verdict(ideal, points, t), targets))
    else:
        verdicts = [_target_verdict(ideal, points, t) for t in targets]
    return NullstellensatzReport(d, ideal, sound, verdicts)

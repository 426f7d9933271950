"""Polynomial identities and central polynomials of M_n.

``is_pi`` decides whether a free-algebra element vanishes on all of M_n,
either exactly (polarize, then substitute every tuple of matrix units) or
by seeded random evaluation.  ``is_central`` checks the definition of a
central polynomial; ``central_for_points`` builds a central polynomial
that is nonzero at finitely many prescribed generating points by
interpolating its arguments.
"""

import random
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import factorial

import numpy as np

from .algebra import TracePolynomial, multilinearize
from .builtins import comm_sq, formanek
from .errors import (
    InternalConsistencyError,
    PreconditionError,
    ResourceError,
    max_substitutions,
    max_terms,
)
from .evaluation import conjugate_test, evaluate, generates
from .linalg import (
    EchelonBasis,
    Matrix,
    MatrixTuple,
    _identity,
    _mm,
    lcm_of_denominators,
    random_tuple,
    scalar_str,
    solve_affine,
)
from .tuplefile import tuple_to_dict

DEFAULT_ENTRY_RANGE = 10**6
EXACT = "exact"
RANDOM = "random"


@dataclass(frozen=True)
class PIVerdict:
    is_pi: bool
    mode: str  # "deterministic" or "randomized"
    n: int
    witness: MatrixTuple | None = None
    trials: int | None = None
    seed: int | None = None
    entry_range: int | None = None
    failure_bound: Fraction | None = None
    confidence: str = ""
    downgraded: bool = False
    substitutions: int = 0
    ceiling: int | None = None

    def as_dict(self):
        return {
            "isPI": self.is_pi,
            "mode": self.mode,
            "n": self.n,
            "witness": tuple_to_dict(self.witness) if self.witness is not None else None,
            "trials": self.trials,
            "seed": self.seed,
            "entryRange": self.entry_range,
            "failureBound": scalar_str(self.failure_bound) if self.failure_bound is not None else None,
            "confidence": self.confidence,
            "downgraded": self.downgraded,
            "substitutions": self.substitutions,
            "ceiling": self.ceiling,
        }


def _unit_value(words, assignment):
    """Sum of coefficient * (product of matrix units) for a multilinear polynomial."""
    acc = {}
    for word, c in words:
        r0, col = assignment[word[0]]
        for v in word[1:]:
            r, s = assignment[v]
            if r != col:
                break
            col = s
        else:
            key = (r0, col)
            acc[key] = acc.get(key, 0) + c
    return any(v != 0 for v in acc.values())


def _multilinear_vanishes(q, n):
    """Exhaustively substitute matrix units into a multilinear polynomial."""
    words = []
    const = 0
    for (_, word), c in q.items():
        if word:
            words.append((tuple(v - 1 for v in word), c))
        else:
            const += c
    if const != 0:
        return False
    k = max((max(w) + 1 for w, _ in words), default=0)
    units = [(i, j) for i in range(n) for j in range(n)]
    for assignment in product(units, repeat=k):
        if _unit_value(words, assignment):
            return False
    return True


def exact_cost(p, n):
    """Matrix-unit substitutions times terms needed by the exact PI check."""
    groups = Counter()
    for (_, word), _ in p.items():
        degs = [0] * p.m
        for letter in word:
            degs[letter - 1] += 1
        groups[tuple(degs)] += 1
    cost = 0
    for degs, count in groups.items():
        terms = count
        for d in degs:
            terms *= factorial(d)
        cost += (n * n) ** sum(degs) * terms
    return cost


def _random_point(rng, m, n, bound):
    return random_tuple(rng, m, n, -bound, bound)


def find_witness(p, n, seed=0, attempts=2000):
    """A point where ``p`` does not vanish, for ``p`` known not to be a PI of M_n."""
    m = p.m
    units = [Matrix.unit(i, j, n) for i in range(1, n + 1) for j in range(1, n + 1)]
    if len(units) ** m * max(len(p), 1) <= 10**6:
        for combo in product(units, repeat=m):
            a = MatrixTuple(combo)
            if not evaluate(p, a).is_zero:
                return a
    rng = random.Random(seed)
    for k in range(attempts):
        a = _random_point(rng, m, n, 1 + k // 100)
        if not evaluate(p, a).is_zero:
            return a
    raise InternalConsistencyError("no nonvanishing point found for a polynomial that is not an identity")


def is_pi(p, n, mode=EXACT, trials=64, seed=0, entry_range=DEFAULT_ENTRY_RANGE, ceiling=None):
    """Decide whether the trace-free polynomial ``p`` is an identity of M_n.

    In exact mode the polarized components are checked on every tuple of
    matrix units; when that would exceed ``ceiling`` substitutions the
    check is switched to randomized mode and the verdict says so.
    """
    if not p.is_trace_free():
        raise PreconditionError("is_pi expects a trace-free polynomial")
    if n < 1:
        raise PreconditionError("n must be positive")
    if mode not in (EXACT, RANDOM):
        raise ValueError(f"mode must be {EXACT!r} or {RANDOM!r}")
    ceiling = max_substitutions() if ceiling is None else ceiling
    downgraded = False
    if mode == EXACT:
        cost = exact_cost(p, n)
        if cost <= ceiling:
            comps = multilinearize(p)
            for q in comps:
                if not _multilinear_vanishes(q, n):
                    return PIVerdict(
                        False, "deterministic", n, witness=find_witness(p, n, seed),
                        substitutions=cost, ceiling=ceiling,
                        confidence="exact: a polarized component is nonzero on matrix units",
                    )
            return PIVerdict(
                True, "deterministic", n, substitutions=cost, ceiling=ceiling,
                confidence="exact: every polarized component vanishes on all matrix-unit tuples",
            )
        downgraded = True

    rng = random.Random(seed)
    for _ in range(trials):
        a = _random_point(rng, p.m, n, entry_range)
        if not evaluate(p, a).is_zero:
            return PIVerdict(
                False, "randomized", n, witness=a, trials=trials, seed=seed,
                entry_range=entry_range, downgraded=downgraded, ceiling=ceiling,
                confidence="certain: the witness evaluates to a nonzero matrix",
            )
    size = 2 * entry_range + 1
    bound = min(Fraction(p.degree(), size), Fraction(1)) ** trials
    return PIVerdict(
        True, "randomized", n, trials=trials, seed=seed, entry_range=entry_range,
        failure_bound=bound, downgraded=downgraded, ceiling=ceiling,
        confidence=(
            f"probabilistic: a non-identity of degree {p.degree()} survives {trials} independent "
            f"trials with entries uniform in [-{entry_range}, {entry_range}] with probability "
            f"at most ({p.degree()}/{size})^{trials}"
        ),
    )


@dataclass(frozen=True)
class CentralityVerdict:
    is_central: bool
    n: int
    checks: dict = field(default_factory=dict)

    def as_dict(self):
        out = {"isCentral": self.is_central, "n": self.n, "checks": {}}
        for name, value in self.checks.items():
            out["checks"][name] = value.as_dict() if isinstance(value, PIVerdict) else value
        return out


def is_central(p, n, mode=EXACT, trials=64, seed=0, entry_range=DEFAULT_ENTRY_RANGE, ceiling=None):
    """Check that ``p`` is a central polynomial for n x n matrices.

    The verdict uses: zero constant term, [p, x_{m+1}] an identity of M_n,
    and p itself not an identity of M_n.  When n >= 2 the alternative
    characterization (identity of M_{n-1} instead of zero constant term)
    is evaluated too; disagreement raises InternalConsistencyError.
    """
    opts = dict(mode=mode, trials=trials, seed=seed, entry_range=entry_range, ceiling=ceiling)
    if not p.is_trace_free():
        raise PreconditionError("is_central expects a trace-free polynomial")
    lifted = p.with_generators(p.m + 1)
    x = TracePolynomial.generator(p.m + 1, p.m + 1)
    comm = is_pi(x * lifted - lifted * x, n, **opts)
    ident = is_pi(p, n, **opts)
    checks = {
        "constant_term_zero": p.constant_term() == 0,
        "evaluations_central": comm,
        "not_identically_zero": not ident.is_pi,
        "nonvanishing_witness": ident,
    }
    central = checks["constant_term_zero"] and comm.is_pi and not ident.is_pi
    if n >= 2:
        smaller = is_pi(p, n - 1, **opts)
        checks["pi_for_smaller"] = smaller
        other_route = smaller.is_pi and comm.is_pi and not ident.is_pi
        checks["routes_agree"] = other_route == central
        if other_route != central:
            raise InternalConsistencyError(
                f"centrality characterizations disagree for n={n}: "
                f"constant-term route {central}, smaller-size route {other_route}"
            )
    return CentralityVerdict(central, n, checks)


def spot_check_identity(p, n, samples=10**4, seed=0, bound=10):
    """Evaluate trace-free ``p`` at ``samples`` random integer points at once.

    Entries are uniform in [-bound, bound].  Arithmetic is exact: int64 is
    used only when an a-priori bound rules out overflow, otherwise Python
    integers.  Returns the indices of samples where ``p`` is nonzero.
    """
    if not p.is_trace_free():
        raise PreconditionError("spot checks need a trace-free polynomial")
    rng = np.random.default_rng(seed)
    denom = lcm_of_denominators(c for _, c in p.items())
    coeffs = {w: int(c * denom) for (_, w), c in p.items()}
    max_len = max((len(w) for w in coeffs), default=0)
    worst = sum(abs(c) for c in coeffs.values()) * n ** max(max_len - 1, 0) * bound**max_len
    dtype = np.int64 if worst < 2**62 else object
    mats = [rng.integers(-bound, bound + 1, size=(samples, n, n)).astype(dtype) for _ in range(p.m)]
    ident = np.broadcast_to(np.eye(n, dtype=np.int64).astype(dtype), (samples, n, n))
    cache = {(): ident}

    def word_value(w):
        v = cache.get(w)
        if v is None:
            v = cache[w] = np.matmul(word_value(w[:-1]), mats[w[-1] - 1])
        return v

    acc = np.zeros((samples, n, n), dtype=dtype)
    for w in sorted(coeffs, key=lambda w: (len(w), w)):
        acc = acc + coeffs[w] * word_value(w)
    bad = np.nonzero(np.any(acc != 0, axis=(1, 2)))[0]
    return [int(i) for i in bad]


@dataclass(frozen=True)
class CentralConstruction:
    poly: TracePolynomial
    verdict: CentralityVerdict
    seed: int
    trials: int


def _central_candidate(n):
    if n == 1:
        return TracePolynomial.generator(1, 1)
    if n == 2:
        return comm_sq()
    return formanek(n)


@lru_cache(maxsize=None)
def verified_central(n, trials=128, seed=0):
    """Central polynomial for n x n matrices together with its verification."""
    if n < 1:
        raise PreconditionError("n must be positive")
    p = _central_candidate(n)
    verdict = is_central(p, n, mode=EXACT, trials=trials, seed=seed)
    if not verdict.is_central:
        raise InternalConsistencyError(f"constructed polynomial failed central verification for n={n}")
    return CentralConstruction(p, verdict, seed, trials)


def construct_central(n, trials=128, seed=0):
    return verified_central(n, trials, seed).poly


# ---------------------------------------------------------------------------
# interpolation at finitely many points


def _target_candidates(c, n, seed):
    if n == 1:
        yield MatrixTuple([Matrix([[1]])])
        return
    if n == 2 and c.m == 2:
        yield MatrixTuple([Matrix.unit(1, 2, 2), Matrix.unit(2, 1, 2)])
    # x = diag(1..n) and a cycle of matrix units for the y's
    if c.m == n + 1:
        ys = [Matrix.unit(i, i % n + 1, n) for i in range(1, n + 1)]
        yield MatrixTuple([Matrix.diag(*range(1, n + 1))] + ys)
    rng = random.Random(seed)
    for k in range(10**4):
        yield random_tuple(rng, c.m, n, -1 - k // 50, 1 + k // 50)


def evaluation_targets(c, n, seed=0):
    """Fixed (b_1..b_N) with c(b) nonzero, searched deterministically."""
    for b in _target_candidates(c, n, seed):
        if not evaluate(c, b).is_zero:
            return b
    raise InternalConsistencyError("no point found where the central polynomial is nonzero")


@dataclass
class PointInterpolation:
    poly: TracePolynomial
    base: TracePolynomial
    targets: MatrixTuple
    interpolants: list
    representatives: list  # indices into the input of the kept points
    duplicates: dict  # input index -> index of the representative it is conjugate to
    reports: list  # EvaluationReport per input point
    words_used: int
    seed: int

    def as_dict(self):
        from .tuplefile import matrix_to_json

        return {
            "poly": str(self.poly),
            "base": str(self.base),
            "targets": tuple_to_dict(self.targets),
            "interpolants": [str(q) for q in self.interpolants],
            "representatives": self.representatives,
            "duplicates": {str(k): v for k, v in self.duplicates.items()},
            "reports": [
                {
                    "isScalar": r.is_scalar,
                    "isZero": r.is_zero,
                    "scalar": scalar_str(r.scalar) if r.is_scalar else None,
                    "value": matrix_to_json(r.value),
                }
                for r in self.reports
            ],
            "wordsUsed": self.words_used,
            "seed": self.seed,
        }


def dedup_points(points):
    """Keep one point per orbit; map each dropped index to its representative."""
    reps = []
    dups = {}
    for i, a in enumerate(points):
        for j in reps:
            if conjugate_test(points[j], a, check_generation=False).conjugate:
                dups[i] = j
                break
        else:
            reps.append(i)
    return reps, dups


def interpolation_words(points, max_words=None):
    """Words (graded lex, empty word first) whose joint values span (M_n)^r.

    Returns the list of words enumerated and their joint-value vectors.
    """
    n, m = points[0].n, points[0].m
    dim = len(points) * n * n
    max_words = max_words or max_terms()
    basis = EchelonBasis(dim)
    cache = [{(): _identity(n)} for _ in points]
    mats = [a.rows() for a in points]
    words, vectors = [], []
    length, grew = 0, True
    while len(basis) < dim:
        if not grew:
            raise InternalConsistencyError(
                f"word span stabilized at dimension {len(basis)} < {dim}; "
                "conjugate or non-generating points slipped through"
            )
        grew = False
        for w in product(range(1, m + 1), repeat=length):
            vec = []
            for cache_i, mats_i in zip(cache, mats):
                v = cache_i[w] = _mm(cache_i[w[:-1]], mats_i[w[-1] - 1]) if w else cache_i[()]
                vec.extend(x for row in v for x in row)
            words.append(w)
            vectors.append(vec)
            if len(words) > max_words:
                raise ResourceError("word enumeration exceeded its ceiling")
            if basis.add(vec):
                grew = True
                if len(basis) == dim:
                    break
        length += 1
    return words, vectors


def central_for_points(points, seed=0, trials=128):
    """A central polynomial taking a nonzero scalar value at every point.

    Conjugate duplicates are dropped first.  Each argument of the base
    central polynomial c is replaced by a polynomial p_j with
    p_j(A_i) = b_j for every kept point A_i, where c(b) != 0.
    """
    if not points:
        raise PreconditionError("need at least one point")
    n, m = points[0].n, points[0].m
    for i, a in enumerate(points):
        if (a.n, a.m) != (n, m):
            raise PreconditionError("all points must share (m, n)")
        if not generates(a):
            raise PreconditionError(f"point {i} does not generate M_{n}")
    reps, dups = dedup_points(points)
    kept = [points[i] for i in reps]
    base = construct_central(n, trials=trials, seed=seed)
    targets = evaluation_targets(base, n, seed)
    words, vectors = interpolation_words(kept)
    # columns are words, rows are coordinates of (M_n)^r
    system = [list(col) for col in zip(*vectors)]
    interpolants = []
    for b in targets:
        rhs = list(b.flat()) * len(kept)
        x = solve_affine(system, rhs, len(words))
        if x is None:
            raise InternalConsistencyError("interpolation system has no solution")
        terms = {((), w): c for w, c in zip(words, x) if c != 0}
        interpolants.append(TracePolynomial(m, terms))
    s = base.substitute(interpolants)
    reports = [evaluate(s, a) for a in points]
    for i, r in enumerate(reports):
        if not r.is_scalar or r.is_zero:
            raise InternalConsistencyError(f"interpolated polynomial is not a nonzero scalar at point {i}")
    return PointInterpolation(s, base, targets, interpolants, reps, dups, reports, len(words), seed)

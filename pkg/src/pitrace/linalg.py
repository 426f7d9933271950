"""Exact rational scalars, small dense matrices and elimination kernels.

Scalars are Python ``int`` or ``fractions.Fraction``.  Every value that
leaves this module is normalized so that integral rationals are plain
``int``; this keeps integer workloads on the fast path without giving up
exactness anywhere.
"""

from fractions import Fraction
from math import lcm

from .errors import DimensionError, PreconditionError

Scalar = int | Fraction


def as_scalar(x):
    """Convert ``x`` to a normalized exact scalar.

    Accepts ints, Fractions and strings such as ``"3"`` or ``"-2/7"``.
    Floats are rejected: they would smuggle rounding into exact code.
    """
    if isinstance(x, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(x, int):
        return x
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else x
    if isinstance(x, str):
        try:
            return _norm(Fraction(x.strip()))
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"not a rational number: {x!r}") from exc
    raise TypeError(f"cannot use {type(x).__name__} as an exact scalar")


def _norm(x):
    if type(x) is int:
        return x
    return x.numerator if x.denominator == 1 else x


def scalar_str(x):
    x = _norm(x)
    if type(x) is int:
        return str(x)
    return f"{x.numerator}/{x.denominator}"


# ---------------------------------------------------------------------------
# raw row-tuple kernels (no validation; used on hot paths)


def _mm(a, b):
    cols = tuple(zip(*b))
    return tuple(
        tuple(_norm(sum(x * y for x, y in zip(row, col))) for col in cols) for row in a
    )


def _madd(a, b):
    return tuple(tuple(_norm(x + y) for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def _msub(a, b):
    return tuple(tuple(_norm(x - y) for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def _mscale(c, a):
    return tuple(tuple(_norm(c * x) for x in row) for row in a)


def _mtrace(a):
    return _norm(sum(a[i][i] for i in range(len(a))))


def _identity(n):
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def _zero(n):
    return tuple((0,) * n for _ in range(n))


class Matrix:
    """An immutable ``n x n`` matrix over the rationals."""

    __slots__ = ("n", "rows")

    def __init__(self, rows):
        rows = tuple(tuple(as_scalar(x) for x in row) for row in rows)
        n = len(rows)
        if n == 0 or any(len(r) != n for r in rows):
            raise DimensionError("matrix must be square and nonempty")
        self.n = n
        self.rows = rows

    @classmethod
    def _wrap(cls, rows):
        obj = object.__new__(cls)
        obj.n = len(rows)
        obj.rows = rows
        return obj

    @classmethod
    def identity(cls, n):
        return cls._wrap(_identity(n))

    @classmethod
    def zero(cls, n):
        return cls._wrap(_zero(n))

    @classmethod
    def unit(cls, i, j, n):
        """Matrix unit E_ij (1-based indices)."""
        if not (1 <= i <= n and 1 <= j <= n):
            raise DimensionError(f"E_{i}{j} out of range for n={n}")
        return cls._wrap(
            tuple(tuple(1 if (r, c) == (i - 1, j - 1) else 0 for c in range(n)) for r in range(n))
        )

    @classmethod
    def diag(cls, *entries):
        n = len(entries)
        return cls([[entries[i] if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def scalar(cls, c, n):
        return cls._wrap(_mscale(as_scalar(c), _identity(n)))

    def _check(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        if other.n != self.n:
            raise DimensionError(f"size mismatch: {self.n} vs {other.n}")
        return None

    def __add__(self, other):
        bad = self._check(other)
        if bad is NotImplemented:
            return bad
        return Matrix._wrap(_madd(self.rows, other.rows))

    def __sub__(self, other):
        bad = self._check(other)
        if bad is NotImplemented:
            return bad
        return Matrix._wrap(_msub(self.rows, other.rows))

    def __neg__(self):
        return Matrix._wrap(_mscale(-1, self.rows))

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return Matrix._wrap(_mscale(other, self.rows))
        bad = self._check(other)
        if bad is NotImplemented:
            return bad
        return Matrix._wrap(_mm(self.rows, other.rows))

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return Matrix._wrap(_mscale(other, self.rows))
        return NotImplemented

    __matmul__ = __mul__

    def __pow__(self, k):
        if k < 0:
            return self.inverse() ** (-k)
        result = _identity(self.n)
        base = self.rows
        while k:
            if k & 1:
                result = _mm(result, base)
            base = _mm(base, base)
            k >>= 1
        return Matrix._wrap(result)

    def __eq__(self, other):
        return isinstance(other, Matrix) and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __repr__(self):
        body = ", ".join("[" + ", ".join(scalar_str(x) for x in r) + "]" for r in self.rows)
        return f"Matrix([{body}])"

    def trace(self):
        return _mtrace(self.rows)

    def flat(self):
        return tuple(x for row in self.rows for x in row)

    def is_zero(self):
        return all(x == 0 for row in self.rows for x in row)

    def scalar_value(self):
        """Return c if the matrix equals c*I, else None."""
        c = self.rows[0][0]
        for i, row in enumerate(self.rows):
            for j, x in enumerate(row):
                if x != (c if i == j else 0):
                    return None
        return c

    def transpose(self):
        return Matrix._wrap(tuple(zip(*self.rows)))

    def det(self):
        return char_poly_coeffs(self)[-1]

    def inverse(self):
        n = self.n
        aug = [list(row) + [1 if i == j else 0 for j in range(n)] for i, row in enumerate(self.rows)]
        red, pivots = rref(aug, 2 * n)
        if pivots[:n] != list(range(n)):
            raise ZeroDivisionError("matrix is singular")
        return Matrix._wrap(tuple(tuple(red[i][n:]) for i in range(n)))

    def conjugate_by(self, g):
        """g * self * g^-1."""
        return g * self * g.inverse()


def mat_arith(a, b, op):
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown matrix operation {op!r}")


def trace(a):
    return a.trace()


def char_poly_coeffs(a):
    """Elementary symmetric functions (e_1, ..., e_n) of the eigenvalues.

    Computed from power sums tr(a^k) with Newton's identities, so the
    characteristic polynomial is t^n - e_1 t^(n-1) + ... + (-1)^n e_n.
    """
    n = a.n
    powers = []
    p = a.rows
    for _ in range(n):
        powers.append(_mtrace(p))
        p = _mm(p, a.rows)
    return newton_elementary(powers)


def newton_elementary(power_sums):
    """Map power sums p_1..p_n to elementary symmetric e_1..e_n.

    Works for any coefficient type supporting ring arithmetic and
    division by an int via Fraction multiplication.
    """
    e = [1]
    for k in range(1, len(power_sums) + 1):
        acc = None
        for i in range(1, k + 1):
            term = e[k - i] * power_sums[i - 1]
            if i % 2 == 0:
                term = -term
            acc = term if acc is None else acc + term
        e.append(acc * Fraction(1, k))
    return [_norm(x) if isinstance(x, (int, Fraction)) else x for x in e[1:]]


class MatrixTuple:
    """A point (a_1, ..., a_m) of m matrices sharing side length n."""

    __slots__ = ("n", "m", "matrices")

    def __init__(self, matrices):
        mats = tuple(x if isinstance(x, Matrix) else Matrix(x) for x in matrices)
        if not mats:
            raise DimensionError("a matrix tuple needs at least one matrix")
        n = mats[0].n
        if any(x.n != n for x in mats):
            raise DimensionError("all matrices in a tuple must share the same size")
        self.n = n
        self.m = len(mats)
        self.matrices = mats

    def __iter__(self):
        return iter(self.matrices)

    def __len__(self):
        return self.m

    def __getitem__(self, i):
        return self.matrices[i]

    def __eq__(self, other):
        return isinstance(other, MatrixTuple) and self.matrices == other.matrices

    def __hash__(self):
        return hash(self.matrices)

    def __repr__(self):
        return f"MatrixTuple({list(self.matrices)!r})"

    def conjugate_by(self, g):
        gi = g.inverse()
        return MatrixTuple([g * a * gi for a in self.matrices])

    def rows(self):
        return [a.rows for a in self.matrices]


# ---------------------------------------------------------------------------
# elimination


def rref(rows, ncols):
    """Reduced row echelon form by Gauss-Jordan elimination.

    Pivots are chosen in the leftmost available column, taking the first
    row with a nonzero entry there, and scaled to 1.  Returns the nonzero
    reduced rows and the list of pivot columns.  The input is not mutated.
    """
    m = [[_norm(Fraction(x)) if not isinstance(x, int) else x for x in r] for r in rows]
    for r in m:
        if len(r) != ncols:
            raise DimensionError(f"row of length {len(r)} in a system with {ncols} columns")
    pivots = []
    top = 0
    for col in range(ncols):
        pr = next((i for i in range(top, len(m)) if m[i][col] != 0), None)
        if pr is None:
            continue
        m[top], m[pr] = m[pr], m[top]
        piv = m[top][col]
        if piv != 1:
            inv = Fraction(1, 1) / piv
            m[top] = [_norm(x * inv) for x in m[top]]
        prow = m[top]
        for i in range(len(m)):
            if i != top:
                f = m[i][col]
                if f != 0:
                    m[i] = [_norm(x - f * y) for x, y in zip(m[i], prow)]
        pivots.append(col)
        top += 1
        if top == len(m):
            break
    return m[:top], pivots


def rank(rows, ncols):
    return len(rref(rows, ncols)[1])


def solve_linear(equations, nvars):
    """Basis of the solutions of the homogeneous system ``equations . x = 0``.

    One basis vector per free column, in increasing column order: it has
    a 1 at its free column, zeros at the other free columns, and the
    negated reduced entries at the pivot columns.
    """
    red, pivots = rref(equations, nvars) if equations else ([], [])
    pivset = set(pivots)
    basis = []
    for f in range(nvars):
        if f in pivset:
            continue
        v = [0] * nvars
        v[f] = 1
        for row, p in zip(red, pivots):
            v[p] = _norm(-row[f])
        basis.append(tuple(v))
    return basis


def solve_affine(equations, rhs, nvars):
    """One solution of ``equations . x = rhs`` with free variables set to 0, or None."""
    if len(equations) != len(rhs):
        raise DimensionError("equations and right-hand side differ in length")
    if not equations:
        return tuple([0] * nvars)
    aug = [list(r) + [b] for r, b in zip(equations, rhs)]
    red, pivots = rref(aug, nvars + 1)
    if pivots and pivots[-1] == nvars:
        return None
    x = [0] * nvars
    for row, p in zip(red, pivots):
        x[p] = _norm(row[nvars])
    return tuple(x)


class EchelonBasis:
    """Incrementally maintained reduced basis of a subspace of Q^dim."""

    def __init__(self, dim):
        self.dim = dim
        self._rows = {}  # pivot column -> row with 1 at pivot

    def __len__(self):
        return len(self._rows)

    def reduce(self, v):
        v = list(v)
        for col, row in self._rows.items():
            f = v[col]
            if f != 0:
                v = [_norm(x - f * y) for x, y in zip(v, row)]
        return v

    def add(self, v):
        """Insert ``v``; return True when it enlarged the span."""
        r = self.reduce(v)
        piv = next((i for i, x in enumerate(r) if x != 0), None)
        if piv is None:
            return False
        inv = Fraction(1) / r[piv]
        r = [_norm(x * inv) for x in r]
        for col, row in list(self._rows.items()):
            f = row[piv]
            if f != 0:
                self._rows[col] = [_norm(x - f * y) for x, y in zip(row, r)]
        self._rows[piv] = r
        return True

    def contains(self, v):
        return all(x == 0 for x in self.reduce(v))


def lcm_of_denominators(values):
    d = 1
    for x in values:
        if type(x) is not int:
            d = lcm(d, x.denominator)
    return d


# ---------------------------------------------------------------------------
# random samples for tests and randomized procedures


def random_matrix(rng, n, lo=-5, hi=5):
    return Matrix._wrap(tuple(tuple(rng.randint(lo, hi) for _ in range(n)) for _ in range(n)))


def random_tuple(rng, m, n, lo=-5, hi=5):
    return MatrixTuple([random_matrix(rng, n, lo, hi) for _ in range(m)])


def random_invertible(rng, n, lo=-3, hi=3):
    while True:
        g = random_matrix(rng, n, lo, hi)
        if g.det() != 0:
            return g


def random_unimodular(rng, n, steps=None, lo=-2, hi=2):
    """Random integer matrix of determinant +-1 built from elementary moves."""
    rows = [list(r) for r in _identity(n)]
    if n == 1:
        return Matrix([[rng.choice((1, -1))]])
    for _ in range(steps or 3 * n):
        i, j = rng.sample(range(n), 2)
        c = rng.randint(lo, hi)
        rows[i] = [x + c * y for x, y in zip(rows[i], rows[j])]
        if rng.random() < 0.2:
            rows[i], rows[j] = rows[j], rows[i]
    return Matrix(rows)


def require(condition, message):
    if not condition:
        raise PreconditionError(message)

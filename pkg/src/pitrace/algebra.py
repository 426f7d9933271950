"""Normal forms for the free algebra, generic matrices and the trace ring.

A :class:`TracePolynomial` is a rational linear combination of monomials
``tr(u_1) ... tr(u_k) * w`` where the ``u_i`` and ``w`` are words in the
generators ``X1 .. Xm``.  Words are tuples of 1-based generator indices;
the empty tuple is the identity.  Trace words are stored by their
lexicographically least rotation and trace factors commute with
everything, so two stored polynomials are equal exactly when their
dictionaries are equal.
"""

from collections import defaultdict
from fractions import Fraction
from itertools import permutations, product

from .errors import DimensionError, PreconditionError, ResourceError, max_terms
from .linalg import _norm, as_scalar, newton_elementary, scalar_str


def min_rotation(word):
    """Lexicographically least rotation of ``word`` (Booth's algorithm)."""
    word = tuple(word)
    n = len(word)
    if n < 2:
        return word
    s = word + word
    fail = [-1] * (2 * n)
    k = 0
    for j in range(1, 2 * n):
        sj = s[j]
        i = fail[j - k - 1]
        while i != -1 and sj != s[k + i + 1]:
            if sj < s[k + i + 1]:
                k = j - i - 1
            i = fail[i]
        if sj != s[k + i + 1]:
            if sj < s[k]:
                k = j
            fail[j - k] = -1
        else:
            fail[j - k] = i + 1
    return s[k:k + n]


def word_key(word):
    """Graded lexicographic sort key."""
    return (len(word), word)


def words_up_to(m, d):
    """All words over 1..m of length <= d in graded lexicographic order."""
    letters = range(1, m + 1)
    for length in range(d + 1):
        yield from product(letters, repeat=length)


def _term_key(key):
    traces, word = key
    return (len(word), word, sum(len(t) for t in traces), traces)


class TracePolynomial:
    """Element of the free trace algebra on ``m`` generators."""

    __slots__ = ("m", "_terms", "_hash")

    def __init__(self, m, terms=None):
        if m < 1:
            raise DimensionError("a polynomial needs at least one generator")
        self.m = m
        self._hash = None
        acc = defaultdict(int)
        if terms:
            items = terms.items() if isinstance(terms, dict) else terms
            for key, c in items:
                traces, word = key
                word = tuple(word)
                for letter in word:
                    self._check_letter(letter)
                canon = []
                for t in traces:
                    t = tuple(t)
                    if not t:
                        raise ValueError("trace factors must be nonempty words")
                    for letter in t:
                        self._check_letter(letter)
                    canon.append(min_rotation(t))
                acc[(tuple(sorted(canon)), word)] += as_scalar(c)
        self._terms = {k: _norm(v) for k, v in acc.items() if v != 0}

    def _check_letter(self, letter):
        if not (isinstance(letter, int) and 1 <= letter <= self.m):
            raise DimensionError(f"generator X{letter} out of range for m={self.m}")

    @classmethod
    def _trusted(cls, m, terms):
        obj = object.__new__(cls)
        obj.m = m
        obj._hash = None
        obj._terms = {k: _norm(v) for k, v in terms.items() if v != 0}
        return obj

    # constructors

    @classmethod
    def zero(cls, m):
        return cls._trusted(m, {})

    @classmethod
    def constant(cls, c, m):
        return cls._trusted(m, {((), ()): as_scalar(c)})

    @classmethod
    def generator(cls, i, m):
        if not 1 <= i <= m:
            raise DimensionError(f"generator X{i} out of range for m={m}")
        return cls._trusted(m, {((), (i,)): 1})

    @classmethod
    def word(cls, w, m, coeff=1):
        return cls(m, {((), tuple(w)): coeff})

    @classmethod
    def trace_word(cls, w, m):
        return cls(m, {((tuple(w),), ()): 1})

    # inspection

    def terms(self):
        """Canonically ordered list of (coefficient, trace factors, word)."""
        return [(self._terms[k], k[0], k[1]) for k in sorted(self._terms, key=_term_key)]

    def items(self):
        return self._terms.items()

    def __len__(self):
        return len(self._terms)

    def is_zero(self):
        return not self._terms

    def is_trace_free(self):
        return all(not k[0] for k in self._terms)

    def is_word_free(self):
        return all(not k[1] for k in self._terms)

    def constant_term(self):
        return self._terms.get(((), ()), 0)

    def degree(self):
        return max((len(w) + sum(len(t) for t in tr) for tr, w in self._terms), default=0)

    def coefficient(self, word, traces=()):
        key = (tuple(sorted(min_rotation(t) for t in traces)), tuple(word))
        return self._terms.get(key, 0)

    def with_generators(self, m):
        """Same element viewed in a free algebra with ``m`` >= self.m generators."""
        if m < self.m:
            used = max((max(w + sum(tr, ()), default=0) for tr, w in self._terms), default=0)
            if used > m:
                raise DimensionError(f"polynomial uses X{used}; cannot view it with m={m}")
        return TracePolynomial._trusted(m, dict(self._terms))

    # arithmetic

    def _coerce(self, other):
        if isinstance(other, TracePolynomial):
            if other.m != self.m:
                raise DimensionError(f"generator count mismatch: {self.m} vs {other.m}")
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return TracePolynomial.constant(other, self.m)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        acc = dict(self._terms)
        for k, c in other._terms.items():
            acc[k] = acc.get(k, 0) + c
        return TracePolynomial._trusted(self.m, acc)

    __radd__ = __add__

    def __neg__(self):
        return TracePolynomial._trusted(self.m, {k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other - self

    def scale(self, c):
        c = as_scalar(c)
        if c == 0:
            return TracePolynomial.zero(self.m)
        return TracePolynomial._trusted(self.m, {k: v * c for k, v in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.scale(other)
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if len(self._terms) * len(other._terms) > max_terms():
            raise ResourceError(
                f"product of {len(self._terms)} and {len(other._terms)} terms exceeds "
                f"the ceiling of {max_terms()} monomials"
            )
        acc = defaultdict(int)
        for (t1, w1), c1 in self._terms.items():
            for (t2, w2), c2 in other._terms.items():
                traces = tuple(sorted(t1 + t2)) if t1 and t2 else (t1 or t2)
                acc[(traces, w1 + w2)] += c1 * c2
        return TracePolynomial._trusted(self.m, acc)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, k):
        if k < 0:
            raise ValueError("negative powers are not defined")
        result = TracePolynomial.constant(1, self.m)
        for _ in range(k):
            result = result * self
        return result

    def commutator(self, other):
        return self * other - other * self

    def trace(self, n=None):
        """tr(self) as a word-free polynomial; ``n`` is needed for tr(1) = n."""
        acc = defaultdict(int)
        for (traces, word), c in self._terms.items():
            if not word:
                if n is None:
                    raise PreconditionError("the trace of a constant term requires the matrix size n")
                acc[(traces, ())] += c * n
            else:
                acc[(tuple(sorted(traces + (min_rotation(word),))), ())] += c
        return TracePolynomial._trusted(self.m, acc)

    def det(self, n):
        """Determinant sugar: e_n of the power sums tr(p^k), k <= n."""
        if n is None:
            raise PreconditionError("det() requires the matrix size n")
        power_sums = []
        p = TracePolynomial.constant(1, self.m)
        for _ in range(n):
            p = p * self
            power_sums.append(p.trace(n))
        return newton_elementary(power_sums)[-1]

    def substitute(self, polys, n=None):
        """Replace X_i by ``polys[i-1]``; the result lives with polys' generator count."""
        if len(polys) < self.m:
            raise DimensionError(f"need {self.m} substitutes, got {len(polys)}")
        m2 = polys[0].m
        self._check_substitution_size(polys, m2)
        one = TracePolynomial.constant(1, m2)
        cache = {(): one}

        def word_value(w):
            v = cache.get(w)
            if v is None:
                v = word_value(w[:-1]) * polys[w[-1] - 1]
                cache[w] = v
            return v

        acc = defaultdict(int)
        for (traces, word), c in self._terms.items():
            term = word_value(word)
            for t in traces:
                term = term * word_value(t).trace(n)
            for k, v in term._terms.items():
                acc[k] += c * v
        if len(acc) > max_terms():
            raise ResourceError("substitution exceeds the monomial ceiling")
        return TracePolynomial._trusted(m2, acc)

    def _check_substitution_size(self, polys, m2):
        # upper bound on the monomials produced by the words, before any expansion
        sizes = [len(q._terms) for q in polys]
        degs = [max(q.degree(), 0) for q in polys]
        limit = max_terms()
        bound = 0
        for _, word in self._terms:
            size = 1
            for letter in word:
                size *= sizes[letter - 1]
            d = sum(degs[letter - 1] for letter in word)
            free = d + 1 if m2 == 1 else (m2 ** (d + 1) - 1) // (m2 - 1)
            bound += min(size, free)
            if bound > limit:
                raise ResourceError(f"substitution would produce more than {limit} monomials")

    # comparison and display

    def __eq__(self, other):
        if isinstance(other, TracePolynomial):
            return self.m == other.m and self._terms == other._terms
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self == TracePolynomial.constant(other, self.m)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.m, frozenset(self._terms.items())))
        return self._hash

    def __str__(self):
        return to_expression(self)

    def __repr__(self):
        return f"TracePolynomial(m={self.m}, {to_expression(self)!r})"


def _word_str(word):
    parts = []
    i = 0
    while i < len(word):
        j = i
        while j < len(word) and word[j] == word[i]:
            j += 1
        run = j - i
        parts.append(f"X{word[i]}" + (f"^{run}" if run > 1 else ""))
        i = j
    return "*".join(parts)


def _traces_str(traces):
    parts = []
    i = 0
    while i < len(traces):
        j = i
        while j < len(traces) and traces[j] == traces[i]:
            j += 1
        run = j - i
        parts.append(f"tr({_word_str(traces[i])})" + (f"^{run}" if run > 1 else ""))
        i = j
    return parts


def to_expression(p):
    """Canonical printer; its output parses back to ``p``."""
    pieces = []
    for c, traces, word in p.terms():
        body = _traces_str(traces)
        if word:
            body.append(_word_str(word))
        mag = abs(c)
        if not body:
            text = scalar_str(mag)
        elif mag == 1:
            text = "*".join(body)
        else:
            text = scalar_str(mag) + "*" + "*".join(body)
        sign = "-" if c < 0 else "+"
        if not pieces:
            pieces.append(("-" if c < 0 else "") + text)
        else:
            pieces.append(f" {sign} {text}")
    return "".join(pieces) if pieces else "0"


def algebra_ops(p, q, op):
    if op == "add":
        return p + q
    if op == "sub":
        return p - q
    if op == "mul":
        return p * q
    if op == "scale":
        return p.scale(q)
    raise ValueError(f"unknown operation {op!r}")


def multilinearize(p):
    """Full polarization of every multihomogeneous component of ``p``.

    For a component of multidegree (d_1, ..., d_m) each variable i is
    replaced by d_i fresh variables (numbered consecutively, variable 1's
    first) and every word is summed over all placements of the fresh
    variables on the occurrences.  Restitution recovers
    d_1! ... d_m! times the component.  Components are returned in
    graded lexicographic order of their multidegree.
    """
    if not p.is_trace_free():
        raise PreconditionError("multilinearization is defined only for trace-free polynomials")
    components = defaultdict(dict)
    for (_, word), c in p.items():
        degs = [0] * p.m
        for letter in word:
            degs[letter - 1] += 1
        components[tuple(degs)][word] = c

    out = []
    for degs in sorted(components, key=lambda d: (sum(d), d)):
        fresh = {}
        nxt = 1
        for var, d in enumerate(degs, start=1):
            fresh[var] = list(range(nxt, nxt + d))
            nxt += d
        total = nxt - 1
        variants = {var: list(permutations(ids)) for var, ids in fresh.items() if ids}
        acc = defaultdict(int)
        count = 1
        for var in variants:
            count *= len(variants[var])
        if count * len(components[degs]) > max_terms():
            raise ResourceError("multilinearization exceeds the monomial ceiling")
        for word, c in components[degs].items():
            positions = defaultdict(list)
            for pos, letter in enumerate(word):
                positions[letter].append(pos)
            vars_here = sorted(positions)
            for choice in product(*(variants[v] for v in vars_here)):
                new = list(word)
                for v, perm in zip(vars_here, choice):
                    for pos, fv in zip(positions[v], perm):
                        new[pos] = fv
                acc[((), tuple(new))] += c
        out.append(TracePolynomial._trusted(max(total, 1), acc))
    return out

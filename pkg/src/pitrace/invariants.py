"""Trace invariants of simultaneous conjugation.

Traces of words in the matrices of a point are constant on orbits, and
tr(w) only depends on the cyclic class of w.  Fingerprints record tr(w)
for one representative (the least rotation) of every necklace up to a
length bound.
"""

import enum
from dataclasses import dataclass

from .builtins import friedland_c
from .errors import DimensionError, ParseError
from .evaluation import evaluate
from .linalg import _identity, _mm, _mtrace, as_scalar, scalar_str


def _necklaces_of_length(m, length):
    """Necklaces of one length in lexicographic order (FKM algorithm)."""
    out = []
    a = [0] * (length + 1)

    def gen(t, p):
        if t > length:
            if length % p == 0:
                out.append(tuple(x + 1 for x in a[1:]))
            return
        a[t] = a[t - p]
        gen(t + 1, p)
        for j in range(a[t - p] + 1, m):
            a[t] = j
            gen(t + 1, t)

    gen(1, 1)
    return out


def enumerate_necklaces(m, max_len):
    """All necklaces of length 1..max_len over 1..m, by length then lex."""
    if max_len < 1:
        raise ValueError("max_len must be at least 1")
    result = []
    for length in range(1, max_len + 1):
        result.extend(_necklaces_of_length(m, length))
    return result


def _necklace_str(word):
    return ".".join(str(x) for x in word)


@dataclass(frozen=True)
class Fingerprint:
    n: int
    m: int
    max_len: int
    values: tuple  # ((necklace word, scalar), ...)

    def to_text(self):
        lines = [f"n={self.n} m={self.m} maxLen={self.max_len}"]
        lines += [f"{_necklace_str(w)}={scalar_str(v)}" for w, v in self.values]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text):
        lines = [ln for ln in text.splitlines() if ln.strip()]
        try:
            header = dict(part.split("=") for part in lines[0].split())
            n, m, max_len = int(header["n"]), int(header["m"]), int(header["maxLen"])
            values = []
            for ln in lines[1:]:
                word, value = ln.split("=")
                values.append((tuple(int(x) for x in word.split(".")), as_scalar(value)))
        except (IndexError, KeyError, ValueError) as exc:
            raise ParseError(f"malformed fingerprint record: {exc}") from exc
        return cls(n, m, max_len, tuple(values))

    def as_dict(self):
        return {
            "n": self.n,
            "m": self.m,
            "maxLen": self.max_len,
            "values": {_necklace_str(w): scalar_str(v) for w, v in self.values},
        }


def fingerprint(a, max_len=None):
    """tr(w(a)) for every necklace w of length <= max_len (default n^2)."""
    if max_len is None:
        max_len = a.n * a.n
    mats = a.rows()
    cache = {(): _identity(a.n)}

    def word_value(w):
        v = cache.get(w)
        if v is None:
            v = cache[w] = _mm(word_value(w[:-1]), mats[w[-1] - 1])
        return v

    values = tuple((w, _mtrace(word_value(w))) for w in enumerate_necklaces(a.m, max_len))
    return Fingerprint(a.n, a.m, max_len, values)


class FingerprintVerdict(enum.Enum):
    DISTINCT = "Distinct"
    INDISTINGUISHABLE = "Indistinguishable"


def separated_by_fingerprint(a, b, max_len=None):
    """DISTINCT proves the orbits differ; INDISTINGUISHABLE proves nothing."""
    if (a.m, a.n) != (b.m, b.n):
        return FingerprintVerdict.DISTINCT
    fa = fingerprint(a, max_len)
    fb = fingerprint(b, max_len)
    if fa.values != fb.values:
        return FingerprintVerdict.DISTINCT
    return FingerprintVerdict.INDISTINGUISHABLE


_FRIEDLAND = None


def friedland(a):
    """Friedland's invariant of a pair of 2x2 matrices.

    Nonzero exactly when the pair generates M_2.
    """
    global _FRIEDLAND
    if (a.n, a.m) != (2, 2):
        raise DimensionError("friedland() is defined for pairs of 2x2 matrices")
    if _FRIEDLAND is None:
        _FRIEDLAND = friedland_c()
    return evaluate(_FRIEDLAND, a).scalar

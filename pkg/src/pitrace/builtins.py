"""Named polynomials: standard polynomials, classical central polynomials
and Friedland's invariant cutting out generating pairs of 2x2 matrices."""

import re
from collections import defaultdict
from itertools import permutations

from .algebra import TracePolynomial
from .parser import parse

BUILTINS = {
    "std(k)": "standard polynomial sum_sigma sgn(sigma) x_sigma(1)...x_sigma(k); "
    "std(2n) is an identity of M_n (Amitsur-Levitzki)",
    "comm_sq": "(x1x2 - x2x1)^2, the classical central polynomial for 2x2 matrices",
    "friedland_c": "Friedland's invariant of 2x2 pairs: nonzero exactly on generating pairs "
    "(Gram determinant of the traceless parts, cross term tr(X1)tr(X2))",
    "formanek(n)": "Formanek's central polynomial for n x n matrices in x = X1, y_i = X(i+1)",
}


def _sign(perm):
    sign = 1
    seen = [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def std(k):
    if k < 1:
        raise ValueError("std(k) needs k >= 1")
    terms = {((), tuple(i + 1 for i in perm)): _sign(perm) for perm in permutations(range(k))}
    return TracePolynomial(k, terms)


def comm_sq():
    return parse("[X1,X2]^2", m=2)


def friedland_c():
    # The printed cross term reads tr(X1)det(X2); tr(X1)tr(X2) is the
    # degree-consistent Gram-determinant form and is what is checked.
    return parse(
        "(2*tr(X1^2) - tr(X1)^2)*(2*tr(X2^2) - tr(X2)^2) - (2*tr(X1*X2) - tr(X1)*tr(X2))^2",
        m=2,
    )


def _commutative_product(factors, nvars):
    """Expand a product of linear forms given as {var index: coeff} dicts."""
    poly = {(0,) * nvars: 1}
    for lin in factors:
        acc = defaultdict(int)
        for exps, c in poly.items():
            for var, a in lin.items():
                e = list(exps)
                e[var] += 1
                acc[tuple(e)] += c * a
        poly = {e: c for e, c in acc.items() if c != 0}
    return poly


def formanek_generating_polynomial(n):
    """Commutative G(t_1..t_{n+1}) as {exponent tuple: coefficient}.

    G = prod_{i=2..n} (t_1 - t_i)(t_{n+1} - t_i) * prod_{2<=i<j<=n} (t_i - t_j)^2,
    indices 0-based in the returned exponent tuples.
    """
    last = n
    factors = []
    for i in range(1, n):
        factors.append({0: 1, i: -1})
        factors.append({last: 1, i: -1})
    for i in range(1, n):
        for j in range(i + 1, n):
            factors.append({i: 1, j: -1})
            factors.append({i: 1, j: -1})
    return _commutative_product(factors, n + 1)


def formanek(n):
    """Formanek's central polynomial for n x n matrices.

    Each monomial t_1^a1 ... t_{n+1}^a{n+1} of the generating polynomial
    becomes x^a1 y_1 x^a2 y_2 ... y_n x^a{n+1}; the result is summed over
    the cyclic shifts of (y_1, ..., y_n).  Here x = X1 and y_i = X(i+1).
    """
    if n < 1:
        raise ValueError("formanek(n) needs n >= 1")
    gen = formanek_generating_polynomial(n)
    ys = list(range(2, n + 2))
    terms = defaultdict(int)
    for shift in range(n):
        order = ys[shift:] + ys[:shift]
        for exps, c in gen.items():
            word = [1] * exps[0]
            for y, a in zip(order, exps[1:]):
                word.append(y)
                word.extend([1] * a)
            terms[((), tuple(word))] += c
    return TracePolynomial(n + 1, terms)


_CALL = re.compile(r"^\s*(std|formanek)\s*\(?\s*(\d+)\s*\)?\s*$")


def builtin(name):
    """Look up a named polynomial, e.g. ``"std(4)"``, ``"comm_sq"``, ``"formanek(3)"``."""
    key = name.strip()
    if key == "comm_sq":
        return comm_sq()
    if key == "friedland_c":
        return friedland_c()
    mt = _CALL.match(key)
    if mt:
        k = int(mt.group(2))
        return std(k) if mt.group(1) == "std" else formanek(k)
    raise KeyError(f"unknown builtin {name!r}; available: {', '.join(BUILTINS)}")

"""JSON serialization of matrix tuples.

A tuple file looks like::

    {"n": 2, "m": 2, "matrices": [[[0, 1], [0, 0]], [[0, 0], [1, 0]]]}

Scalars are JSON integers or strings ``"p/q"``; rationals are never
written as JSON floats.
"""

import json

from .errors import ParseError
from .linalg import Matrix, MatrixTuple, as_scalar


def scalar_to_json(x):
    x = as_scalar(x)
    if isinstance(x, int):
        return x
    return f"{x.numerator}/{x.denominator}"


def scalar_from_json(v):
    if isinstance(v, bool) or not isinstance(v, (int, str)):
        raise ParseError(f"scalar must be an integer or a 'p/q' string, got {v!r}")
    try:
        return as_scalar(v)
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(str(exc)) from exc


def matrix_to_json(a):
    return [[scalar_to_json(x) for x in row] for row in a.rows]


def tuple_to_dict(a):
    return {"n": a.n, "m": a.m, "matrices": [matrix_to_json(x) for x in a.matrices]}


def tuple_from_dict(d):
    try:
        n, m, mats = int(d["n"]), int(d["m"]), d["matrices"]
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"tuple record needs integer n, m and a matrices list: {exc}") from exc
    if n < 1 or m < 1:
        raise ParseError("n and m must be positive")
    if not isinstance(mats, list) or len(mats) != m:
        raise ParseError(f"expected {m} matrices")
    out = []
    for k, rows in enumerate(mats):
        if not isinstance(rows, list) or len(rows) != n or any(
            not isinstance(r, list) or len(r) != n for r in rows
        ):
            raise ParseError(f"matrix {k + 1} is not {n}x{n}")
        out.append(Matrix([[scalar_from_json(x) for x in r] for r in rows]))
    return MatrixTuple(out)


def _read_json(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: invalid JSON: {exc}") from exc


def load_tuple(path):
    return tuple_from_dict(_read_json(path))


def load_tuples(path):
    """A JSON list of tuple records, or a single record."""
    data = _read_json(path)
    if isinstance(data, dict) and "tuples" in data:
        data = data["tuples"]
    if isinstance(data, dict):
        return [tuple_from_dict(data)]
    if not isinstance(data, list):
        raise ParseError(f"{path}: expected a tuple record or a list of them")
    return [tuple_from_dict(d) for d in data]


def dump_tuple(a, path):
    with open(path, "w") as fh:
        json.dump(tuple_to_dict(a), fh)
        fh.write("\n")


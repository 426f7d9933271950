import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pitrace import (
    Matrix,
    MatrixTuple,
    TracePolynomial,
    central_for_points,
    comm_sq,
    construct_central,
    evaluate,
    is_central,
    is_pi,
    parse,
    std,
)
from pitrace.central import dedup_points, exact_cost, find_witness
from pitrace.errors import PreconditionError, ResourceError
from pitrace.linalg import random_invertible

from conftest import E, random_nonconjugate_family


def test_is_pi_examples(pair):
    assert is_pi(std(2), 1).is_pi
    v = is_pi(std(4), 2)
    assert v.is_pi and v.mode == "deterministic" and v.witness is None
    v = is_pi(comm_sq(), 2)
    assert not v.is_pi and v.witness == pair
    assert evaluate(comm_sq(), v.witness).value == Matrix.identity(2)


def test_std3_is_not_an_identity_of_m2():
    v = is_pi(std(3), 2)
    assert not v.is_pi and v.mode == "deterministic"
    assert not evaluate(std(3), v.witness).is_zero


def test_is_pi_rejects_traces():
    with pytest.raises(PreconditionError):
        is_pi(parse("tr(X1)*X2", m=2), 2)


def test_randomized_verdict_records_its_parameters():
    v = is_pi(std(4), 2, mode="random", trials=64, seed=3)
    d = v.as_dict()
    assert d["isPI"] and d["mode"] == "randomized" and d["seed"] == 3 and d["trials"] == 64
    assert d["entryRange"] == 10**6 and "(4/2000001)^64" in d["confidence"]
    assert v.failure_bound == Fraction(4, 2000001) ** 64


def test_exact_mode_downgrades_over_the_ceiling():
    v = is_pi(std(4), 2, ceiling=10)
    assert v.is_pi and v.mode == "randomized" and v.downgraded
    assert exact_cost(std(4), 2) > 10


def _corpus():
    """Mixed corpus: known identities and random polynomials of degree <= 4."""
    rng = random.Random(31)
    out = [(std(4), 2), (std(2), 1), (std(4) * 3 - std(4).scale(2), 2), (comm_sq(), 2), (std(3), 2)]
    x1, x2, x3 = (TracePolynomial.generator(i, 3) for i in (1, 2, 3))
    c = x1 * x2 - x2 * x1
    out += [(c * x3, 1), (x3 * c + c * x1, 1), (c * c, 1), (c - c, 2)]
    while len(out) < 50:
        n = rng.choice([1, 2])
        acc = TracePolynomial.zero(2)
        for _ in range(rng.randint(1, 3)):
            w = tuple(rng.randint(1, 2) for _ in range(rng.randint(1, 4)))
            acc = acc + TracePolynomial.word(w, 2, rng.choice([-2, -1, 1, 3]))
        if rng.random() < 0.3:
            acc = acc * TracePolynomial.generator(1, 2) - TracePolynomial.generator(1, 2) * acc
        out.append((acc, n))
    return out


def test_deterministic_and_randomized_agree_on_corpus():
    identities = 0
    for k, (p, n) in enumerate(_corpus()):
        exact = is_pi(p, n)
        rand = is_pi(p, n, mode="random", trials=64, seed=k)
        assert exact.mode == "deterministic" and rand.mode == "randomized"
        assert exact.is_pi == rand.is_pi, (k, str(p), n)
        for v in (exact, rand):
            if not v.is_pi:
                assert not evaluate(p.with_generators(v.witness.m), v.witness).is_zero
        identities += exact.is_pi
    assert 5 <= identities <= 45


def test_find_witness_reevaluates_nonzero():
    for p, n in [(comm_sq(), 2), (std(3), 2), (parse("X1*X2 - X2*X1", m=2), 2)]:
        w = find_witness(p, n)
        assert not evaluate(p, w).is_zero


def test_is_central_examples():
    v = is_central(comm_sq(), 2)
    assert v.is_central and v.checks["routes_agree"] and v.checks["pi_for_smaller"]
    assert v.checks["evaluations_central"].mode == "deterministic"
    v = is_central(parse("X1", m=1), 2)
    assert not v.is_central and not v.checks["evaluations_central"].is_pi
    v = is_central(std(4), 2)
    assert not v.is_central and not v.checks["not_identically_zero"]
    assert is_central(parse("X1", m=1), 1).is_central


def test_centrality_conjunction():
    for p, n in [(comm_sq(), 2), (comm_sq() + 1, 2), (parse("X1*X2", m=2), 2), (std(2), 1)]:
        v = is_central(p, n)
        needed = ["constant_term_zero", "not_identically_zero"]
        flags = [v.checks[k] for k in needed] + [v.checks["evaluations_central"].is_pi]
        assert v.is_central == all(flags)
    assert not is_central(comm_sq() + 1, 2).is_central


def test_construct_central_small():
    assert str(construct_central(1)) == "X1"
    assert construct_central(2) == comm_sq()
    for n in (1, 2):
        assert construct_central(n).constant_term() == 0


@pytest.mark.slow
def test_construct_central_three():
    p = construct_central(3)
    assert p.constant_term() == 0 and p.m == 4 and p.degree() == 9


def test_central_for_points_single(pair):
    res = central_for_points([pair])
    (rep,) = res.reports
    assert rep.is_scalar and rep.scalar != 0
    assert evaluate(res.poly, pair).value == Matrix.identity(2) * rep.scalar


def test_central_for_points_dedups_conjugates(pair, conj_g):
    other = pair.conjugate_by(conj_g)
    res = central_for_points([pair, other])
    assert list(res.representatives) == [0]
    assert res.duplicates == {1: 0}
    a, b = evaluate(res.poly, pair), evaluate(res.poly, other)
    assert a.is_scalar and a.scalar != 0 and a.scalar == b.scalar


def test_central_for_points_rejects_nongenerating(pair):
    bad = MatrixTuple([Matrix.diag(1, 2), Matrix.diag(3, 4)])
    with pytest.raises(PreconditionError):
        central_for_points([pair, bad])


def test_central_for_points_result_is_central():
    rng = random.Random(32)
    pts = random_nonconjugate_family(rng, 2, 2, 2, -3, 3)
    res = central_for_points(pts)
    for p, rep in zip(pts, res.reports):
        v = evaluate(res.poly, p)
        assert v.is_scalar and v.scalar != 0 and v.scalar == rep.scalar
    assert res.poly.constant_term() == 0
    assert is_central(res.poly, 2, mode="random", trials=16, seed=1).is_central


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 10**6), st.integers(1, 3))
def test_central_for_points_property(seed, r):
    rng = random.Random(seed)
    pts = random_nonconjugate_family(rng, r, 2, 2, -4, 4)
    res = central_for_points(pts)
    for p in pts:
        v = evaluate(res.poly, p)
        assert v.is_scalar and v.scalar != 0
    g = random_invertible(rng, 2)
    assert evaluate(res.poly, pts[0].conjugate_by(g)).scalar == evaluate(res.poly, pts[0]).scalar


def test_dedup_points(pair, conj_g):
    swapped = MatrixTuple([E(2, 1), E(1, 2)])
    other = MatrixTuple([E(1, 2), E(2, 1) + E(1, 2)])
    reps, dups = dedup_points([pair, other, swapped, pair.conjugate_by(conj_g)])
    assert list(reps) == [0, 1] and dups == {2: 0, 3: 0}


@pytest.mark.slow
def test_central_for_points_n3_hits_the_ceiling_quickly():
    # formanek(3) of the interpolants would have far more than 10^7 monomials
    rng = random.Random(33)
    pts = random_nonconjugate_family(rng, 1, 2, 3, -2, 2)
    with pytest.raises(ResourceError):
        central_for_points(pts)


def test_substitution_ceiling_is_checked_before_expanding(monkeypatch):
    monkeypatch.setenv("PITRACE_MAX_TERMS", "100")
    x = parse("X1 + X2 + X1*X2", m=2)
    with pytest.raises(ResourceError):
        std(4).substitute([x, x, x, x])
    assert len(std(2).substitute([x, x]).items()) == 0

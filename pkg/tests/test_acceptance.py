"""Acceptance suite.

Each criterion runs at its stated size and tolerance and records one
PASS/FAIL line, shown in pytest's terminal summary.  Run directly with
``python3 tests/test_acceptance.py`` to print the lines without pytest.
"""

import json
import random
import sys
import time
from contextlib import contextmanager
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

from conftest import ACCEPTANCE_LINES, E, random_generating, random_nonconjugate_family  # noqa: E402

from pitrace import (  # noqa: E402
    FingerprintVerdict,
    Matrix,
    MatrixTuple,
    central_for_points,
    comm_sq,
    conjugate_test,
    evaluate,
    friedland,
    generates,
    ideal_of_points,
    is_central,
    is_pi,
    nullstellensatz_experiment,
    parse,
    separate,
    separated_by_fingerprint,
    std,
)
from pitrace.central import spot_check_identity, verified_central  # noqa: E402
from pitrace.cli import run  # noqa: E402
from pitrace.linalg import random_tuple, random_unimodular  # noqa: E402
from pitrace.tuplefile import tuple_to_dict  # noqa: E402

SEED = 20261019


@contextmanager
def criterion(number, title, limit):
    start = time.perf_counter()
    ok, note = False, ""
    try:
        yield
        elapsed = time.perf_counter() - start
        ok = elapsed < limit
        note = f"{elapsed:.2f}s < {limit}s" if ok else f"{elapsed:.2f}s exceeds {limit}s"
    except BaseException as exc:
        note = f"{type(exc).__name__}: {exc}"[:160]
        raise
    finally:
        ACCEPTANCE_LINES.append(f"[{'PASS' if ok else 'FAIL'}] {number}. {title} ({note})")
    assert ok, note


def test_1_friedland_matches_generation():
    with criterion(1, "friedland(a) != 0 iff generates(a) on 1000 pairs", 10):
        rng = random.Random(SEED + 1)
        disagreements = []
        generating = 0
        for k in range(1000):
            a = random_tuple(rng, 2, 2, -5, 5)
            g = generates(a)
            generating += g
            if (friedland(a) != 0) != g:
                disagreements.append(k)
        assert disagreements == []
        assert 0 < generating < 1000


def test_2_amitsur_levitzki():
    with criterion(2, "std(4) is a PI of M_2 exactly; std(3) is not, with witness", 60):
        v = is_pi(std(4), 2)
        assert v.is_pi and v.mode == "deterministic" and not v.downgraded
        assert v.substitutions == 4**4 * 24
        w = is_pi(std(3), 2)
        assert not w.is_pi and w.mode == "deterministic"
        assert not evaluate(std(3), w.witness).is_zero


def test_3_central_verifier():
    with criterion(3, "central polynomial verifier, n = 2 exact and n = 3 randomized + spot check", 300):
        v = is_central(comm_sq(), 2, mode="exact")
        assert v.is_central and v.checks["evaluations_central"].mode == "deterministic"
        assert not is_central(parse("X1", m=1), 2).is_central
        verified_central.cache_clear()
        built = verified_central(3, trials=128, seed=SEED)
        ev = built.verdict.checks["evaluations_central"]
        assert built.verdict.is_central and built.seed == SEED
        assert ev.mode == "randomized" and ev.trials == 128 and ev.seed == SEED
        p = built.poly
        x = p.generator(p.m + 1, p.m + 1)
        commutator = p.with_generators(p.m + 1) * x - x * p.with_generators(p.m + 1)
        assert spot_check_identity(commutator, 3, samples=10**4, seed=SEED) == []
        assert spot_check_identity(p, 3, samples=200, seed=SEED) != []


def test_4_central_for_points():
    with criterion(4, "central_for_points on 50 inputs with r in {1,2,3} and injected duplicates", 120):
        rng = random.Random(SEED + 4)
        for k in range(50):
            r = 1 + k % 3
            points = random_nonconjugate_family(rng, r, 2, 2, -3, 3)
            inputs = list(points)
            expected = {}
            for _ in range(rng.randint(0, 2)):
                src = rng.randrange(r)
                expected[len(inputs)] = src
                inputs.append(points[src].conjugate_by(random_unimodular(rng, 2)))
            res = central_for_points(inputs, seed=k)
            assert list(res.representatives) == list(range(r))
            assert res.duplicates == expected
            for a in inputs:
                val = evaluate(res.poly, a)
                assert val.is_scalar and val.scalar != 0


def test_5_conjugacy_coherence():
    with criterion(5, "conjugacy oracle coherence on 500 pairs, n = 2 and 3", 300):
        rng = random.Random(SEED + 5)
        violations = 0
        for k in range(500):
            n = 2 if k % 2 == 0 else 3
            a = random_generating(rng, 2, n, -3, 3)
            g, h = random_unimodular(rng, n), random_unimodular(rng, n)
            b = a.conjugate_by(g)
            c = b.conjugate_by(h)
            for x, y in ((a, a), (a, b), (b, a), (b, c), (a, c)):
                cert = conjugate_test(x, y)
                assert cert.conjugate and cert.intertwiner_dim == 1
                assert cert.witness.det() != 0
                assert all(cert.witness * xi == yi * cert.witness for xi, yi in zip(x, y))
            assert separated_by_fingerprint(a, c) is FingerprintVerdict.INDISTINGUISHABLE
            d = random_generating(rng, 2, n, -3, 3)
            if separated_by_fingerprint(a, d) is FingerprintVerdict.DISTINCT:
                violations += conjugate_test(a, d).conjugate
        assert violations == 0


def test_6_nullstellensatz_lab():
    with criterion(6, "ideal of one orbit at d = 2, separation, 100 membership targets", 30):
        pair = MatrixTuple([E(1, 2), E(2, 1)])
        ide = ideal_of_points([pair], 2)
        assert ide.kernel_dim == 3
        assert {str(p) for p in ide.basis} == {"X1^2", "X2^2", "-1 + X1*X2 + X2*X1"}
        target = MatrixTuple([E(1, 2), E(2, 1) + E(1, 2)])
        w = separate([pair], target, 2)
        assert w and w.degree() <= 2 and not evaluate(w, target).is_zero
        rng = random.Random(SEED + 6)
        targets = [pair.conjugate_by(random_unimodular(rng, 2)) for _ in range(50)]
        targets += [random_generating(rng, 2, 2, -3, 3) for _ in range(50)]
        rep = nullstellensatz_experiment([pair], targets, 2)
        assert rep.sound and rep.agrees_with_conjugacy
        assert sum(v["member"] for v in rep.verdicts) >= 50


def test_7_replay_determinism(tmp_path):
    with criterion(7, "randomized runs replayed with recorded seeds give identical payloads", 300):
        rng = random.Random(SEED + 7)
        pts = tmp_path / "points.json"
        pts.write_text(json.dumps([tuple_to_dict(a) for a in random_nonconjugate_family(rng, 3)]))
        commands = [
            ["check-pi", "--n", "2", "--builtin", "std(3)", "--mode", "random", "--trials", "64"],
            ["check-pi", "--n", "2", "--builtin", "std(4)", "--mode", "random", "--trials", "64"],
            ["check-central", "--n", "2", "--builtin", "comm_sq", "--mode", "random"],
            ["make-central", "--n", "3", "--trials", "128"],
            ["central-for-points", "--tuples", str(pts)],
        ]
        for k, argv in enumerate(commands):
            code, first, _ = run(argv + ["--seed", str(SEED + k)])
            assert code == 0, first.get("error")
            seed = first["seed"]
            code, replay, _ = run(argv + ["--seed", str(seed)])
            assert code == 0
            assert json.dumps(first["result"], sort_keys=True) == json.dumps(replay["result"], sort_keys=True)
        # the library-level randomized run behind criterion 3 as well
        a = verified_central(3, trials=128, seed=SEED).verdict.as_dict()
        verified_central.cache_clear()
        b = verified_central(3, trials=128, seed=SEED).verdict.as_dict()
        assert json.dumps(a, sort_keys=True) == json.dumps(b, sort_keys=True)


if __name__ == "__main__":
    import tempfile

    tests = [v for k, v in sorted(globals().items()) if k.startswith("test_")]
    for t in tests:
        try:
            if "tmp_path" in t.__code__.co_varnames[: t.__code__.co_argcount]:
                with tempfile.TemporaryDirectory() as d:
                    t(Path(d))
            else:
                t()
        except Exception:
            pass
    print("\n".join(ACCEPTANCE_LINES))
    sys.exit(0 if all(line.startswith("[PASS]") for line in ACCEPTANCE_LINES) else 1)

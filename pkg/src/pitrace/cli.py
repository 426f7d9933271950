"""Command line front end.

Every subcommand prints one JSON run record::

    {"command": ..., "parameters": {...}, "seed": ..., "ceilings": {...},
     "result": {...}, "timings": {"seconds": ...}}

``result`` depends only on the command, its inputs and the seed.  Exit
codes: 0 for any completed verdict (negative ones included), 2 for
malformed input, 3 for precondition violations, 4 for resource ceilings,
5 for internal consistency failures.
"""

import argparse
import json
import sys
import time
from concurrent.futures import ThreadPoolExecutor

from . import central, evaluation, invariants, nullstellensatz
from .builtins import BUILTINS, builtin
from .errors import (
    DimensionError,
    InternalConsistencyError,
    ParseError,
    PreconditionError,
    ResourceError,
    max_substitutions,
    max_terms,
)
from .linalg import scalar_str
from .parser import max_generator, parse
from .tuplefile import load_tuple, load_tuples, matrix_to_json

EXIT_MALFORMED = 2
EXIT_PRECONDITION = 3
EXIT_RESOURCE = 4
EXIT_INTERNAL = 5


def _report_dict(r):
    return {
        "value": matrix_to_json(r.value),
        "isZero": r.is_zero,
        "isScalar": r.is_scalar,
        "scalar": scalar_str(r.scalar) if r.is_scalar else None,
    }


def _polynomials(args, m=None):
    if args.builtin and args.expr:
        raise ParseError("give either --expr or --builtin, not both")
    if args.builtin:
        try:
            polys = [builtin(args.builtin)]
        except KeyError as exc:
            raise ParseError(str(exc.args[0])) from exc
        if m is not None:
            polys = [p.with_generators(m) for p in polys]
        return polys
    if not args.expr:
        raise ParseError("an expression is required (--expr or --builtin)")
    if m is None:
        m = args.m or max(max(max_generator(e) for e in args.expr), 1)
    return [parse(e, m=m, n=args.n) for e in args.expr]


def _polynomial(args, m=None):
    polys = _polynomials(args, m)
    if len(polys) != 1:
        raise ParseError("exactly one expression is expected")
    return polys[0]


def _need(value, flag):
    if value is None:
        raise ParseError(f"{flag} is required")
    return value


def _tuples(args):
    if args.tuples:
        return load_tuples(args.tuples)
    if args.tuple:
        return [load_tuple(args.tuple)]
    raise ParseError("--tuple or --tuples is required")


def _pi_options(args):
    return dict(
        mode=args.mode, trials=args.trials, seed=args.seed,
        entry_range=args.entry_range, ceiling=args.ceiling,
    )


def cmd_eval(args):
    a = load_tuple(_need(args.tuple, "--tuple"))
    p = _polynomial(args, a.m)
    return _report_dict(evaluation.evaluate(p, a))


def cmd_generates(args):
    a = load_tuple(_need(args.tuple, "--tuple"))
    chain = evaluation.span_chain(a)
    return {"generates": chain[-1] == a.n * a.n, "spanChain": chain}


def cmd_conjugate(args):
    a = load_tuple(_need(args.tuple, "--tuple"))
    b = load_tuple(_need(args.target, "--target"))
    cert = evaluation.conjugate_test(a, b)
    return {
        "conjugate": cert.conjugate,
        "witness": matrix_to_json(cert.witness) if cert.witness is not None else None,
        "intertwinerDim": cert.intertwiner_dim,
        "scope": cert.scope,
    }


def _map(args, fn, items):
    if args.jobs > 1:
        with ThreadPoolExecutor(max_workers=args.jobs) as pool:
            return list(pool.map(fn, items))
    return [fn(x) for x in items]


def cmd_fingerprint(args):
    points = _tuples(args)
    prints = _map(args, lambda a: invariants.fingerprint(a, args.maxlen), points)
    out = {"fingerprints": [f.as_dict() for f in prints]}
    if args.target:
        b = load_tuple(args.target)
        out["verdicts"] = [
            invariants.separated_by_fingerprint(a, b, args.maxlen).value for a in points
        ]
    return out


def cmd_check_pi(args):
    n = _need(args.n, "--n")
    return central.is_pi(_polynomial(args), n, **_pi_options(args)).as_dict()


def cmd_check_central(args):
    n = _need(args.n, "--n")
    return central.is_central(_polynomial(args), n, **_pi_options(args)).as_dict()


def cmd_make_central(args):
    n = _need(args.n, "--n")
    built = central.verified_central(n, trials=args.trials, seed=args.seed)
    return {"poly": str(built.poly), "m": built.poly.m, "verdict": built.verdict.as_dict()}


def cmd_central_for_points(args):
    result = central.central_for_points(_tuples(args), seed=args.seed, trials=args.trials)
    return result.as_dict()


def _points_and_shape(args):
    points = load_tuples(args.tuples) if args.tuples else []
    if args.tuple:
        points.append(load_tuple(args.tuple))
    return points


def cmd_ideal_of_points(args):
    points = _points_and_shape(args)
    d = _need(args.degree, "--degree")
    return nullstellensatz.ideal_of_points(points, d, m=args.m, n=args.n).as_dict()


def cmd_separate(args):
    points = _points_and_shape(args)
    target = load_tuple(_need(args.target, "--target"))
    d_max = _need(args.degree, "--degree")
    res = nullstellensatz.separate(points, target, d_max)
    if isinstance(res, nullstellensatz.NotSeparable):
        return {"separated": False, "reason": res.reason, "degreeBound": res.degree_bound,
                "conjugateTo": res.conjugate_to}
    return {"separated": True, "witness": str(res), "degreeBound": d_max,
            "value": _report_dict(evaluation.evaluate(res, target))}


def cmd_zero_locus(args):
    a = load_tuple(_need(args.tuple, "--tuple"))
    gens = _polynomials(args, a.m) if (args.expr or args.builtin) else []
    J = evaluation.IdealPresentation(a.m, a.n, gens)
    member = nullstellensatz.zero_locus_member(J, a)
    return {"member": member, "image": evaluation.ideal_dichotomy(J, a).value,
            "generators": [str(g) for g in gens]}


def cmd_nss_experiment(args):
    points = _points_and_shape(args)
    targets = load_tuples(_need(args.target, "--target"))
    d = _need(args.degree, "--degree")
    return nullstellensatz.nullstellensatz_experiment(points, targets, d, jobs=args.jobs).as_dict()


def cmd_builtins(args):
    return {"builtins": BUILTINS}


COMMANDS = {
    "eval": cmd_eval,
    "generates": cmd_generates,
    "conjugate": cmd_conjugate,
    "fingerprint": cmd_fingerprint,
    "check-pi": cmd_check_pi,
    "check-central": cmd_check_central,
    "make-central": cmd_make_central,
    "central-for-points": cmd_central_for_points,
    "ideal-of-points": cmd_ideal_of_points,
    "separate": cmd_separate,
    "zero-locus": cmd_zero_locus,
    "nss-experiment": cmd_nss_experiment,
    "builtins": cmd_builtins,
}

RANDOMIZED = {"check-pi", "check-central", "make-central", "central-for-points"}


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", type=int, help="matrix size")
    common.add_argument("--m", type=int, help="number of generators")
    common.add_argument("--expr", action="append", help="expression (repeat for ideal generators)")
    common.add_argument("--builtin", help="named polynomial, e.g. 'std(4)', comm_sq, 'formanek(3)'")
    common.add_argument("--tuple", help="tuple JSON file")
    common.add_argument("--tuples", help="JSON file with a list of tuples")
    common.add_argument("--target", help="target tuple file (or list of tuples for nss-experiment)")
    common.add_argument("--degree", type=int, help="degree bound")
    common.add_argument("--maxlen", type=int, help="necklace length bound (default n^2)")
    common.add_argument("--mode", choices=[central.EXACT, central.RANDOM], default=central.EXACT)
    common.add_argument("--trials", type=int, default=128)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--entry-range", type=int, default=central.DEFAULT_ENTRY_RANGE)
    common.add_argument("--ceiling", type=int, help="substitution ceiling for exact PI checks")
    common.add_argument("--jobs", type=int, default=1)
    common.add_argument("--out", help="write the run record here instead of stdout")

    parser = argparse.ArgumentParser(prog="pitrace", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sub.add_parser(name, parents=[common])
    return parser


def _parameters(args):
    skip = {"command", "out", "jobs"}
    return {k: v for k, v in sorted(vars(args).items()) if k not in skip and v is not None}


def run(argv=None):
    """Execute one command; returns (exit code, run record)."""
    args = build_parser().parse_args(argv)
    record = {
        "command": args.command,
        "parameters": _parameters(args),
        "seed": args.seed if args.command in RANDOMIZED else None,
        "ceilings": {"maxTerms": max_terms(), "maxSubstitutions": args.ceiling or max_substitutions()},
    }
    start = time.perf_counter()
    code = 0
    try:
        record["result"] = COMMANDS[args.command](args)
    except (ParseError, FileNotFoundError, IsADirectoryError) as exc:
        code, record["error"] = EXIT_MALFORMED, str(exc)
    except (PreconditionError, DimensionError) as exc:
        code, record["error"] = EXIT_PRECONDITION, str(exc)
    except ResourceError as exc:
        code, record["error"] = EXIT_RESOURCE, str(exc)
    except InternalConsistencyError as exc:
        code, record["error"] = EXIT_INTERNAL, str(exc)
    record["timings"] = {"seconds": round(time.perf_counter() - start, 6)}
    return code, record, args


def main(argv=None):
    code, record, args = run(argv)
    text = json.dumps(record, indent=2) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if code:
        sys.stderr.write(f"pitrace: {record['error']}\n")
    return code


if __name__ == "__main__":
    sys.exit(main())

"""Command-line interface: one binary, one subcommand per module.

Exit codes: 0 ok, 2 parse error, 3 domain error, 4 precision error,
5 resource limit.  ``--json`` prints a machine-readable result on stdout;
diagnostics go to stderr.  The version string carries a hash of the frozen
convention registry so outputs are comparable across builds.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from fractions import Fraction

from . import __version__
from .errors import (
    DomainError,
    ParseError,
    PrecisionError,
    ResourceError,
    TwistorError,
)
from .gaussian import GaussianRational, parse_gaussian
from .rationals import DEFAULT_PRECISION, PAdic, Place, QuadExt, parse_rational

CONVENTIONS = {
    "hasse_invariant": "product of (a_i, a_j) over i < j",
    "quaternion_norm": "t^2 - a x^2 - b y^2 + a b z^2",
    "conic_model": "-a x^2 - b y^2 + a b z^2 = 0",
    "hp1_quotient": "left scalars; chart q2^-1 q1; GL(2,H) on the right",
    "real_structure": "left multiplication by j",
    "clifford_generators": "first r square to +1, last s to -1; type by (s - r) mod 8",
    "heisenberg_law": "(a,b,c)(a',b',c') = (a+a', b+b', c+c'+a b')",
    "central_character": "exp(2 pi i c / N)",
    "sl2_vector_action": "row vectors: (a, b) -> (a, b) g",
    "intertwiner": "U_g pi(act(g, x)) U_g^-1 = pi(x); first column phase positive",
    "degree_sign": "clutching winding of plus family = +1",
    "slope": "degree / rank; Hodge weight w maps to slope w/2",
}

CONVENTION_HASH = hashlib.sha256(
    json.dumps(CONVENTIONS, sort_keys=True).encode()
).hexdigest()[:12]

EXIT_CODES = {
    "ok": 0,
    "parse-error": 2,
    "domain-error": 3,
    "precision-error": 4,
    "resource-error": 5,
}


def _to_jsonable(x):
    if isinstance(x, Fraction):
        return str(x) if x.denominator != 1 else str(x.numerator)
    if isinstance(x, GaussianRational):
        return repr(x)
    if isinstance(x, (PAdic, QuadExt)):
        return repr(x)
    if isinstance(x, complex):
        return [x.real, x.imag]
    if isinstance(x, dict):
        return {str(k): _to_jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_to_jsonable(v) for v in x]
    return x


def _parse_place(text: str) -> Place:
    return Place.parse(text)


def _parse_fraction_list(text: str) -> list[Fraction]:
    try:
        return [Fraction(t) for t in text.split(",") if t.strip()]
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"bad rational list {text!r}") from exc


# ---------------------------------------------------------------------------
# subcommand handlers: each returns a JSON-able payload
# ---------------------------------------------------------------------------


def cmd_hilbert(args):
    from .symbols import classify_quaternion, hilbert_symbol

    place = _parse_place(args.place)
    a, b = parse_rational(args.a), parse_rational(args.b)
    s = hilbert_symbol(a, b, place)
    return {"symbol": s, "class": classify_quaternion(a, b, place)}


def cmd_reciprocity(args):
    from .symbols import hilbert_reciprocity

    symbols, product = hilbert_reciprocity(parse_rational(args.a), parse_rational(args.b))
    return {
        "symbols": {str(place): s for place, s in symbols.items()},
        "product": product,
    }


def cmd_conic(args):
    from .symbols import conic_point, hilbert_symbol

    place = _parse_place(args.place)
    a, b = parse_rational(args.a), parse_rational(args.b)
    ext = parse_rational(args.ext) if args.ext is not None else None
    pt = conic_point(a, b, place, extension=ext, prec=args.precision)
    if pt is None:
        return {
            "symbol": hilbert_symbol(a, b, place),
            "point": None,
            "note": "no point over the base completion; retry with --ext",
        }
    return {
        "symbol": hilbert_symbol(a, b, place),
        "extension": _to_jsonable(pt.extension),
        "point": [_to_jsonable(c) for c in pt.coords],
    }


def cmd_quat(args):
    from .quaternion import QuaternionAlgebra
    from .symbols import find_zero_divisor

    alg = QuaternionAlgebra(parse_rational(args.a), parse_rational(args.b), args.field)
    if args.op == "zero-divisor":
        zd = find_zero_divisor(alg)
        return {"zero_divisor": None if zd is None else [_to_jsonable(c) for c in zd.coeffs]}
    x = alg.element(*_parse_fraction_list(args.x))
    if args.op == "norm":
        return {"norm": _to_jsonable(x.norm())}
    if args.op == "conj":
        return {"conj": [_to_jsonable(c) for c in x.conj().coeffs]}
    y = alg.element(*_parse_fraction_list(args.y))
    return {"product": [_to_jsonable(c) for c in (x * y).coeffs]}


def cmd_qform(args):
    from .quadforms import (
        QuadraticForm,
        discriminant,
        hasse_invariant,
        is_isotropic,
        signature,
        witt_decompose,
        witt_equivalent,
    )

    form = QuadraticForm.diagonal(_parse_fraction_list(args.diag))
    place = _parse_place(args.place) if args.place else None
    if args.op == "hasse":
        if place is None:
            raise ParseError("--place is required for hasse")
        return {
            "hasse": hasse_invariant(form, place),
            "discriminant": _to_jsonable(discriminant(form)),
            "signature": signature(form),
        }
    if args.op == "isotropic":
        if place is None:
            raise ParseError("--place is required for isotropic")
        return {"isotropic": is_isotropic(form, place)}
    if args.op == "witt":
        if place is None:
            raise ParseError("--place is required for witt")
        h, kernel = witt_decompose(form, place)
        return {"hyperbolic_planes": h, "anisotropic_kernel": _to_jsonable(kernel)}
    if args.op == "equiv":
        if not args.diag2:
            raise ParseError("--diag2 is required for equiv")
        other = QuadraticForm.diagonal(_parse_fraction_list(args.diag2))
        return {"witt_equivalent": witt_equivalent(form, other, place)}
    raise ParseError(f"unknown op {args.op!r}")


def cmd_clifford(args):
    from .clifford import classify, complexify, sbr_class

    t = classify(args.r, args.s)
    return {
        "type": str(t),
        "sbr": sbr_class(args.r, args.s),
        "complexified": str(complexify(args.r, args.s)),
    }


def _parse_cp3(text: str):
    from .twistor import ProjPoint

    parts = [parse_gaussian(t) for t in text.split(",")]
    return ProjPoint.make(*parts)


def cmd_twistor(args):
    from . import twistor

    if args.action == "rho-tw":
        pt = _parse_cp3(args.value)
        return {"image": [_to_jsonable(c) for c in twistor.rho_tw(pt).coords]}
    if args.action == "pi":
        q = twistor.pi(_parse_cp3(args.value))
        return {
            "q1": [_to_jsonable(q.q1.z1), _to_jsonable(q.q1.z2)],
            "q2": [_to_jsonable(q.q2.z1), _to_jsonable(q.q2.z2)],
        }
    if args.action == "fiber":
        try:
            part1, part2 = args.value.split(";")
        except ValueError as exc:
            raise ParseError("fiber expects 'z1,z2;z3,z4'") from exc
        g1 = [parse_gaussian(t) for t in part1.split(",")]
        g2 = [parse_gaussian(t) for t in part2.split(",")]
        q = twistor.QuatProjPoint(twistor.HQuat(*g1), twistor.HQuat(*g2))
        line = twistor.fiber(q)
        return {
            "v1": [_to_jsonable(c) for c in line.v1],
            "v2": [_to_jsonable(c) for c in line.v2],
            "real_line": line.is_real_line(),
        }
    if args.action == "degree":
        fam = {
            "plus": twistor.pauli_plus_family,
            "minus": twistor.pauli_minus_family,
            "const": twistor.constant_family,
        }[args.value]
        return {"degree": twistor.clutching_degree(fam)}
    raise ParseError(f"unknown twistor action {args.action!r}")


def cmd_hodge(args):
    from . import hodge

    if args.action == "to-twistor":
        with open(args.file, encoding="utf-8") as fh:
            data = json.load(fh)
        fil = {
            int(p): [[parse_gaussian(str(c)) for c in vec] for vec in basis]
            for p, basis in data["filtration"].items()
        }
        h = hodge.PureHodgeStructure.make(int(data["n"]), int(data["w"]), fil)
        ok, bad = hodge.validate_pure(h)
        if not ok:
            raise DomainError(f"structure is not pure (fails at p={bad})")
        t = hodge.to_twistor(h)
        eq = hodge.to_equivariant(h)
        return {
            "summands": [[_to_jsonable(s), m] for s, m in t.summands],
            "rank": t.rank,
            "degree": t.degree,
            "weights": list(eq.weights),
            "hodge_numbers": {f"{p},{q}": d for (p, q), d in hodge.hodge_numbers(h).items()},
        }
    if args.action == "round-trip":
        import random as _random

        rng = _random.Random(args.seed)
        failures = 0
        for _ in range(args.trials):
            h = hodge.random_pure_structure(args.n, args.w, rng)
            if hodge.from_equivariant(hodge.to_equivariant(h)) != hodge.hodge_numbers(h):
                failures += 1
        return {"trials": args.trials, "failures": failures, "seed": args.seed}
    raise ParseError(f"unknown hodge action {args.action!r}")


def _parse_sl2(text: str, n: int):
    vals = [int(t) % n for t in text.split(",")]
    if len(vals) != 4:
        raise ParseError("matrix needs 4 comma-separated entries a,b,c,d")
    return (vals[0], vals[1]), (vals[2], vals[3])


def cmd_weil(args):
    from . import weil

    if args.action == "gauss":
        val = weil.gauss_sum(args.p, args.a)
        return {"p": args.p, "a": args.a, "sum": _to_jsonable(complex(val))}
    if args.action == "svn":
        return {"p": args.p, "unique": weil.svn_check(args.p, seed=args.seed)}
    if args.action == "cocycle":
        g = _parse_sl2(args.g, args.p)
        h = _parse_sl2(args.h, args.p)
        c = weil.cocycle(g, h, args.p)
        return {"cocycle": _to_jsonable(c), "modulus": abs(c)}
    if args.action == "maslov":
        from .quadforms import signature

        lines = []
        for chunk in args.lines.split(";"):
            x, y = chunk.split(",")
            lines.append(weil.LagrangianLine.make(Fraction(x), Fraction(y)))
        if len(lines) != 3:
            raise ParseError("maslov expects three lines 'x,y;x,y;x,y'")
        form = weil.maslov_form(*lines)
        if args.field == "R":
            pos, neg = signature(form)
            return {"signature": pos - neg}
        place = Place.infinite() if args.field == "Q" else Place.finite(int(args.field.split(":")[1]))
        inv = weil.maslov_index(*lines, place)
        return {
            "dim": inv.dim,
            "discriminant": _to_jsonable(inv.disc),
            "hasse": inv.hasse,
            "place": str(inv.place),
        }
    raise ParseError(f"unknown weil action {args.action!r}")


def cmd_verify(args):
    from .acceptance import run_all

    results = run_all(seed=args.seed, quick=args.quick)
    payload = {
        "seed": args.seed,
        "quick": args.quick,
        "criteria": [
            {
                "id": r.criterion,
                "status": "pass" if r.passed else "fail",
                "detail": r.detail,
                "failures": _to_jsonable(r.failures),
            }
            for r in results
        ],
        "all_passed": all(r.passed for r in results),
    }
    if not args.json:
        for r in results:
            print(f"{r.criterion}: {'PASS' if r.passed else 'FAIL'} — {r.detail}")
        print("all passed" if payload["all_passed"] else "FAILURES PRESENT")
        payload["_quiet"] = True
    return payload


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # exit 2 on parse problems
        self.print_usage(sys.stderr)
        raise ParseError(message)


def build_parser() -> _Parser:
    p = _Parser(prog="twistorp1", description=__doc__)
    p.add_argument(
        "--version",
        action="version",
        version=f"twistorp1 {__version__} (conventions {CONVENTION_HASH})",
    )
    p.add_argument("--json", action="store_true", help="machine-readable output")
    p.add_argument("--seed", type=int, default=0, help="seed for randomized runs")
    p.add_argument(
        "--precision", type=int, default=DEFAULT_PRECISION, help="p-adic precision"
    )
    # the global flags are also accepted after the subcommand name
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS)
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS)
    common.add_argument("--precision", type=int, default=argparse.SUPPRESS)

    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("hilbert", parents=[common], help="Hilbert symbol (a,b) at a place")
    s.add_argument("a")
    s.add_argument("b")
    s.add_argument("--place", required=True)
    s.set_defaults(fn=cmd_hilbert)

    s = sub.add_parser("reciprocity", parents=[common], help="all local symbols and their product")
    s.add_argument("a")
    s.add_argument("b")
    s.set_defaults(fn=cmd_reciprocity)

    s = sub.add_parser("conic", parents=[common], help="explicit conic point over a completion")
    s.add_argument("a")
    s.add_argument("b")
    s.add_argument("--place", required=True)
    s.add_argument("--ext", default=None, help="quadratic extension discriminant")
    s.set_defaults(fn=cmd_conic)

    s = sub.add_parser("quat", parents=[common], help="quaternion algebra arithmetic")
    s.add_argument("op", choices=["mul", "conj", "norm", "zero-divisor"])
    s.add_argument("--a", required=True)
    s.add_argument("--b", required=True)
    s.add_argument("--field", default="Q", help="Q, R, or Qp:<p>")
    s.add_argument("--x", default="0,0,0,0", help="element t,x,y,z")
    s.add_argument("--y", default="0,0,0,0", help="second element for mul")
    s.set_defaults(fn=cmd_quat)

    s = sub.add_parser("qform", parents=[common], help="quadratic form invariants")
    s.add_argument("--diag", required=True, help="diagonal entries a1,a2,...")
    s.add_argument("--diag2", default=None, help="second form for equiv")
    s.add_argument("--op", required=True, choices=["hasse", "isotropic", "witt", "equiv"])
    s.add_argument("--place", default=None)
    s.set_defaults(fn=cmd_qform)

    s = sub.add_parser("clifford", parents=[common], help="classify Cliff(r, s)")
    s.add_argument("r", type=int)
    s.add_argument("s", type=int)
    s.set_defaults(fn=cmd_clifford)

    s = sub.add_parser("twistor", parents=[common], help="fibration CP^3 -> HP^1")
    s.add_argument("action", choices=["rho-tw", "pi", "fiber", "degree"])
    s.add_argument("value", help="coordinates or family name")
    s.set_defaults(fn=cmd_twistor)

    s = sub.add_parser("hodge", parents=[common], help="Hodge <-> twistor dictionary")
    s.add_argument("action", choices=["to-twistor", "round-trip"])
    s.add_argument("file", nargs="?", help="JSON input for to-twistor")
    s.add_argument("--n", type=int, default=4)
    s.add_argument("--w", type=int, default=1)
    s.add_argument("--trials", type=int, default=100)
    s.set_defaults(fn=cmd_hodge)

    s = sub.add_parser("weil", parents=[common], help="finite-model quantization")
    s.add_argument("action", choices=["gauss", "svn", "cocycle", "maslov"])
    s.add_argument("p", type=int, nargs="?", default=5)
    s.add_argument("a", type=int, nargs="?", default=1)
    s.add_argument("--g", default="1,0,0,1")
    s.add_argument("--h", default="1,0,0,1")
    s.add_argument("--lines", default="1,0;0,1;1,1")
    s.add_argument("--field", default="Q")
    s.set_defaults(fn=cmd_weil)

    s = sub.add_parser("verify", parents=[common], help="run the acceptance suite")
    s.add_argument("--quick", action="store_true")
    s.set_defaults(fn=cmd_verify)

    return p


def dispatch(argv) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        payload = args.fn(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_CODES["parse-error"]
    except (DomainError,) as exc:
        print(f"domain error: {exc}", file=sys.stderr)
        return EXIT_CODES["domain-error"]
    except PrecisionError as exc:
        print(f"precision error: {exc}", file=sys.stderr)
        return EXIT_CODES["precision-error"]
    except ResourceError as exc:
        print(f"resource error: {exc}", file=sys.stderr)
        return EXIT_CODES["resource-error"]
    except TwistorError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CODES["domain-error"]
    if payload is not None and not payload.pop("_quiet", False):
        if args.json:
            json.dump(payload, sys.stdout, indent=2, default=_to_jsonable)
            print()
        else:
            for key, value in payload.items():
                print(f"{key}: {value}")
    if args.fn is cmd_verify and payload is not None and not payload["all_passed"]:
        return 1
    return EXIT_CODES["ok"]


def main() -> None:
    sys.exit(dispatch(sys.argv[1:]))


if __name__ == "__main__":
    main()

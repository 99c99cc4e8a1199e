"""Command-line front end.

One binary, subcommand per module: ``nov``, ``fock``, ``frob``, ``tft``,
``descend``, ``schurq``, and ``verify`` for the certificate suites.  All
numeric output is exact rational text ("p/q"); there is no floating point
in any code path.  Exit codes: 0 on success, 1 when a requested check
fails, 2 on malformed input.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from fractions import Fraction
from pathlib import Path

from . import __version__, verify as verify_mod
from .exactalg import (NovikovElement, divided_power, format_rational,
                       monomial_degree, degree as novikov_degree)
from .fock import FockPolynomial, bracket, central_term, parse, render, virasoro_L
from .frobenius import FrobeniusData, associator_partitions, quantum_point, star_power
from .tft import CurveType, StableGraph, check_gluing_invariance, dimension, evaluate
from .descend import (TargetProfile, enumerate_descendants, large_phase_dims,
                      parse_descendant_poly, render_descendant_poly, schur_q,
                      schur_q_coproduct, small_phase_specialize)


class InputError(Exception):
    pass


def _load_text(value: str) -> str:
    """Inline JSON (starts with '{' or '[') or a file path."""
    stripped = value.strip()
    if stripped.startswith("{") or stripped.startswith("["):
        return stripped
    path = Path(value)
    if not path.exists():
        raise InputError(f"no such file: {value}")
    return path.read_text()


def _novikov(value: str) -> NovikovElement:
    try:
        return NovikovElement.from_json(_load_text(value))
    except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
        raise InputError(f"bad Novikov element {value!r}: {exc}") from exc


def _int_vector(text: str):
    try:
        return tuple(int(x) for x in text.split(",") if x.strip() != "")
    except ValueError as exc:
        raise InputError(f"bad integer vector {text!r}") from exc


def _emit(args, text_out: str, json_obj):
    if getattr(args, "format", "text") == "json":
        print(json.dumps(json_obj, indent=2, sort_keys=True))
    else:
        print(text_out)
    return 0


# -- nov ---------------------------------------------------------------------


def cmd_nov(args) -> int:
    if args.action in ("add", "mul"):
        a, b = _novikov(args.a), _novikov(args.b)
        out = a + b if args.action == "add" else a * b
        return _emit(args, repr(out), out.to_obj())
    if args.action == "divided-power":
        out = divided_power(args.k, rank=args.rank)
        return _emit(args, repr(out), out.to_obj())
    if args.action == "degree":
        alpha = _int_vector(args.alpha) if args.alpha else ()
        c1 = _int_vector(args.c1)
        deg = monomial_degree(alpha, args.v, c1)
        return _emit(args, str(deg), {"degree": deg})
    raise InputError(f"unknown nov action {args.action!r}")


# -- fock --------------------------------------------------------------------


def cmd_fock(args) -> int:
    if args.action == "act":
        poly = parse(args.poly, args.bound)
        ops = {"L": virasoro_L, "v": None, "a": None}
        from .fock import parse_operator_label

        op = parse_operator_label(args.op)
        out = op(poly)
        return _emit(args, render(out), {"result": render(out)})
    if args.action == "bracket":
        poly = parse(args.poly, args.bound)
        out = bracket(args.a, args.b, poly)
        return _emit(args, render(out), {"result": render(out)})
    if args.action == "central":
        lam = central_term(args.m, args.N)
        return _emit(args, format_rational(lam), {"lambda": format_rational(lam)})
    raise InputError(f"unknown fock action {args.action!r}")


# -- frob --------------------------------------------------------------------


def _frobenius_from(args) -> FrobeniusData:
    source = getattr(args, "file", None)
    if source is None:
        return quantum_point()
    try:
        return FrobeniusData.from_json(_load_text(source))
    except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
        raise InputError(f"bad Frobenius data {source!r}: {exc}") from exc


def _vector(data: FrobeniusData, text: str):
    parts = [p for p in text.split(",")]
    if len(parts) != data.rank:
        raise InputError(
            f"vector {text!r} has {len(parts)} components, data has rank {data.rank}"
        )
    try:
        return [data.ring.parse(p.strip()) for p in parts]
    except ValueError as exc:
        raise InputError(f"bad coefficient in {text!r}: {exc}") from exc


def cmd_frob(args) -> int:
    if args.action == "validate":
        data = _frobenius_from(args)
        report = data.validate()
        obj = {
            "passed": report.passed,
            "checks": [
                {"name": c.name, "status": "pass" if c.passed else "fail",
                 **({"witness": c.witness} if c.witness else {})}
                for c in report.checks
            ],
        }
        _emit(args, report.render(), obj)
        return 0 if report.passed else 1
    if args.action == "star":
        data = _frobenius_from(args)
        vec = _vector(data, args.x)
        out = star_power(data, vec, args.k)
        text = ", ".join(data.ring.render(c) for c in out)
        return _emit(args, text, {"result": [data.ring.render(c) for c in out]})
    if args.action == "assoc":
        data = _frobenius_from(args)
        groups = [g for g in args.inputs.split(";")]
        if len(groups) != 4:
            raise InputError("--inputs needs four ';'-separated vectors")
        vecs = [_vector(data, g) for g in groups]
        vals = associator_partitions(data, *vecs)
        labels = ("12|34", "13|24", "14|23")
        text = "\n".join(f"{l}: {v.render()}" for l, v in zip(labels, vals))
        equal = vals[0] == vals[1] == vals[2]
        _emit(args, text + f"\nequal: {equal}",
              {l: v.render() for l, v in zip(labels, vals)} | {"equal": equal})
        return 0 if equal else 1
    raise InputError(f"unknown frob action {args.action!r}")


# -- tft ---------------------------------------------------------------------


def _graph_from(args) -> StableGraph:
    try:
        return StableGraph.from_json(_load_text(args.graph))
    except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
        raise InputError(f"bad graph {args.graph!r}: {exc}") from exc


def cmd_tft(args) -> int:
    if args.action == "dim":
        d = dimension(CurveType(args.g, args.n))
        return _emit(args, str(d), {"dimension": d})
    if args.action == "eval":
        graph = _graph_from(args)
        args.file = args.frob
        data = _frobenius_from(args)
        amp = evaluate(graph, data, novikov_dim=args.dim)
        obj = {
            "legs": list(amp.legs),
            "values": {
                "".join(map(str, k)): v.render() for k, v in sorted(amp.values.items())
            },
        }
        return _emit(args, amp.render(), obj)
    if args.action == "check":
        graph = _graph_from(args)
        args.file = args.frob
        data = _frobenius_from(args)
        rng = random.Random(args.seed)
        report = check_gluing_invariance(graph, data, trials=args.trials, rng=rng)
        _emit(args, report.render(),
              {"equal": report.equal,
               **({"witness": report.witness} if report.witness else {})})
        return 0 if report.equal else 1
    raise InputError(f"unknown tft action {args.action!r}")


# -- descend / schurq ---------------------------------------------------------


def _profile_from(args) -> TargetProfile:
    if args.profile is None:
        return TargetProfile.point()
    try:
        return TargetProfile.from_json(_load_text(args.profile))
    except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
        raise InputError(f"bad profile {args.profile!r}: {exc}") from exc


def cmd_descend(args) -> int:
    if args.action == "vars":
        profile = _profile_from(args)
        out = enumerate_descendants(profile, args.bound)
        lines = [
            f"{v.name()}  degree {profile.variable_degree(v.k, v.i)}" for v in out
        ]
        return _emit(
            args,
            "\n".join(lines) if lines else "(none)",
            [
                {"k": v.k, "i": v.i,
                 "degree": profile.variable_degree(v.k, v.i)}
                for v in out
            ],
        )
    if args.action == "specialize":
        try:
            poly = parse_descendant_poly(args.expr)
        except ValueError as exc:
            raise InputError(str(exc)) from exc
        out = small_phase_specialize(poly)
        return _emit(args, render_descendant_poly(out),
                     {"result": render_descendant_poly(out)})
    if args.action == "dims":
        profile = _profile_from(args)
        dims = large_phase_dims(profile, args.bound)
        lines = [
            f"degree {d}: primitive {dims['primitive'][d]}, hopf {dims['hopf'][d]}"
            for d in range(args.bound + 1)
        ]
        return _emit(args, "\n".join(lines), dims)
    raise InputError(f"unknown descend action {args.action!r}")


def cmd_schurq(args) -> int:
    if args.action == "expand":
        poly = schur_q(args.r, args.vars)
        bits = []
        for mono, coeff in sorted(poly.terms.items()):
            factors = [] if coeff == 1 and mono else [format_rational(coeff)]
            factors += [f"x{v}" + (f"^{e}" if e != 1 else "") for v, e in mono]
            bits.append("*".join(factors) or format_rational(coeff))
        text = " + ".join(bits) if bits else "0"
        return _emit(args, text, {"result": text})
    if args.action == "coproduct":
        pairs = schur_q_coproduct(args.r)
        text = " + ".join(f"Q_{i}(x)Q_{j}" for i, j in pairs)
        return _emit(args, text, {"pairs": [[i, j] for i, j in pairs]})
    raise InputError(f"unknown schurq action {args.action!r}")


# -- verify --------------------------------------------------------------------


def cmd_verify(args) -> int:
    if args.suite == "all":
        certs = verify_mod.run_all(n_table=args.N, quick=args.quick)
    else:
        fn = verify_mod.SUITES.get(args.suite)
        if fn is None:
            raise InputError(
                f"unknown suite {args.suite!r}; choose from "
                f"{', '.join(sorted(verify_mod.SUITES))} or 'all'"
            )
        certs = [fn()]
    if args.format == "json":
        print(json.dumps([c.to_obj() for c in certs], indent=2, sort_keys=True))
    else:
        for cert in certs:
            print(cert.render_text())
        total = sum(len(c.checks) for c in certs)
        failed = sum(
            1 for c in certs for ch in c.checks if not ch.passed
        )
        print(f"{total - failed}/{total} checks passed")
    return 0 if all(c.passed for c in certs) else 1


# -- parser ---------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="qtft",
        description="exact 2D TFT algebra engine",
    )
    top.add_argument("--version", action="version", version=__version__)
    subs = top.add_subparsers(dest="command", required=True)

    def fmt(p):
        p.add_argument("--format", choices=("text", "json"), default="text")

    nov = subs.add_parser("nov", help="Novikov ring arithmetic")
    nov_sub = nov.add_subparsers(dest="action", required=True)
    for name in ("add", "mul"):
        p = nov_sub.add_parser(name)
        p.add_argument("--a", required=True, help="element (JSON or file)")
        p.add_argument("--b", required=True)
        fmt(p)
    p = nov_sub.add_parser("divided-power")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--rank", type=int, default=0)
    fmt(p)
    p = nov_sub.add_parser("degree")
    p.add_argument("--alpha", default="", help="lattice vector, e.g. 1,-2")
    p.add_argument("--v", type=int, required=True, help="v-exponent")
    p.add_argument("--c1", default="", help="pairing covector, e.g. 1,0")
    fmt(p)
    nov.set_defaults(fn=cmd_nov)

    fock = subs.add_parser("fock", help="Fock-space operators")
    fock_sub = fock.add_subparsers(dest="action", required=True)
    p = fock_sub.add_parser("act")
    p.add_argument("--op", required=True, help="L:k, v:k, or a:n")
    p.add_argument("--poly", required=True, help='e.g. "T_7" or "3*t_2^2"')
    p.add_argument("--bound", type=int, default=24)
    fmt(p)
    p = fock_sub.add_parser("bracket")
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p.add_argument("--poly", required=True)
    p.add_argument("--bound", type=int, default=24)
    fmt(p)
    p = fock_sub.add_parser("central")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--N", type=int, required=True, help="truncation bound")
    fmt(p)
    fock.set_defaults(fn=cmd_fock)

    frob = subs.add_parser("frob", help="Frobenius-algebra data")
    frob_sub = frob.add_subparsers(dest="action", required=True)
    p = frob_sub.add_parser("validate")
    p.add_argument("file", help="data file (JSON)")
    fmt(p)
    p = frob_sub.add_parser("star")
    p.add_argument("file", nargs="?", default=None,
                   help="data file; omitted = quantum point")
    p.add_argument("--x", required=True, help="coordinates, comma-separated")
    p.add_argument("--k", type=int, required=True)
    fmt(p)
    p = frob_sub.add_parser("assoc")
    p.add_argument("file", nargs="?", default=None)
    p.add_argument("--inputs", required=True,
                   help="four vectors separated by ';'")
    fmt(p)
    frob.set_defaults(fn=cmd_frob)

    tft = subs.add_parser("tft", help="stable graphs and amplitudes")
    tft_sub = tft.add_subparsers(dest="action", required=True)
    p = tft_sub.add_parser("dim")
    p.add_argument("--g", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    fmt(p)
    p = tft_sub.add_parser("eval")
    p.add_argument("--graph", required=True)
    p.add_argument("--frob", default=None, help="data file; omitted = quantum point")
    p.add_argument("--dim", type=int, default=0,
                   help="target dimension d for per-edge v-weights")
    fmt(p)
    p = tft_sub.add_parser("check")
    p.add_argument("--graph", required=True)
    p.add_argument("--frob", default=None)
    p.add_argument("--trials", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    fmt(p)
    tft.set_defaults(fn=cmd_tft)

    descend = subs.add_parser("descend", help="descendant variables")
    descend_sub = descend.add_subparsers(dest="action", required=True)
    p = descend_sub.add_parser("vars")
    p.add_argument("--profile", default=None, help="profile file; omitted = point")
    p.add_argument("--bound", type=int, required=True)
    fmt(p)
    p = descend_sub.add_parser("specialize")
    p.add_argument("expr", help='e.g. "t_{2,1}*t_{0,0} + t_{3,0}"')
    fmt(p)
    p = descend_sub.add_parser("dims")
    p.add_argument("--profile", default=None)
    p.add_argument("--bound", type=int, required=True)
    fmt(p)
    descend.set_defaults(fn=cmd_descend)

    schurq = subs.add_parser("schurq", help="Schur Q-functions")
    schurq_sub = schurq.add_subparsers(dest="action", required=True)
    p = schurq_sub.add_parser("expand")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--vars", type=int, required=True)
    fmt(p)
    p = schurq_sub.add_parser("coproduct")
    p.add_argument("--r", type=int, required=True)
    fmt(p)
    schurq.set_defaults(fn=cmd_schurq)

    ver = subs.add_parser("verify", help="verification certificate suites")
    ver.add_argument("suite", help="'all' or a suite name")
    ver.add_argument("--N", type=int, default=12,
                     help="Virasoro table bound for 'all'")
    ver.add_argument("--quick", action="store_true",
                     help="shrink the heavyweight suites")
    ver.add_argument("--format", choices=("text", "json"), default="text")
    ver.set_defaults(fn=cmd_verify)

    return top


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except InputError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def script_entry():
    sys.exit(main())


if __name__ == "__main__":
    script_entry()

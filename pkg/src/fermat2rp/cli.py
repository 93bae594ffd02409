"""Command-line front end: ``fermat2rp <subcommand> [options]``.

Exit status is 0 on success, 1 when the input is mathematically out of
range and 2 on usage errors. In JSON mode a single object is written to
stdout and every number is a decimal string.
"""

from __future__ import annotations

import argparse
import contextlib
import json
import logging
import sys
from fractions import Fraction

from .arith import Poly
from .cluster import frey_cluster_picture, inertia_orbits, render_ascii, tame_conductor
from .conductor import TARGETS, application_conductor_r5, classify_prime, conductor_exponent
from .eliminate import (
    DEFAULT_PRIMES,
    EXTENDED_PRIMES,
    EliminationConfig,
    eliminate,
    load_newforms,
    resultant_bound,
    unit_bound,
)
from .errors import DomainError
from .frey import (
    EquationInstance,
    build_frey_curve,
    build_general_curve,
    check_hypotheses,
    frey_discriminant,
    general_params,
    igusa_invariants_r5,
    lmt_family,
    parametrization_check,
)
from .frobenius import ResidueFieldSpec, frey_trace_table, special_fibre_r5
from .padic import wild_conductor


def _num(x) -> str:
    if isinstance(x, Fraction) and x.denominator == 1:
        x = x.numerator
    return str(x)


def _stringify(obj):
    if isinstance(obj, bool) or obj is None or isinstance(obj, str):
        return obj
    if isinstance(obj, (int, Fraction)):
        return _num(obj)
    if isinstance(obj, dict):
        return {str(k): _stringify(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_stringify(v) for v in obj]
    return str(obj)


def _int_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.replace(" ", "").split(",") if t]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _equation_args(p: argparse.ArgumentParser, need_ab: bool = True):
    p.add_argument("--A", type=int, default=-5, help="coefficient of x^2 (default -5)")
    p.add_argument("--B", type=int, default=1, help="coefficient of y^r (default 1)")
    p.add_argument("--C", type=int, default=1, help="coefficient of z^p (default 1)")
    p.add_argument("--r", type=int, default=5, help="prime exponent r >= 5 (default 5)")
    p.add_argument("--a", type=int, required=need_ab)
    p.add_argument("--b", type=int, required=need_ab)


def _instance(args) -> EquationInstance:
    return EquationInstance(args.A, args.B, args.C, args.r)


def cmd_curve(args) -> dict:
    if args.z is not None or args.s is not None:
        if args.z is None or args.s is None:
            raise _Usage("--z and --s must be given together")
        model = build_general_curve(args.z, args.s, args.r)
        return {
            "model": "general", "z": args.z, "s": args.s, "r": args.r,
            "coefficients": model.coefficients(), "genus": model.genus,
            "poly_discriminant": model.poly_discriminant, "discriminant": model.discriminant,
        }
    if args.a is None or args.b is None:
        raise _Usage("--a and --b are required unless --z/--s are given")
    inst = _instance(args)
    model = build_frey_curve(inst, args.a, args.b)
    gp = general_params(inst, args.a, args.b)
    return {
        "model": "frey", "A": inst.A, "B": inst.B, "r": inst.r, "a": args.a, "b": args.b,
        "coefficients": model.coefficients(), "genus": model.genus, "cm": model.cm,
        "poly_discriminant": model.poly_discriminant, "discriminant": model.discriminant,
        "discriminant_closed_form": frey_discriminant(inst, args.a, args.b),
        "z": gp.z, "s": gp.s,
    }


def cmd_conductor(args) -> dict:
    inst = _instance(args)
    out = conductor_exponent(inst, args.a, args.b, args.c, args.q, args.target).as_dict()
    if args.application:
        if args.c is None:
            raise _Usage("--application needs --c")
        out["application"] = application_conductor_r5(args.a, args.b, args.c).as_dict()
    return out


def cmd_cluster(args) -> dict:
    pic = frey_cluster_picture(args.z, args.s, args.q, args.r, args.base)
    out = {
        "z": args.z, "s": args.s, "q": args.q, "r": args.r, "base": args.base,
        "clusters": [
            {"members": sorted(c.members), "depth": c.depth} for c in pic.proper_clusters()
        ],
        "ascii": render_ascii(pic),
    }
    if args.q != args.r:
        tame = tame_conductor(pic, inertia_orbits(args.z, args.s, args.q, args.r, args.base))
        out["tame"] = tame.exponent
        out["wild"] = wild_conductor(args.z, args.s, args.q, args.r, args.base)
    return out


def cmd_hypotheses(args) -> dict:
    inst = _instance(args)
    out = check_hypotheses(inst, args.a, args.b, args.c).as_dict()
    if args.q is not None:
        out["prime_case"] = str(classify_prime(inst, args.a, args.b, args.c, args.q))
    return out


def cmd_traces(args) -> dict:
    if args.special_fibre is not None:
        tp = special_fibre_r5(args.special_fibre)
        return {"q": 5, "b_tilde": args.special_fibre, **tp.as_dict()}
    if args.q is None:
        raise _Usage("--q or --special-fibre is required")
    spec = ResidueFieldSpec(args.q)
    table = frey_trace_table(args.q)
    return {
        "q": args.q, "f": spec.f, "N": spec.N, "count": len(table),
        "pairs": [{"a": a, "b": b, **tp.as_dict()} for (a, b), tp in table.items()],
    }


def cmd_eliminate(args) -> dict:
    config = EliminationConfig(
        primes=tuple(args.primes) if args.primes else DEFAULT_PRIMES,
        extended_primes=tuple(args.extended_primes) if args.extended_primes else EXTENDED_PRIMES,
    )
    return eliminate(load_newforms(args.newforms), config).as_dict()


def cmd_igusa(args) -> dict:
    inv, good = igusa_invariants_r5(args.a, args.b)
    return {
        "a": args.a, "b": args.b,
        "J2": inv.J2, "J4": inv.J4, "J6": inv.J6, "J8": inv.J8, "J10": inv.J10,
        "potentially_good_at_2": good,
    }


def cmd_lmt(args) -> dict:
    if args.m is not None or args.n is not None:
        if args.m is None or args.n is None:
            raise _Usage("--m and --n must be given together")
        a, cp = parametrization_check(args.m, args.n)
        return {"m": args.m, "n": args.n, "a": a, "c^p": cp}
    x, y, qa = lmt_family(args.v)
    return {"v": args.v, "x": x, "y": y, "q^alpha": qa}


def cmd_bounds(args) -> dict:
    out = {}
    if args.charpoly is not None:
        primes = resultant_bound(Poly(args.charpoly), args.n)
        out["resultant_bound"] = "no bound" if primes is None else sorted(primes)
    ub = unit_bound()
    out["unit_bound"] = {"N": ub.N, "unit": str(ub.unit), "norm": ub.norm,
                         "primes": list(ub.primes), "bound": ub.bound}
    return out


class _Usage(Exception):
    pass


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fermat2rp", description=__doc__.splitlines()[0])
    parser.add_argument("--format", choices=("json", "text"), default="json",
                        help="output mode (default json)")
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    # the same flags are accepted after the subcommand; SUPPRESS keeps the top-level value
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default=argparse.SUPPRESS)
    common.add_argument("-v", "--verbose", action="store_true", default=argparse.SUPPRESS)
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, help: str) -> argparse.ArgumentParser:
        return sub.add_parser(name, parents=[common], help=help)

    p = add("curve", help="Frey curve C_{A,B,r}(a, b) or C(z, s)")
    _equation_args(p, need_ab=False)
    p.add_argument("--z", type=int)
    p.add_argument("--s", type=int)
    p.set_defaults(func=cmd_curve)

    p = add("conductor", help="conductor exponent at a prime q")
    _equation_args(p)
    p.add_argument("--c", type=int)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--target", choices=TARGETS, default="rep")
    p.add_argument("--application", action="store_true",
                   help="also report the twisted conductor for -5a^2 + b^5 = c^(2p)")
    p.set_defaults(func=cmd_conductor)

    p = add("cluster", help="cluster picture of C(z, s) at q")
    p.add_argument("--z", type=int, required=True)
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--base", choices=("Q", "K"), default="Q")
    p.add_argument("--render", choices=("ascii", "none"), default="none")
    p.set_defaults(func=cmd_cluster)

    p = add("hypotheses", help="irreducibility, modularity and large-image checks")
    _equation_args(p)
    p.add_argument("--c", type=int)
    p.add_argument("--q", type=int, help="also classify this prime")
    p.set_defaults(func=cmd_hypotheses)

    p = add("traces", help="Frobenius trace pairs of the r = 5 Frey curve")
    p.add_argument("--q", type=int)
    p.add_argument("--special-fibre", type=int, metavar="B_TILDE",
                   help="trace pair of y^2 = x^5 + b~^2 x over F_5")
    p.set_defaults(func=cmd_traces)

    p = add("eliminate", help="run the newform elimination")
    p.add_argument("--newforms", required=True, help="JSON Lines eigenvalue file")
    p.add_argument("--primes", type=_int_list)
    p.add_argument("--extended-primes", type=_int_list)
    p.set_defaults(func=cmd_eliminate)

    p = add("igusa", help="Igusa invariants for r = 5")
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--b", type=int, required=True)
    p.set_defaults(func=cmd_igusa)

    p = add("lmt", help="the family 5x^2 + q^2 = y^5, or the (m, n) parametrisation")
    p.add_argument("--v", type=int, default=1)
    p.add_argument("--m", type=int)
    p.add_argument("--n", type=int)
    p.set_defaults(func=cmd_lmt)

    p = add("bounds", help="resultant and unit bounds on p")
    p.add_argument("--charpoly", type=_int_list, help="ascending coefficients, e.g. --charpoly=-5,0,1")
    p.add_argument("--n", type=int, default=4, help="character order (default 4)")
    p.set_defaults(func=cmd_bounds)
    return parser


def _text(obj, indent: int = 0) -> list[str]:
    pad = "  " * indent
    lines = []
    for k, v in obj.items():
        if isinstance(v, dict):
            lines.append(f"{pad}{k}:")
            lines.extend(_text(v, indent + 1))
        elif isinstance(v, list) and v and isinstance(v[0], dict):
            lines.append(f"{pad}{k}:")
            for item in v:
                lines.append(f"{pad}  - " + ", ".join(f"{ik}={_flat(iv)}" for ik, iv in item.items()))
        else:
            lines.append(f"{pad}{k}: {_flat(v)}")
    return lines


def _flat(v) -> str:
    if isinstance(v, list):
        return "[" + ", ".join(_flat(x) for x in v) + "]"
    if isinstance(v, dict):
        return json.dumps(v, sort_keys=True)
    return "null" if v is None else str(v).lower() if isinstance(v, bool) else str(v)


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        with contextlib.redirect_stdout(stdout), contextlib.redirect_stderr(stderr):
            args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.verbose:
        logging.basicConfig(level=logging.INFO, stream=stderr)
    try:
        result = _stringify(args.func(args))
    except _Usage as exc:
        print(f"fermat2rp {args.command}: error: {exc}", file=stderr)
        return 2
    except DomainError as exc:
        print(f"fermat2rp {args.command}: {type(exc).__name__}: {exc}", file=stderr)
        return 1
    except OSError as exc:
        print(f"fermat2rp {args.command}: {exc}", file=stderr)
        return 1
    if args.format == "json":
        stdout.write(json.dumps(result, indent=2, sort_keys=True, ensure_ascii=False) + "\n")
    else:
        stdout.write("\n".join(_text(result)) + "\n")
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()

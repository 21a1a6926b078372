"""Command-line front end.

Every command prints a CommandResult: with ``--json`` a single JSON object
``{schema_version, command, payload, warnings}``, otherwise a plain listing.
Exit codes: 0 success, 1 domain error (JSON carries the error name),
2 usage error.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import SCHEMA_VERSION
from .errors import SalemDynError


# -- input helpers -----------------------------------------------------------------------
def _load_json(arg: str):
    """Inline JSON text or a path to a JSON file."""
    s = arg.strip()
    if s.startswith("{") or s.startswith("["):
        return json.loads(s)
    path = Path(arg)
    if not path.exists():
        raise FileNotFoundError(arg)
    return json.loads(path.read_text())


# -- commands ------------------------------------------------------------------------------
def cmd_salem(args) -> tuple:
    from .salem import classify_root_moduli, is_salem, salem_certificate, trace_polynomial

    P = args.poly
    if args.action == "verify":
        ok = is_salem(P, allow_quadratic=args.allow_quadratic)
        return {"polynomial": P, "is_salem": ok, "pattern": classify_root_moduli(P).to_json()}, []
    if args.action == "value":
        return salem_certificate(P, allow_quadratic=args.allow_quadratic).to_json(), []
    return {"polynomial": P, "trace_polynomial": trace_polynomial(P).to_json()}, []


def cmd_nf(args) -> tuple:
    from .number_field import (
        NumberField,
        PowerOrder,
        element_norm,
        element_trace,
        embedding_signature,
        field_kind,
        inert_by_factorization,
        is_prime_ideal_pO,
        min_poly_over_Q,
        power_basis_discriminant,
    )

    if args.action == "disc":
        return {"polynomial": args.poly, "discriminant": power_basis_discriminant(args.poly)}, []
    if args.action == "kind":
        r1, r2 = embedding_signature(args.poly)
        return {"polynomial": args.poly, "kind": field_kind(args.poly), "signature": [r1, r2]}, []
    K = NumberField(args.poly)
    if args.action == "norm":
        if args.arg is None:
            raise argparse.ArgumentTypeError("nf norm needs an element")
        x = K(args.arg)
        return {
            "polynomial": args.poly,
            "element": x.to_json(),
            "norm": str(element_norm(x)),
            "trace": str(element_trace(x)),
            "minpoly": min_poly_over_Q(x).to_json(),
        }, []
    if args.arg is None:
        raise argparse.ArgumentTypeError("nf ideal-prime needs a prime")
    p = int(args.arg)
    order = PowerOrder(K)
    prime = is_prime_ideal_pO(order, p)
    oracle = inert_by_factorization(K.defining, p)
    return {
        "polynomial": args.poly,
        "p": p,
        "prime": prime,
        "irreducible_mod_p": oracle,
        "agree": prime == oracle,
    }, order.warnings()


def cmd_construct(args) -> tuple:
    from .quaternion import build_construction_certificate

    cert = build_construction_certificate(args.poly, variant=args.variant, v=args.v, bound=args.bound)
    return cert.to_json(), list(cert.warnings)


def cmd_spectrum(args) -> tuple:
    from .dynamics import EndoDescriptor, spectrum_from_descriptor

    d = EndoDescriptor.from_json(_load_json(args.descriptor))
    s = spectrum_from_descriptor(d)
    return s.to_json(), list(s.notes)


def _spectrum_arg(text):
    from .dynamics import Spectrum

    return Spectrum.from_json(_load_json(text))


def cmd_degrees(args) -> tuple:
    from .dynamics import dynamical_degrees

    prof = dynamical_degrees(_spectrum_arg(args.spectrum))
    return prof.to_json(), list(prof.notes)


def cmd_classify(args) -> tuple:
    from .dynamics import EndoDescriptor, classify_diagram

    desc = EndoDescriptor.from_json(_load_json(args.descriptor)) if args.descriptor else None
    res = classify_diagram(args.g, _spectrum_arg(args.spectrum), desc)
    return res.to_json(), list(res.notes)


def cmd_fixpoints(args) -> tuple:
    from .dynamics import count_fixed_points, hyperbolicity, reducibility_criterion

    s = _spectrum_arg(args.spectrum)
    n = count_fixed_points(s)
    return {
        "fixed_points": str(n),
        "hyperbolic": hyperbolicity(s),
        "reducibility": reducibility_criterion(s).to_json(),
    }, []


def cmd_simulate(args) -> tuple:
    from .ergodic import FourierForm, TorusAutomorphism, cesaro_average, random_constant_form

    T = TorusAutomorphism.from_reciprocal_polynomial(args.poly)
    if args.omega:
        omega = FourierForm.from_json(T.g, _load_json(args.omega))
    else:
        omega = random_constant_form(T.g, args.k, seed=args.seed)
    avg, report = cesaro_average(T, omega, args.k, args.n, mode_cap=args.mode_cap)
    if args.trace:
        report.write_csv(args.trace)
    payload = report.to_json()
    payload["omega"] = omega.to_json()
    payload["final_error"] = report.errors[-1] if report.errors else None
    warnings = [] if report.medians_nonincreasing() else ["checkpoint medians increase"]
    if T.zero_entropy:
        warnings.append("zero-entropy automorphism")
    return payload, warnings


def cmd_tables(args) -> tuple:
    from .dynamics import table_rows

    return {"rows": [r.to_json() for r in table_rows(args.dim)]}, []


COMMANDS = {
    "salem": cmd_salem,
    "nf": cmd_nf,
    "construct": cmd_construct,
    "spectrum": cmd_spectrum,
    "degrees": cmd_degrees,
    "classify": cmd_classify,
    "fixpoints": cmd_fixpoints,
    "simulate": cmd_simulate,
    "tables": cmd_tables,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    # SUPPRESS keeps a flag given before the subcommand from being reset by the subparser
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help="emit a JSON CommandResult")
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS, help="seed for randomized inputs (default 0)")

    parser = argparse.ArgumentParser(
        prog="salemdyn",
        description="Salem numbers, quaternion constructions and dynamical degrees. "
        "Working precision is read from ADT_PRECISION_BITS (default 200).",
        parents=[common],
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("salem", parents=[common], help="Salem polynomial checks")
    p.add_argument("action", choices=["verify", "value", "trace"])
    p.add_argument("poly")
    p.add_argument("--allow-quadratic", action="store_true", help="accept quadratic units as degenerate Salem numbers")

    p = sub.add_parser("nf", parents=[common], help="number field invariants")
    p.add_argument("action", choices=["norm", "disc", "kind", "ideal-prime"])
    p.add_argument("poly", help="defining polynomial")
    p.add_argument("arg", nargs="?", help="element (norm) or prime (ideal-prime)")

    p = sub.add_parser("construct", parents=[common], help="construction certificate for a Salem polynomial")
    p.add_argument("poly")
    p.add_argument("--variant", default="indefinite", choices=["indefinite", "second-kind", "second_kind"])
    p.add_argument("--v", type=int, default=1)
    p.add_argument("--bound", type=int, default=1000, help="prime search bound")

    p = sub.add_parser("spectrum", parents=[common], help="spectrum from an endomorphism descriptor")
    p.add_argument("descriptor", help="descriptor JSON file or inline JSON")

    p = sub.add_parser("degrees", parents=[common], help="dynamical degrees of a spectrum")
    p.add_argument("spectrum", help="spectrum JSON file or inline JSON")

    p = sub.add_parser("classify", parents=[common], help="diagram label of a spectrum")
    p.add_argument("g", type=int)
    p.add_argument("spectrum")
    p.add_argument("--descriptor", help="optional descriptor to match against the tables")

    p = sub.add_parser("fixpoints", parents=[common], help="fixed-point count, hyperbolicity, reducibility")
    p.add_argument("spectrum")

    p = sub.add_parser("simulate", parents=[common], help="Cesaro average of pulled-back forms")
    p.add_argument("--poly", required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--omega", help="form JSON (default: random constant real form from --seed)")
    p.add_argument("--n", type=int, default=1000)
    p.add_argument("--trace", help="CSV trace output path")
    p.add_argument("--mode-cap", type=int, default=200_000)

    p = sub.add_parser("tables", parents=[common], help="dump the encoded diagram tables")
    p.add_argument("--dim", type=int, choices=[1, 2, 3, 4])
    return parser


def _render_human(payload, indent: int = 0) -> str:
    pad = "  " * indent
    if isinstance(payload, dict):
        lines = []
        for k, v in payload.items():
            if isinstance(v, (dict, list)) and v:
                lines.append(f"{pad}{k}:")
                lines.append(_render_human(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {v}")
        return "\n".join(lines)
    if isinstance(payload, list):
        if all(not isinstance(v, (dict, list)) for v in payload):
            return f"{pad}{payload}"
        return "\n".join(_render_human(v, indent) + ("\n" if isinstance(v, dict) else "") for v in payload).rstrip()
    return f"{pad}{payload}"


def _render_tables(rows: list) -> str:
    out = ["dim | multiplication | Q(f) | [Q(f):Q] | diagram | properties"]
    for r in rows:
        out.append(" | ".join(str(r[k]) for k in ("dimension", "multiplication", "Q(f)", "degree", "diagram", "properties")))
    return "\n".join(out)


def run(argv=None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else 0
    args.json = getattr(args, "json", False)
    args.seed = getattr(args, "seed", 0)
    command = " ".join(argv if argv is not None else sys.argv[1:])
    try:
        payload, warnings = COMMANDS[args.command](args)
    except SalemDynError as exc:
        err = {"schema_version": SCHEMA_VERSION, "command": command, "error": {"name": exc.name, "message": str(exc)}}
        if args.json:
            print(json.dumps(err, ensure_ascii=False), file=stdout)
        else:
            print(f"error: {exc.name}: {exc}", file=sys.stderr)
        return 1
    except (argparse.ArgumentTypeError, FileNotFoundError, json.JSONDecodeError) as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    result = {"schema_version": SCHEMA_VERSION, "command": command, "payload": payload, "warnings": warnings}
    if args.json:
        print(json.dumps(result, ensure_ascii=False), file=stdout)
    elif args.command == "tables":
        print(_render_tables(payload["rows"]), file=stdout)
    else:
        print(_render_human(payload), file=stdout)
        for w in warnings:
            print(f"warning: {w}", file=stdout)
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()

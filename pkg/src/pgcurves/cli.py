"""pgcurves command line.

Exit codes: 0 success, 1 internal inconsistency (a lower bound exceeds a
computed degree), 2 invalid input, 3 validation failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
import time
from pathlib import Path

from . import __version__
from .bounds import BoundError, validate_bounds
from .constructions import (
    CertificateError, ConstructionError, completed_arc, nu_invariant, normalizing_collineation,
    parse_pair, random_normalized_pair, random_shared_point_pair, third_conic, three_secant_witness,
)
from .forms import FormError, HomogeneousForm
from .gf import GF, FieldError
from .mindeg import SearchExhausted, min_degree, verify_certificate
from .pg2 import GeometryError
from .pointsets import (
    ValidationError, check_maximal_arc, format_pointset, generate, load_pointset, spectrum, write_atomic,
)

SCHEMA_VERSION = 1
OK, INCONSISTENT, INVALID, FAILED = 0, 1, 2, 3

log = logging.getLogger("pgcurves")


class Failure(Exception):
    """A check on valid input came out negative."""


def _emit(text: str, path=None) -> None:
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        write_atomic(path, text)


def _json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _field(args) -> GF:
    return GF.from_spec(args.q, args.modulus)


def _modulus(F: GF) -> str:
    return ",".join(str(c) for c in F.modulus)


def _load(args):
    K = load_pointset(args.input)
    if getattr(args, "arc", None) is not None:
        try:
            check_maximal_arc(K, args.arc)
        except ValidationError as err:
            raise Failure(str(err)) from err
    return K


def _load_cert(path, K) -> HomogeneousForm:
    return HomogeneousForm.from_text(Path(path).read_text(), K.field)


# -- subcommands ------------------------------------------------------------------

MAXIMAL_KINDS = {"hyperoval": 2, "conic_plus_nucleus": 2}


def cmd_gen(args) -> int:
    F = _field(args)
    params = {"n": args.n, "t": args.t, "nu": args.nu, "size": args.size, "seed": args.seed}
    if args.kind == "random" and args.seed is None:
        raise ValidationError("--kind random needs --seed")
    needs = {"denniston": "n", "conics": "t", "disjoint_conic_union": "t"}.get(args.kind)
    if needs and getattr(args, needs) is None:
        raise ValidationError(f"--kind {args.kind} needs --{needs}")
    K = generate(args.kind, F, **{k: v for k, v in params.items() if v is not None})
    n = args.n if args.kind == "denniston" else MAXIMAL_KINDS.get(args.kind)
    if args.kind == "thas":
        n = 2 ** (F.k // 2)
    if n is not None:
        try:
            check_maximal_arc(K, n)
        except ValidationError as err:
            raise Failure(str(err)) from err
    _emit(format_pointset(K), args.output)
    log.info("wrote %d points", K.size)
    return OK


def cmd_mindeg(args) -> int:
    K = _load(args)
    t0 = time.perf_counter()
    cert = min_degree(K, args.max_degree)
    ms = (time.perf_counter() - t0) * 1000
    sp = spectrum(K)
    if args.emit_certificate:
        write_atomic(args.emit_certificate, cert.form.to_text())
    if not cert.checked or not cert.minimal:
        raise Failure("certificate failed its own re-check")
    if args.json:
        out = {
            "schema_version": SCHEMA_VERSION, "version": __version__, "q": K.q, "modulus": _modulus(K.field),
            "size": K.size, "t": K.t, "alpha": K.alpha, "m0": sp.m0, "M0": sp.M0, "degree": cert.degree,
            "kernel_dim": cert.kernel_dim, "kernel_dim_below": cert.kernel_dim_below,
            "wall_time_ms": round(ms, 1),
        }
        _emit(_json(out))
    else:
        _emit(f"degree {cert.degree} (kernel dimension {cert.kernel_dim}, {cert.kernel_dim_below} below)\n"
              f"form {cert.form}\n")
    return OK


def cmd_bounds(args) -> int:
    K = _load(args)
    minimal = None
    if args.cert:
        form = _load_cert(args.cert, K)
        ok, msg = verify_certificate(K, form, check_minimal=False)
        if not ok:
            raise Failure(f"certificate: {msg}")
        minimal, _ = verify_certificate(K, form)
        degree = form.degree
    else:
        degree = min_degree(K).degree
        minimal = True
    report = validate_bounds(K, degree)
    if args.json:
        out = report.to_dict() | {"schema_version": SCHEMA_VERSION, "version": __version__,
                                  "certificate_minimal": minimal}
        _emit(_json(out))
    else:
        lines = [f"q={K.q} size={K.size} t={K.t} alpha={K.alpha} degree={degree}"]
        for c in report.checks:
            tag = "holds" if c.holds else "fails"
            kind = "" if c.enforced else " (informational)"
            lines.append(f"  {c.name}: {tag}, implies >= {c.implied}{kind}")
        lines.append(report.verdict)
        _emit("\n".join(lines) + "\n")
    return INCONSISTENT if report.violations else OK


def cmd_verify(args) -> int:
    K = _load(args)
    form = _load_cert(args.cert, K)
    ok, msg = verify_certificate(K, form, check_minimal=not args.no_minimal)
    _emit(("PASS" if ok else "FAIL") + f": {msg}\n")
    return OK if ok else FAILED


def _pair_field(args) -> GF:
    F = _field(args)
    if F.p != 2:
        raise ConstructionError("conic-pair constructions need q even")
    return F


def cmd_third_conic(args) -> int:
    F = _pair_field(args)
    pair = parse_pair(F, args.pair)
    c3 = third_conic(pair)
    K = completed_arc(pair)
    try:
        check_maximal_arc(K, 4)
    except ValidationError as err:
        raise Failure(str(err)) from err
    normalizing_collineation(pair)
    _emit(c3.form.to_text(), args.output)
    log.info("nu = %s, completed arc has %d points", F.format(nu_invariant(pair)), K.size)
    return OK


def cmd_witness(args) -> int:
    F = _pair_field(args)
    pair = parse_pair(F, args.pair, shared_point=True)
    line = three_secant_witness(pair, F.parse(args.eps))
    _emit(HomogeneousForm.linear(F, line).to_text(), args.output)
    return OK


def cmd_random_pair(args) -> int:
    import random
    F = _pair_field(args)
    rng = random.Random(args.seed)
    pair = random_shared_point_pair(F, rng) if args.shared_point else random_normalized_pair(F, rng)
    _emit(" ".join(F.format(c) for c in pair.coefficients) + "\n", args.output)
    return OK


def cmd_report(args) -> int:
    from .plotting import plot_affine, plot_profile, plot_spectrum
    from .mindeg import kernel_profile
    K = _load(args)
    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    sp = spectrum(K)
    cert = min_degree(K, args.max_degree)
    profile = kernel_profile(K, cert.degree)
    report = validate_bounds(K, cert)

    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["points_on_line", "lines"])
    w.writerows(sorted(sp.histogram.items()))
    write_atomic(out / "spectrum.csv", buf.getvalue())

    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["degree", "monomials", "rank", "kernel_dim"])
    w.writerows((r.degree, r.monomials, r.rank, r.kernel_dim) for r in profile)
    write_atomic(out / "profile.csv", buf.getvalue())

    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["bound", "holds", "implied", "enforced"])
    w.writerows((c.name, c.holds, c.implied, c.enforced) for c in report.checks)
    write_atomic(out / "bounds.csv", buf.getvalue())

    write_atomic(out / "certificate.txt", cert.form.to_text())
    summary = {"schema_version": SCHEMA_VERSION, "version": __version__, "q": K.q, "size": K.size,
               "t": K.t, "alpha": K.alpha, "m0": sp.m0, "M0": sp.M0, "degree": cert.degree,
               "kernel_dim": cert.kernel_dim, "verdict": report.verdict}
    write_atomic(out / "summary.json", _json(summary))
    plot_spectrum(sp, out / "spectrum.png")
    plot_profile(profile, out / "profile.png", cert.degree)
    plot_affine(K, out / "points.png")
    _emit(f"degree {cert.degree}; wrote report to {out}\n")
    return INCONSISTENT if report.violations else OK


# -- parser -----------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="pgcurves", description="Minimum-degree curves through point sets of PG(2,q).")
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    def field_opts(p, required=True):
        p.add_argument("--q", required=required, help="field order, e.g. 16 or 2^4")
        p.add_argument("--modulus", help="defining polynomial coefficients, constant term first")

    p = sub.add_parser("gen", help="write a named point set")
    p.add_argument("--kind", required=True,
                   help="full, affine, conic, hyperoval, internal, external, unital, conics, denniston, thas, random")
    field_opts(p)
    p.add_argument("--n", type=int, help="arc degree (denniston)")
    p.add_argument("--t", type=int, help="number of conics (conics)")
    p.add_argument("--nu", type=int, help="pencil parameter")
    p.add_argument("--size", type=int, help="number of points (random)")
    p.add_argument("--seed", type=int)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_gen)

    def input_opts(p):
        p.add_argument("-i", "--input", required=True)
        p.add_argument("--arc", type=int, help="require a maximal arc of this degree")

    p = sub.add_parser("mindeg", help="minimum degree of a curve through the points")
    input_opts(p)
    p.add_argument("--max-degree", type=int)
    p.add_argument("--emit-certificate", metavar="PATH")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_mindeg)

    p = sub.add_parser("bounds", help="evaluate degree lower bounds against a certificate")
    input_opts(p)
    p.add_argument("--cert")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("verify", help="re-check a certificate")
    input_opts(p)
    p.add_argument("--cert", required=True)
    p.add_argument("--no-minimal", action="store_true", help="skip the check one degree below")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("construct", help="conic-pair constructions (q even)")
    csub = p.add_subparsers(dest="construction", required=True)
    c = csub.add_parser("third-conic", help="complete two disjoint conics to a maximal 4-arc")
    field_opts(c)
    c.add_argument("--pair", nargs=6, required=True, metavar="C", help="a1 b1 l1 a2 b2 l2")
    c.add_argument("-o", "--output")
    c.set_defaults(func=cmd_third_conic)
    c = csub.add_parser("witness", help="three-secant line through (0, eps, 1)")
    field_opts(c)
    c.add_argument("--pair", nargs=6, required=True, metavar="C", help="a1 b1 l1 a2 b2 l2")
    c.add_argument("--eps", required=True)
    c.add_argument("-o", "--output")
    c.set_defaults(func=cmd_witness)
    c = csub.add_parser("random-pair", help="sample a valid conic pair")
    field_opts(c)
    c.add_argument("--seed", type=int, required=True)
    c.add_argument("--shared-point", action="store_true", help="conics through a common point")
    c.add_argument("-o", "--output")
    c.set_defaults(func=cmd_random_pair)

    p = sub.add_parser("report", help="CSV tables and figures for a point set")
    input_opts(p)
    p.add_argument("--out-dir", required=True)
    p.add_argument("--max-degree", type=int)
    p.set_defaults(func=cmd_report)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except Failure as err:
        print(f"FAIL: {err}", file=sys.stderr)
        return FAILED
    except (ValidationError, FormError, FieldError, GeometryError, ConstructionError, CertificateError,
            BoundError, SearchExhausted, OSError, ValueError) as err:
        print(f"error: {err}", file=sys.stderr)
        return INVALID


if __name__ == "__main__":
    sys.exit(main())

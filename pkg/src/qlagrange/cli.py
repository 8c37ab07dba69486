"""Command-line front end.

Every subcommand prints one JSON object by default (sorted keys), or a
two-column table / CSV.  Exit status: 0 on success, 2 on bad input, 3 when
an internal consistency check fails.
"""

import argparse
import csv
import io
import json
import random
import sys

from . import cfword, oracle, spectrum
from .algebra import enumerate_polys, field, field_of_order, parse_poly, prime_power
from .cfword import CFWord, parse_cfword
from .errors import InTheta, InvalidField, QLagrangeError
from .laurent import series_from_cf

MAX_Q = 1024


def _ctx(args):
    if args.q > MAX_Q:
        raise InvalidField(f"q = {args.q} exceeds {MAX_Q}")
    if args.modulus is None:
        return field_of_order(args.q)
    p, e = prime_power(args.q)
    mod = parse_poly(args.modulus, field(p))
    return field(p, e, mod.coeffs)


def _word(ctx, text):
    return parse_cfword(text, ctx)


def _exp_value(e):
    return {"exponent": e, "value": f"q^-{e}"}


# -- subcommands ----------------------------------------------------------------


def cmd_height(args, ctx):
    e = cfword.height(_word(ctx, args.alpha))
    return {"exponent": e, "value": f"q^{e}"}


def cmd_conjugate(args, ctx):
    return {"conjugate": str(cfword.galois_conjugate_period(_word(ctx, args.alpha)))}


def cmd_minpoly(args, ctx):
    A, B, C = cfword.minimal_polynomial(_word(ctx, args.alpha))
    return {"A": str(A), "B": str(B), "C": str(C)}


def cmd_equiv(args, ctx):
    return {"equivalent": cfword.equivalent(_word(ctx, args.f), _word(ctx, args.g))}


def cmd_dist(args, ctx):
    e = cfword.distance(_word(ctx, args.f), _word(ctx, args.g))
    if e is None:
        return {"exponent": None, "value": "0"}
    return _exp_value(e)


def cmd_cst(args, ctx):
    c = spectrum.approx_constant(_word(ctx, args.alpha), _word(ctx, args.f))
    return _exp_value(c.exponent)


def cmd_hurwitz(args, ctx):
    return _exp_value(spectrum.hurwitz(_word(ctx, args.alpha)))


def cmd_hall_bound(args, ctx):
    coarse, refined = spectrum.hall_bound(_word(ctx, args.alpha))
    return {"coarse": coarse, "refined": refined}


def cmd_spectrum(args, ctx):
    rep = spectrum.spectrum(
        _word(ctx, args.alpha),
        verification_margin=args.margin,
        workers=args.workers,
        max_exponent=args.max_exponent,
    )
    out = rep.to_dict()
    out["_rows"] = [(m, m in rep.witnesses) for m in range(2, rep.verified_through + 1)]
    return out


def cmd_oracle_check(args, ctx):
    v = oracle.brute_force_check(
        _word(ctx, args.alpha),
        _word(ctx, args.f),
        args.deg_bound,
        tuple(args.window),
        workers=args.workers or 1,
    )
    return v.to_dict()


def cmd_stats(args, ctx):
    M, M2, m = cfword.cf_stats(_word(ctx, args.alpha))
    return {"M": M, "M2": M2, "m": m}


def cmd_series(args, ctx):
    s = series_from_cf(_word(ctx, args.alpha), -args.terms)
    return {"series": s.format()}


def cmd_fuzz(args, ctx):
    """Random quadratic pairs; every finite exponent must be at least 2."""
    rng = random.Random(args.seed)
    pool = list(enumerate_polys(ctx, 1, args.max_degree))
    low, counted, skipped = None, 0, 0
    for _ in range(args.count):
        a = CFWord.periodic([rng.choice(pool) for _ in range(rng.randint(1, args.max_length))])
        f = CFWord.periodic([rng.choice(pool) for _ in range(rng.randint(1, args.max_length))])
        try:
            e = spectrum.approx_constant(a, f).exponent
        except InTheta:
            skipped += 1
            continue
        counted += 1
        low = e if low is None else min(low, e)
    return {"seed": args.seed, "pairs": counted, "in_orbit": skipped, "min_exponent": low, "ok": low is None or low >= 2}


# -- output ---------------------------------------------------------------------


def _emit(result, fmt, out):
    rows = result.pop("_rows", None)
    if fmt == "json":
        out.write(json.dumps(result, sort_keys=True, separators=(",", ":")) + "\n")
        return
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        if rows is not None:
            w.writerow(["exponent", "member"])
            w.writerows([m, int(flag)] for m, flag in rows)
        else:
            w.writerow(["key", "value"])
            w.writerows([k, json.dumps(result[k])] for k in sorted(result))
        out.write(buf.getvalue())
        return
    width = max(len(k) for k in result) if result else 0
    for k in sorted(result):
        v = result[k]
        out.write(f"{k.ljust(width)}  {v if isinstance(v, str) else json.dumps(v)}\n")
    if rows is not None:
        out.write("\nexponent  member\n")
        for m, flag in rows:
            out.write(f"{m:>8}  {'yes' if flag else 'no'}\n")


COMMANDS = {
    "height": (cmd_height, ("alpha",), "height exponent e with h(alpha) = q^e"),
    "conjugate": (cmd_conjugate, ("alpha",), "Galois conjugate of a purely periodic word"),
    "minpoly": (cmd_minpoly, ("alpha",), "minimal polynomial A x^2 + B x + C"),
    "equiv": (cmd_equiv, ("f", "g"), "whether f and g share a PGL_2 orbit up to conjugation"),
    "dist": (cmd_dist, ("f", "g"), "exponent of |f - g|"),
    "cst": (cmd_cst, ("alpha", "f"), "approximation constant c_alpha(f)"),
    "hurwitz": (cmd_hurwitz, ("alpha",), "Hurwitz constant of alpha"),
    "hall-bound": (cmd_hall_bound, ("alpha",), "coarse and refined Hall ray bounds"),
    "spectrum": (cmd_spectrum, ("alpha",), "spectrum report"),
    "oracle-check": (cmd_oracle_check, ("alpha", "f"), "brute-force cross-check of cst"),
    "stats": (cmd_stats, ("alpha",), "largest, second largest and smallest period degree"),
    "series": (cmd_series, ("alpha",), "Laurent expansion of a CF word"),
    "fuzz": (cmd_fuzz, (), "random check that finite exponents are >= 2"),
}


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--q", type=int, required=True, help="field order (prime power <= 1024)")
    common.add_argument("--modulus", help="irreducible polynomial over F_p defining F_q")
    common.add_argument("--format", choices=("json", "table", "csv"), default="json")
    common.add_argument("--workers", type=int, default=None, help=f"worker processes (default ${spectrum.WORKERS_ENV} or 1)")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized commands")

    parser = argparse.ArgumentParser(prog="qlagrange", description="Quadratic Lagrange spectra over F_q((1/Y)).")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (_, words, help_text) in COMMANDS.items():
        p = sub.add_parser(name, parents=[common], help=help_text)
        for w in words:
            p.add_argument(f"--{w}", required=True, help="CF word, e.g. '[0;|Y,Y^2]'")
        if name == "spectrum":
            p.add_argument("--margin", type=int, default=5, help="exponents verified past the Hall bound")
            p.add_argument("--max-exponent", type=int, default=None, help="verify membership at least up to this exponent")
        if name == "oracle-check":
            p.add_argument("--deg-bound", type=int, default=3)
            p.add_argument("--window", type=int, nargs=2, default=(2, 8), metavar=("H0", "H1"))
        if name == "series":
            p.add_argument("--terms", type=int, default=12, help="coefficients below degree 0")
        if name == "fuzz":
            p.add_argument("--count", type=int, default=100)
            p.add_argument("--max-degree", type=int, default=3)
            p.add_argument("--max-length", type=int, default=3)
    return parser


def _error(err, code, message):
    err.write(json.dumps({"error": code, "message": message}, sort_keys=True, separators=(",", ":")) + "\n")


def run(argv=None, out=None, err=None):
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.workers is not None and args.workers < 1:
        _error(err, "invalid_argument", "--workers must be >= 1")
        return 2
    if getattr(args, "max_exponent", None) is not None and args.max_exponent < 2:
        _error(err, "invalid_argument", "--max-exponent must be >= 2")
        return 2
    func = COMMANDS[args.command][0]
    try:
        result = func(args, _ctx(args))
    except QLagrangeError as exc:
        _error(err, exc.code, str(exc))
        return exc.exit_code
    except ValueError as exc:
        _error(err, "invalid_argument", str(exc))
        return 2
    _emit(result, args.format, out)
    return 0


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()

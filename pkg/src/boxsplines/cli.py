"""Command-line interface.

Every subcommand prints JSON objects, one per line (``emit-profile`` prints
CSV). Exit status: 0 on success, 1 on a domain error (the error class is
named on stderr), 2 on a usage error.
"""

from __future__ import annotations

import argparse
import csv
import json
import random
import sys
from fractions import Fraction
from itertools import product

from . import boxspline
from .arrangement import alcove_of, generic_direction, is_regular, walls
from .core import (
    DirectionList,
    LatticeFunction,
    ParameterList,
    Representation,
    any_representation,
    as_vector,
    format_rational,
    parse_rational,
    validate,
    zonotope_bbox,
)
from .cyclo import Cyclo, as_exact
from .deconv import deconvolve, deconvolve_translated
from .errors import BoxSplineError, Not1D
from .partition import chamber_covers, chamber_of, partition_count, partition_trace, partition_via_todd
from .torus import vertex_set

__all__ = ["main", "run", "emit_profile", "format_scalar", "parse_scalar"]


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# scalars

def format_scalar(x) -> tuple[str, bool]:
    """``(text, exact)``: ``"p/q"``, ``"re,im"`` with rationals, or ``"re,im"`` floats."""
    if isinstance(x, int):
        x = Fraction(x)
    if isinstance(x, Fraction):
        return format_rational(x), True
    if isinstance(x, Cyclo):
        g = x.as_gaussian()
        if g is not None:
            re, im = g
            if im == 0:
                return format_rational(re), True
            return f"{format_rational(re)},{format_rational(im)}", True
        x = complex(x)
    z = complex(x)
    return f"{z.real!r},{z.imag!r}", False


def parse_scalar(text: str, exact: bool = True):
    """Inverse of :func:`format_scalar`."""
    parts = [p.strip() for p in str(text).split(",")]
    if len(parts) > 2:
        raise UsageError(f"bad scalar {text!r}")
    if exact:
        re = parse_rational(parts[0])
        im = parse_rational(parts[1]) if len(parts) == 2 else Fraction(0)
        return as_exact((re, im))
    re = float(parts[0])
    im = float(parts[1]) if len(parts) == 2 else 0.0
    return complex(re, im)


def _looks_exact(text: str) -> bool:
    return all(c in "0123456789-+/, " for c in str(text))


def _value_record(x) -> dict:
    text, exact = format_scalar(x)
    return {"value": text, "exact": exact}


# ---------------------------------------------------------------------------
# flag parsing

def _json(text, what):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"--{what}: invalid JSON ({exc})") from None


def _phi(args) -> DirectionList:
    if args.phi is None:
        raise UsageError("--phi is required")
    data = _json(args.phi, "phi")
    if isinstance(data, list):
        data = {"vectors": data}
    if not isinstance(data, dict) or "vectors" not in data:
        raise UsageError('--phi must look like {"dim": d, "vectors": [[...], ...]}')
    return validate(data["vectors"], data.get("dim"))


def _vector(text, what):
    if text is None:
        return None
    text = text.strip()
    try:
        if text.startswith("["):
            return as_vector(_json(text, what))
        return as_vector([t for t in text.split(",")])
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise UsageError(f"--{what}: {exc}") from None


def _params(args, phi) -> ParameterList:
    if args.y is None:
        return ParameterList.zeros(phi.N)
    data = _json(args.y, "y")
    if not isinstance(data, list) or len(data) != phi.N:
        raise UsageError(f"--y must be a JSON list of {phi.N} entries")
    vals = []
    for v in data:
        if isinstance(v, (int, float)):
            vals.append(complex(v))
        else:
            vals.append(parse_scalar(v, exact=False))
    return ParameterList(tuple(vals))


def _representation(args, phi) -> Representation | None:
    r = _vector(args.r, "r")
    if r is None:
        return None
    if len(r) == phi.N and len(r) != phi.dim:
        return Representation.of(phi, r)
    if len(r) != phi.dim:
        raise UsageError(f"--r needs {phi.dim} coordinates or {phi.N} coefficients")
    try:
        return any_representation(phi, r)
    except BoxSplineError:
        return Representation(tuple(Fraction(0) for _ in range(phi.N)), r)


def _lattice_point(vec, dim):
    if vec is None:
        return None
    if len(vec) != dim or any(x.denominator != 1 for x in vec):
        raise UsageError(f"expected an integer vector of length {dim}")
    return tuple(int(x) for x in vec)


def _function(text, dim) -> LatticeFunction:
    data = _json(text, "f")
    try:
        support, values = data["support"], data["values"]
    except (TypeError, KeyError):
        raise UsageError('--f must look like {"support": [[...]], "values": ["re,im", ...]}') from None
    if len(support) != len(values):
        raise UsageError("--f: support and values differ in length")
    vals = {}
    for p, v in zip(support, values):
        p = (p,) if isinstance(p, int) else tuple(p)
        if isinstance(v, (int, float)):
            v = str(v)
        vals[tuple(int(x) for x in p)] = parse_scalar(v, exact=_looks_exact(v))
    return LatticeFunction(vals, dim)


def _out(args):
    return open(args.out, "w", newline="") if args.out else sys.stdout


def _emit(stream, record):
    stream.write(json.dumps(record) + "\n")


# ---------------------------------------------------------------------------
# subcommands

def cmd_eval_box(args):
    phi = _phi(args)
    v = _vector(args.at, "at")
    if v is None:
        raise UsageError("--at is required")
    y = _params(args, phi)
    rrep = _representation(args, phi)
    if rrep is not None:
        if y.is_zero:
            # the phase exp(-i<r, y>) is 1
            val = boxspline.eval_exact(phi, tuple(a + b for a, b in zip(v, rrep.point)))
        else:
            val = boxspline.eval_translated(phi, y, rrep, v)
    elif y.is_zero:
        val = boxspline.eval_exact(phi, v)
    else:
        val = boxspline.eval(phi, y, v)
    return [_value_record(val)]


def cmd_eval_partition(args):
    phi = _phi(args)
    nu = _lattice_point(_vector(args.at, "at"), phi.dim)
    if nu is None:
        raise UsageError("--at is required")
    y = _params(args, phi)
    rec = {"nu": [str(a) for a in nu], "count": partition_count(phi, nu)}
    trace, exact = format_scalar(partition_trace(phi, y, nu))
    rec.update({"trace": trace, "exact": exact})
    witness = _vector(args.chamber, "chamber")
    if witness is not None:
        tau = chamber_of(phi, witness)
        if chamber_covers(phi, tau, nu):
            rec["todd"] = format_scalar(partition_via_todd(phi, y, nu, tau))[0]
    return [rec]


def _direction(args, phi, anchor):
    eps = _vector(args.eps, "eps")
    if eps is None:
        eps = generic_direction(phi, seed=args.seed or 0, cone=anchor)
    return eps


def cmd_deconvolve(args):
    phi = _phi(args)
    if args.f is None:
        raise UsageError("--f is required")
    f = _function(args.f, phi.dim)
    y = _params(args, phi)
    rrep = _representation(args, phi)
    anchor = rrep.point if rrep is not None else (0,) * phi.dim
    eps = _direction(args, phi, anchor)
    lam = _lattice_point(_vector(args.at, "at"), phi.dim)
    if lam is not None:
        points = [lam]
    else:
        supp = f.support or [(0,) * phi.dim]
        lo = [min(p[j] for p in supp) - 2 for j in range(phi.dim)]
        hi = [max(p[j] for p in supp) + 2 for j in range(phi.dim)]
        points = list(product(*[range(a, b + 1) for a, b in zip(lo, hi)]))
    out = []
    for p in points:
        if rrep is None:
            val = deconvolve(phi, y, f, p, eps)
        else:
            val = deconvolve_translated(phi, y, rrep, f, p, eps)
        rec = {"lambda": [str(a) for a in p]}
        rec.update(_value_record(val))
        out.append(rec)
    return out


def cmd_vertex_set(args):
    phi = _phi(args)
    return [{"angles": [[format_rational(a) for a in s.angle] for s in vertex_set(phi)]}]


def cmd_walls(args):
    phi = _phi(args)
    return [{"walls": [list(n) for n in walls(phi)]}]


def cmd_alcove_of(args):
    phi = _phi(args)
    v = _vector(args.at, "at")
    if v is None:
        raise UsageError("--at is required")
    a = alcove_of(phi, v)
    return [{
        "normals": [list(n) for n in a.normals],
        "slabs": list(a.signs),
        "witness": [format_rational(x) for x in a.witness],
    }]


def _suite_delta(args, phi, rng):
    y = _params(args, phi)
    eps = _direction(args, phi, (0,) * phi.dim)
    checked = failures = 0
    for _ in range(5):
        vals = {}
        for p in product(range(-3, 4), repeat=phi.dim):
            if rng.random() < 0.5:
                vals[p] = Fraction(rng.randint(-9, 9), rng.randint(1, 5))
        f = LatticeFunction(vals or {(0,) * phi.dim: 1}, phi.dim)
        for lam in product(range(-5, 6), repeat=phi.dim):
            got = deconvolve(phi, y, f, lam, eps)
            checked += 1
            if y.is_zero:
                ok = got == f(lam)
            else:
                ok = abs(complex(got) - complex(f(lam))) <= 1e-6
            failures += not ok
    return checked, failures


def _suite_partition(args, phi, rng):
    y = _params(args, phi)
    checked = failures = 0
    witness = _vector(args.chamber, "chamber")
    if witness is None:
        # a random positive combination of the directions, nudged off the walls
        weights = [Fraction(rng.randint(1, 9)) for _ in range(phi.N)]
        witness = tuple(
            sum((w * a[j] for w, a in zip(weights, phi)), Fraction(0)) + Fraction(1, 97 + j)
            for j in range(phi.dim)
        )
    tau = chamber_of(phi, witness)
    for nu in product(range(-2, 9), repeat=phi.dim):
        if not chamber_covers(phi, tau, nu):
            continue
        checked += 1
        brute = partition_trace(phi, y, nu)
        todd = partition_via_todd(phi, y, nu, tau)
        if y.is_zero:
            failures += todd != brute
        else:
            failures += abs(complex(todd) - complex(brute)) > 1e-6
    return checked, failures


SUITES = {"delta-recovery": _suite_delta, "partition": _suite_partition}


def cmd_verify(args):
    phi = _phi(args)
    if args.suite not in SUITES:
        raise UsageError(f"--suite must be one of {sorted(SUITES)}")
    rng = random.Random(args.seed or 0)
    checked, failures = SUITES[args.suite](args, phi, rng)
    return [{"suite": args.suite, "checked": checked, "failures": failures, "pass": failures == 0}]


def emit_profile(phi: DirectionList, y=None, rrep: Representation | None = None, lo=None, hi=None, step=Fraction(1, 10)):
    """Rows ``(t, value, exact)`` sampling ``B_r(Phi, y)`` on a regular grid of a 1-D list."""
    if phi.dim != 1:
        raise Not1D("profiles are only defined for one-dimensional lists")
    y = ParameterList.of(phi, y)
    if rrep is None:
        rrep = Representation.of(phi, [0] * phi.N)
    zlo, zhi = zonotope_bbox(phi)
    lo = zlo[0] - rrep.point[0] if lo is None else Fraction(lo)
    hi = zhi[0] - rrep.point[0] if hi is None else Fraction(hi)
    step = Fraction(step)
    rows = []
    t = lo + step / 2
    while t < hi:
        u = t
        gap = step / 4
        while not is_regular(phi, (u + rrep.point[0],)):
            u += gap
            gap /= 2
        if y.is_zero:
            val = boxspline.eval_exact(phi, (u + rrep.point[0],))
        else:
            val = boxspline.eval_translated(phi, y, rrep, (u,))
        rows.append((u, val, y.is_zero))
        t += step
    return rows


def cmd_emit_profile(args):
    phi = _phi(args)
    y = _params(args, phi)
    rrep = _representation(args, phi)
    step = parse_rational(args.step)
    lo = parse_rational(args.start) if args.start is not None else None
    hi = parse_rational(args.stop) if args.stop is not None else None
    rows = emit_profile(phi, y, rrep, lo, hi, step)
    return rows


# ---------------------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="boxsplines", description="Box splines with parameters and their deconvolution.")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    common = _Parser(add_help=False)
    common.add_argument("--phi", help='direction list as JSON, e.g. {"dim":1,"vectors":[[1],[2]]}')
    common.add_argument("--y", help='parameters as a JSON list of "re,im" strings')
    common.add_argument("--r", help='translation r as a JSON list of "p/q" (point or coefficients)')
    common.add_argument("--at", help='point or lattice point, "p/q" entries')
    common.add_argument("--eps", help="limit direction (default: seeded generic direction in the cone)")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--out", help="write output to this path instead of stdout")
    specs = {
        "eval-box": "evaluate the box spline (or its translate with --r)",
        "eval-partition": "partition count and trace at --at",
        "deconvolve": "recover f from its semi-discrete convolution",
        "vertex-set": "list the vertex set as exact angles",
        "walls": "primitive normals of the walls",
        "alcove-of": "alcove containing --at",
        "verify": "run a randomized verification suite",
        "emit-profile": "CSV samples of a 1-D (translated) box spline",
    }
    subs = {name: sub.add_parser(name, parents=[common], help=text) for name, text in specs.items()}
    subs["deconvolve"].add_argument("--f", help='{"support": [[...]], "values": ["re,im", ...]}')
    subs["eval-partition"].add_argument("--chamber", help="witness point of a chamber; adds the Todd-formula value")
    subs["verify"].add_argument("--suite", default="delta-recovery", help="delta-recovery or partition")
    subs["verify"].add_argument("--chamber", help="chamber witness for the partition suite")
    subs["emit-profile"].add_argument("--step", default="1/10")
    subs["emit-profile"].add_argument("--start")
    subs["emit-profile"].add_argument("--stop")
    return parser


COMMANDS = {
    "eval-box": cmd_eval_box,
    "eval-partition": cmd_eval_partition,
    "deconvolve": cmd_deconvolve,
    "vertex-set": cmd_vertex_set,
    "walls": cmd_walls,
    "alcove-of": cmd_alcove_of,
    "verify": cmd_verify,
    "emit-profile": cmd_emit_profile,
}


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command is None:
            raise UsageError("a subcommand is required")
        result = COMMANDS[args.command](args)
    except (UsageError, ValueError, TypeError) as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except (BoxSplineError, ArithmeticError) as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    stream = _out(args)
    try:
        if args.command == "emit-profile":
            writer = csv.writer(stream, lineterminator="\n")
            writer.writerow(["t", "value_re", "value_im", "exact"])
            for t, val, exact in result:
                z = complex(val)
                re = format_rational(val) if exact else repr(z.real)
                im = "0" if exact else repr(z.imag)
                writer.writerow([format_rational(t), re, im, str(exact).lower()])
        else:
            for rec in result:
                _emit(stream, rec)
    finally:
        if stream is not sys.stdout:
            stream.close()
    if args.command == "verify" and not all(r["pass"] for r in result):
        return 1
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()

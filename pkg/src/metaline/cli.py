"""Command line entry point.

Subcommands: verify (full check suite, JSON or text report), info
(dimension summary), build-omega (emit the constructed form as JSON)
and sample-line (one horizontal line end to end, as JSON).  Fixtures
are either catalog entries (builtin:NAME) or JSON files; see the
README for the file grammar.  Exit codes: 0 success, 1 a check or
certificate failed, 2 the fixture did not parse.
"""

from __future__ import annotations

import argparse
import json
import sys

from .compactification import boundary_point
from .lines import ZeroDirection, boundary_direction, line_through, pluecker_embed
from .metabelian import element
from .omega_builder import SaturationNotReached, build_omega
from .polynomials import Poly, PolyParseError
from .runner import CHECK_NAMES, run_verification
from .sampling import RationalSampler
from .scalars import HALF, parse_rational, qstr
from .varieties import (
    FrameDegenerate,
    builtin_chart,
    builtin_names,
    chart_from_json,
    omega_from_json,
)


class FixtureError(Exception):
    pass


def _load_fixture(source):
    """Resolve builtin:NAME or a JSON file path to (chart, omega or None)."""
    if source.startswith("builtin:"):
        try:
            return builtin_chart(source[len("builtin:") :])
        except KeyError as exc:
            raise FixtureError(str(exc.args[0]))
    try:
        with open(source, encoding="utf-8") as handle:
            data = json.load(handle)
    except OSError as exc:
        raise FixtureError(f"cannot read fixture {source!r}: {exc}")
    except json.JSONDecodeError as exc:
        raise FixtureError(f"fixture {source!r} is not valid JSON: {exc}")
    try:
        chart = chart_from_json(data)
        omega = None
        if "omega" in data:
            omega = omega_from_json(chart.ambient_dim, data["omega"])
    except (KeyError, ValueError, TypeError, PolyParseError) as exc:
        raise FixtureError(f"fixture {source!r} is malformed: {exc}")
    return chart, omega


def _emit(text, out):
    if out:
        with open(out, "w", encoding="utf-8") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)


def _parse_vector(text):
    return tuple(parse_rational(piece) for piece in text.split(","))


def _cmd_verify(args):
    chart, omega = _load_fixture(args.fixture)
    checks = None
    if args.checks:
        checks = [name.strip() for name in args.checks.split(",") if name.strip()]
    report = run_verification(
        chart,
        omega,
        seed=args.seed,
        samples=args.samples,
        checks=checks,
        jobs=args.jobs,
    )
    # wall time never enters the report body: byte-stable outputs
    _emit(report.to_json() if args.format == "json" else report.to_text(), args.out)
    print(f"wall time: {report.wall_time:.2f}s", file=sys.stderr)
    return 0 if report.passed else 1


def _cmd_info(args):
    chart, omega = _load_fixture(args.fixture)
    dim_w = chart.ambient_dim
    lines = [
        f"fixture:     {chart.label}",
        f"dimW:        {dim_w}",
        f"d:           {chart.param_dim}",
        f"dimLambda2W: {dim_w * (dim_w - 1) // 2}",
    ]
    if omega is None:
        construction = build_omega(chart, seed=args.seed)
        lines.append(f"dimWprime:   {construction.dim_w_prime}")
        dim_u = construction.dim_u
    else:
        lines.append("dimWprime:   n/a (explicit form)")
        dim_u = omega.dim_u
    n = dim_w + dim_u
    lines.append(f"dimU:        {dim_u}")
    lines.append(f"n:           {n}")
    lines.append(f"familyDim:   {n - 1 + chart.param_dim}")
    print("\n".join(lines))
    return 0


def _cmd_build_omega(args):
    chart, _ = _load_fixture(args.fixture)
    construction = build_omega(chart, seed=args.seed)
    payload = {
        "label": chart.label,
        "seed": construction.seed,
        "dimW": construction.dim_w,
        "dimU": construction.dim_u,
        "dimLambda2W": construction.dim_lambda2,
        "dimWprime": construction.dim_w_prime,
        "wPrimeBasis": [
            [qstr(c) for c in row] for row in construction.w_prime_basis.entries
        ],
        "omegaTable": [[qstr(c) for c in row] for row in construction.omega.table],
    }
    _emit(json.dumps(payload, sort_keys=True, indent=2) + "\n", args.out)
    return 0


def _cmd_sample_line(args):
    chart, explicit = _load_fixture(args.fixture)
    omega = explicit if explicit is not None else build_omega(chart, seed=args.seed).omega
    sampler = RationalSampler(args.seed).derive("sample-line")
    param = _parse_vector(args.param) if args.param else sampler.vector(chart.param_dim)
    if len(param) != chart.param_dim:
        raise FixtureError(f"parameter point needs {chart.param_dim} coordinates")
    n = omega.dim_w + omega.dim_u
    base = _parse_vector(args.base) if args.base else sampler.vector(n)
    if len(base) != n:
        raise FixtureError(f"base point needs {n} coordinates")
    x = element(omega, base[: omega.dim_w], base[omega.dim_w :])
    direction = chart.evaluate(param)
    line = line_through(omega, x, direction)
    plane = pluecker_embed(omega, line)
    half_corr = omega.apply(x.w_part, line.direction)
    arc = [
        Poly.const(c, 1) + Poly.var(0, 1) * d for c, d in zip(x.w_part, line.direction)
    ] + [
        Poly.const(c, 1) + Poly.var(0, 1) * (HALF * d)
        for c, d in zip(x.u_part, half_corr)
    ]
    datum = boundary_point(chart, omega, param, x)
    payload = {
        "fixture": chart.label,
        "param": [qstr(c) for c in param],
        "base": [qstr(c) for c in x.coords],
        "canonicalDirection": [qstr(c) for c in line.direction],
        "canonicalBase": [qstr(c) for c in line.base.coords],
        "parametrization": [p.format(["t"]) for p in arc],
        "plueckerVector": [qstr(c) for c in plane.vector],
        "boundaryDirection": [qstr(c) for c in boundary_direction(omega, line)],
        "boundaryPoint": {
            "chart": datum.chart_label,
            "param": [qstr(c) for c in datum.param],
            "cosetRep": [qstr(c) for c in datum.coset_rep.coords],
        },
    }
    _emit(json.dumps(payload, sort_keys=True, indent=2) + "\n", args.out)
    return 0


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="metaline",
        description=(
            "Exact verification of horizontal-line families in metabelian groups. "
            f"Builtin fixtures: {', '.join(builtin_names())}."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, samples=False):
        p.add_argument("fixture", help="builtin:NAME or path to a fixture JSON file")
        p.add_argument("--seed", type=int, default=42, help="deterministic seed")
        p.add_argument("--out", help="write output to this path instead of stdout")
        if samples:
            p.add_argument("--samples", type=int, default=100, help="samples per check")
            p.add_argument(
                "--checks",
                help="comma-separated subset of: " + ", ".join(CHECK_NAMES),
            )
            p.add_argument(
                "--format", choices=("json", "text"), default="json", help="report format"
            )
            p.add_argument("--jobs", type=int, default=1, help="parallel workers")

    p_verify = sub.add_parser("verify", help="run the full check suite")
    common(p_verify, samples=True)
    p_verify.set_defaults(func=_cmd_verify)

    p_info = sub.add_parser("info", help="print dimension summary")
    p_info.add_argument("fixture")
    p_info.add_argument("--seed", type=int, default=42)
    p_info.set_defaults(func=_cmd_info)

    p_build = sub.add_parser("build-omega", help="construct the form and emit JSON")
    common(p_build)
    p_build.set_defaults(func=_cmd_build_omega)

    p_line = sub.add_parser("sample-line", help="print one horizontal line as JSON")
    common(p_line)
    p_line.add_argument("--param", help="comma-separated chart parameters")
    p_line.add_argument("--base", help="comma-separated base point coordinates")
    p_line.set_defaults(func=_cmd_sample_line)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except SaturationNotReached as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (FixtureError, FrameDegenerate, ZeroDirection, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

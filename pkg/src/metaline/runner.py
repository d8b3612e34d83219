"""Verification pipeline: every check for one fixture, deterministically.

Each check draws from its own named sampler stream derived from the
base seed, so filtering checks never shifts the samples of the ones
that remain, and reports are byte-identical across runs and across
--jobs settings.  Geometric checks presuppose the isotropy certificate;
when it fails they are skipped (and the run fails on the certificate).
"""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor

from . import compactification as comp
from . import family_geometry as fam
from . import lines as lin
from . import metabelian as meta
from .linalg import NotInSpan
from .metabelian import InternalConsistencyError, OmegaForm
from .omega_builder import build_omega
from .report import CheckResult, VerificationReport
from .sampling import RationalSampler
from .scalars import Q, qstr
from .varieties import FrameDegenerate, VarietyChart, affine_tangent_frame, certify_isotropic

CHECK_NAMES = (
    "isotropy",
    "group-law",
    "maurer-cartan",
    "levi-tensor",
    "slide-identity",
    "slide-identity-alt-chart",
    "slide-identity-symbolic",
    "pencil-split",
    "splitting-type",
    "family-dimension",
    "boundary-cosets",
    "group-action",
    "equivariance",
    "line-boundary",
)

_GEOMETRIC = frozenset(CHECK_NAMES[4:])


def _sample_element(sampler, omega):
    return meta.element(omega, sampler.vector(omega.dim_w), sampler.vector(omega.dim_u))


def _frame_or_none(chart, param):
    try:
        return affine_tangent_frame(chart, param)
    except FrameDegenerate:
        return None


def _slide_outcome(chart, omega, cfg, use_alt):
    param, base_w, base_u, delta, t = cfg
    x = meta.element(omega, base_w, base_u)
    if _frame_or_none(chart, param) is None:
        return ("skip", "degenerate frame")
    w = chart.evaluate(param)
    try:
        pivots = fam.primary_pivots(omega, x, w)
        if use_alt:
            alt = fam.next_pivots(omega, x, w, pivots)
            if alt is None:
                return ("skip", "no second chart")
            pivots = alt
        result = fam.check_slide_identity(chart, omega, param, x, delta, t, pivots)
    except fam.ChartMiss as exc:
        return ("skip", f"chart miss: {exc}")
    except NotInSpan as exc:
        head = ",".join(qstr(c) for c in exc.residual[:4])
        return ("fail", f"shift escaped the basepoint-variation image ({head},...)")
    if result.ok and result.tangent_span_ok:
        return ("pass", None)
    detail = ",".join(qstr(c) for c in result.residual)
    if not result.tangent_span_ok:
        detail += "; coefficients outside the tangent span"
    return ("fail", f"nonzero residual {detail}")


_WORKER_ARGS = {}


def _worker_init(chart, omega, use_alt):
    _WORKER_ARGS["state"] = (chart, omega, use_alt)


def _worker_run(cfg):
    chart, omega, use_alt = _WORKER_ARGS["state"]
    return _slide_outcome(chart, omega, cfg, use_alt)


def _tally(name, outcomes):
    passes = skips = 0
    fail_note = None
    skip_note = None
    for status, note in outcomes:
        if status == "pass":
            passes += 1
        elif status == "skip":
            skips += 1
            if skip_note is None:
                skip_note = f"skip: {note}"
        elif fail_note is None:
            fail_note = note
    witness = fail_note if fail_note is not None else (skip_note if skips else None)
    return CheckResult(name, len(outcomes), passes, skips, witness)


def _skipped(name, count, reason):
    return CheckResult(name, samples=count, passes=0, skips=count, witness=f"skip: {reason}")


def run_verification(
    chart: VarietyChart,
    explicit_omega: OmegaForm | None = None,
    seed: int = 42,
    samples: int = 100,
    checks=None,
    jobs: int = 1,
) -> VerificationReport:
    start = time.monotonic()
    base = RationalSampler(seed)
    selected = set(checks) if checks else set(CHECK_NAMES)
    unknown = selected - set(CHECK_NAMES)
    if unknown:
        raise ValueError(f"unknown checks: {', '.join(sorted(unknown))}")

    if explicit_omega is None:
        construction = build_omega(chart, seed=seed)
        omega = construction.omega
        dim_w_prime = construction.dim_w_prime
    else:
        omega = explicit_omega
        dim_w_prime = None

    d = chart.param_dim
    n = omega.dim_w + omega.dim_u
    dims = {
        "dimW": omega.dim_w,
        "dimU": omega.dim_u,
        "dimWprime": dim_w_prime,
        "d": d,
        "n": n,
        "familyDim": n - 1 + d,
    }
    report = VerificationReport(chart.label, seed, samples, dims)

    certificate = certify_isotropic(chart, omega)
    pair_total = (d + 1) * d // 2
    if "isotropy" in selected:
        if certificate.proven:
            report.checks.append(CheckResult("isotropy", pair_total, pair_total))
        else:
            result = CheckResult(
                "isotropy",
                samples=pair_total,
                passes=certificate.pairs_checked - 1,
                skips=pair_total - certificate.pairs_checked,
                witness=certificate.witness.describe(),
            )
            report.checks.append(result)

    if "group-law" in selected:
        outcomes = [
            ("pass" if meta.associativity_holds(omega) else "fail", "associativity broken"),
            (
                "pass" if meta.commutator_matches_bracket(omega) else "fail",
                "commutator disagrees with the bracket",
            ),
            (
                "pass" if meta.one_parameter_subgroup_holds(omega) else "fail",
                "one-parameter subgroups not additive",
            ),
        ]
        report.checks.append(_tally("group-law", outcomes))

    if "maurer-cartan" in selected:
        sampler = base.derive("maurer-cartan")
        outcomes = []
        for _ in range(samples):
            x = _sample_element(sampler, omega)
            v = sampler.nonzero_vector(omega.dim_w)
            try:
                meta.maurer_cartan_log_derivative(omega, x, v)
                outcomes.append(("pass", None))
            except InternalConsistencyError as exc:
                outcomes.append(("fail", str(exc)))
        report.checks.append(_tally("maurer-cartan", outcomes))

    if "levi-tensor" in selected:
        sampler = base.derive("levi-tensor")
        outcomes = []
        for _ in range(samples):
            x = _sample_element(sampler, omega)
            u = sampler.vector(omega.dim_w)
            v = sampler.vector(omega.dim_w)
            value = meta.levi_tensor(omega, x, u, v)
            expected = tuple(omega.apply(u, v))
            outcomes.append(
                ("pass", None)
                if value == expected
                else ("fail", "field bracket disagrees with the form")
            )
        report.checks.append(_tally("levi-tensor", outcomes))

    gate_reason = None if certificate.proven else "isotropy not proven"

    slide_cfgs = _slide_configs(base.derive("slide-identity"), chart, omega, samples)
    if "slide-identity" in selected:
        report.checks.append(
            _slide_check("slide-identity", chart, omega, slide_cfgs, False, jobs, gate_reason)
        )
    if "slide-identity-alt-chart" in selected:
        report.checks.append(
            _slide_check(
                "slide-identity-alt-chart", chart, omega, slide_cfgs, True, jobs, gate_reason
            )
        )

    if "slide-identity-symbolic" in selected:
        count = min(5, samples)
        if gate_reason:
            report.checks.append(_skipped("slide-identity-symbolic", count, gate_reason))
        else:
            outcomes = [
                _symbolic_outcome(chart, omega, cfg) for cfg in slide_cfgs[:count]
            ]
            report.checks.append(_tally("slide-identity-symbolic", outcomes))

    pencil_count = max(1, samples // 5)
    want_pencil = "pencil-split" in selected
    want_split = "splitting-type" in selected
    if want_pencil or want_split:
        if gate_reason:
            if want_pencil:
                report.checks.append(_skipped("pencil-split", pencil_count, gate_reason))
            if want_split:
                report.checks.append(_skipped("splitting-type", pencil_count, gate_reason))
        else:
            pencil_out, split_out = _pencil_outcomes(
                base.derive("pencil"), chart, omega, pencil_count
            )
            if want_pencil:
                report.checks.append(_tally("pencil-split", pencil_out))
            if want_split:
                report.checks.append(_tally("splitting-type", split_out))

    if "family-dimension" in selected:
        if gate_reason:
            report.checks.append(_skipped("family-dimension", 1, gate_reason))
        else:
            sampler = base.derive("family-dim")
            measured = fam.family_dimension(chart, omega, sampler, points=10)
            expected = n - 1 + d
            if measured == expected:
                report.checks.append(CheckResult("family-dimension", 1, 1))
            else:
                report.checks.append(
                    CheckResult(
                        "family-dimension",
                        1,
                        0,
                        witness=f"measured {measured}, expected {expected}",
                    )
                )

    if "boundary-cosets" in selected:
        if gate_reason:
            report.checks.append(_skipped("boundary-cosets", samples, gate_reason))
        else:
            outcomes = _coset_outcomes(base.derive("cosets"), chart, omega, samples)
            report.checks.append(_tally("boundary-cosets", outcomes))

    half = max(1, samples // 2)
    if "group-action" in selected:
        if gate_reason:
            report.checks.append(_skipped("group-action", half, gate_reason))
        else:
            outcomes = _action_outcomes(base.derive("action"), chart, omega, half)
            report.checks.append(_tally("group-action", outcomes))

    if "equivariance" in selected:
        if gate_reason:
            report.checks.append(_skipped("equivariance", half, gate_reason))
        else:
            outcomes = _equivariance_outcomes(base.derive("equivariance"), chart, omega, half)
            report.checks.append(_tally("equivariance", outcomes))

    if "line-boundary" in selected:
        if gate_reason:
            report.checks.append(_skipped("line-boundary", half, gate_reason))
        else:
            outcomes = _line_boundary_outcomes(base.derive("lines"), chart, omega, half)
            report.checks.append(_tally("line-boundary", outcomes))

    report.wall_time = time.monotonic() - start
    return report


def _slide_configs(sampler, chart, omega, count):
    cfgs = []
    for _ in range(count):
        cfgs.append(
            (
                sampler.vector(chart.param_dim),
                sampler.vector(omega.dim_w),
                sampler.vector(omega.dim_u),
                sampler.nonzero_vector(chart.param_dim),
                sampler.nonzero_rational(),
            )
        )
    return cfgs


def _slide_check(name, chart, omega, cfgs, use_alt, jobs, gate_reason):
    if gate_reason:
        return _skipped(name, len(cfgs), gate_reason)
    if jobs > 1:
        with ProcessPoolExecutor(
            max_workers=jobs, initializer=_worker_init, initargs=(chart, omega, use_alt)
        ) as pool:
            chunk = max(1, len(cfgs) // (4 * jobs))
            outcomes = list(pool.map(_worker_run, cfgs, chunksize=chunk))
    else:
        outcomes = [_slide_outcome(chart, omega, cfg, use_alt) for cfg in cfgs]
    return _tally(name, outcomes)


def _symbolic_outcome(chart, omega, cfg):
    param, base_w, base_u, delta, t = cfg
    x = meta.element(omega, base_w, base_u)
    if _frame_or_none(chart, param) is None:
        return ("skip", "degenerate frame")
    w = chart.evaluate(param)
    try:
        pivots = fam.primary_pivots(omega, x, w)
        for slide in (t, Q(0)):
            jet = fam.direction_variation(chart, omega, param, x, delta, slide, pivots)
            symbolic = fam.direction_variation_symbolic(
                chart, omega, param, x, delta, slide, pivots
            )
            if jet != symbolic:
                return ("fail", f"jet and symbolic derivatives disagree at slide {qstr(slide)}")
        result = fam.check_slide_identity(chart, omega, param, x, delta, t, pivots)
    except fam.ChartMiss as exc:
        return ("skip", f"chart miss: {exc}")
    if result.ok:
        return ("pass", None)
    return ("fail", "identity failed on oracle sample")


def _pencil_outcomes(sampler, chart, omega, count):
    pencil_out = []
    split_out = []
    for _ in range(count):
        param = sampler.vector(chart.param_dim)
        x = _sample_element(sampler, omega)
        if _frame_or_none(chart, param) is None:
            pencil_out.append(("skip", "degenerate frame"))
            split_out.append(("skip", "degenerate frame"))
            continue
        w = chart.evaluate(param)
        try:
            pivots = fam.primary_pivots(omega, x, w)
            frame0, frame_inf = fam.pencil_frames(chart, omega, param, x, pivots)
        except fam.ChartMiss as exc:
            pencil_out.append(("skip", f"chart miss: {exc}"))
            split_out.append(("skip", f"chart miss: {exc}"))
            continue
        except (fam.RankDeficient, AssertionError) as exc:
            pencil_out.append(("fail", str(exc)))
            split_out.append(("skip", "pencil frames unavailable"))
            continue
        pencil_out.append(("pass", None))
        split_out.append(
            ("pass", None)
            if fam.check_splitting_type(frame0, frame_inf)
            else ("fail", "a pencil member dropped rank")
        )
    return pencil_out, split_out


def _coset_outcomes(sampler, chart, omega, count):
    outcomes = []
    for k in range(count):
        param = sampler.vector(chart.param_dim)
        frame = _frame_or_none(chart, param)
        if frame is None:
            outcomes.append(("skip", "degenerate frame"))
            continue
        x = _sample_element(sampler, omega)
        w = chart.evaluate(param)
        line_a = lin.line_through(omega, x, w)
        if k % 2 == 0:
            coeffs = sampler.vector(chart.param_dim + 1)
            shift = [Q(0)] * omega.dim_w
            for c, row in zip(coeffs, frame.entries):
                for i in range(omega.dim_w):
                    shift[i] += c * row[i]
            x2 = meta.multiply(omega, x, meta.element(omega, shift))
            line_b = lin.line_through(omega, x2, w)
            expect_equal = True
        elif omega.dim_u > 0 and (k // 2) % 2 == 0:
            u_shift = sampler.nonzero_vector(omega.dim_u)
            x2 = meta.multiply(
                omega, x, meta.element(omega, [Q(0)] * omega.dim_w, u_shift)
            )
            line_b = lin.line_through(omega, x2, w)
            expect_equal = False
        else:
            escape = _escape_vector(chart, param, omega)
            if escape is not None:
                x2 = meta.multiply(omega, x, meta.element(omega, escape))
                line_b = lin.line_through(omega, x2, w)
                expect_equal = False
            else:
                param2 = _different_param(sampler, chart, param)
                if param2 is None:
                    outcomes.append(("skip", "no distinguishable coset available"))
                    continue
                line_b = lin.line_through(omega, x, chart.evaluate(param2))
                expect_equal = False
        try:
            img_a = comp.bundle_to_space(chart, omega, comp.OnSection(line_a))
            img_b = comp.bundle_to_space(chart, omega, comp.OnSection(line_b))
        except comp.DirectionNotOnChart as exc:
            outcomes.append(("skip", f"direction recovery unavailable: {exc}"))
            continue
        equal = img_a == img_b
        outcomes.append(
            ("pass", None)
            if equal == expect_equal
            else ("fail", f"coset equality expected {expect_equal}, got {equal}")
        )
    return outcomes


def _escape_vector(chart, param, omega):
    for i in range(omega.dim_w):
        basis_vec = tuple(Q(1) if j == i else Q(0) for j in range(omega.dim_w))
        if not comp.in_tangent_span(chart, param, basis_vec):
            return basis_vec
    return None


def _different_param(sampler, chart, param):
    for _ in range(8):
        candidate = sampler.vector(chart.param_dim)
        if candidate != tuple(param) and _frame_or_none(chart, candidate) is not None:
            return candidate
    return None


def _action_outcomes(sampler, chart, omega, count):
    outcomes = []
    identity = meta.identity_element(omega)
    for _ in range(count):
        param = sampler.vector(chart.param_dim)
        if _frame_or_none(chart, param) is None:
            outcomes.append(("skip", "degenerate frame"))
            continue
        x = _sample_element(sampler, omega)
        g1 = _sample_element(sampler, omega)
        g2 = _sample_element(sampler, omega)
        interior = comp.Interior(x)
        boundary = comp.Boundary(comp.boundary_point(chart, omega, param, x))
        ok = True
        for point in (interior, boundary):
            if comp.g_action(chart, omega, identity, point) != point:
                ok = False
            lhs = comp.g_action(chart, omega, meta.multiply(omega, g1, g2), point)
            rhs = comp.g_action(chart, omega, g1, comp.g_action(chart, omega, g2, point))
            if lhs != rhs:
                ok = False
        moved = comp.g_action(chart, omega, g1, interior)
        if moved.point != meta.multiply(omega, g1, x):
            ok = False
        outcomes.append(("pass", None) if ok else ("fail", "action axiom violated"))
    return outcomes


def _equivariance_outcomes(sampler, chart, omega, count):
    outcomes = []
    for _ in range(count):
        param = sampler.vector(chart.param_dim)
        if _frame_or_none(chart, param) is None:
            outcomes.append(("skip", "degenerate frame"))
            continue
        x = _sample_element(sampler, omega)
        g = _sample_element(sampler, omega)
        marked = lin.direction_point(chart, omega, param, x)
        off = comp.OffSection(marked)
        on = comp.OnSection(lin.line_of(omega, marked))
        ok = True
        for point in (off, on):
            lhs = comp.bundle_to_space(chart, omega, comp.act_on_bundle(omega, g, point))
            rhs = comp.g_action(chart, omega, g, comp.bundle_to_space(chart, omega, point))
            if lhs != rhs:
                ok = False
        outcomes.append(("pass", None) if ok else ("fail", "evaluation not equivariant"))
    return outcomes


def _line_boundary_outcomes(sampler, chart, omega, count):
    outcomes = []
    for _ in range(count):
        param = sampler.vector(chart.param_dim)
        if _frame_or_none(chart, param) is None:
            outcomes.append(("skip", "degenerate frame"))
            continue
        x = _sample_element(sampler, omega)
        grid = sampler.distinct_rationals(5)
        interiors, boundary = comp.compactified_line(chart, omega, param, x, grid)
        ok = len({p.point for p in interiors}) == len(grid)
        for interior in interiors:
            again = comp.boundary_point(chart, omega, param, interior.point)
            if comp.Boundary(again) != boundary:
                ok = False
        marked = lin.direction_point(chart, omega, param, x)
        base_line = lin.line_of(omega, marked)
        for t in grid:
            slid = lin.slide_action(omega, t, marked)
            if lin.line_of(omega, slid) != base_line:
                ok = False
        outcomes.append(("pass", None) if ok else ("fail", "compactified line misbehaved"))
    return outcomes

"""Differential geometry of the line family, in local Grassmann charts.

A horizontal line in an isotropic chart direction embeds into the
Grassmannian of 2-planes; around any such plane a chart is given by a
pair of pivot columns, normalizing the spanning rows against them and
reading the remaining 2 x (n-1) block as coordinates.  Everything here
differentiates that picture exactly:

* direction_variation: derivative of the family map when the chart
  parameter moves and the base point is slid along the line;
* basepoint_variation: derivative when the base point moves through the
  group, one column per algebra direction (kernel: the line direction);
* check_slide_identity: sliding the base by t shifts the direction
  derivative by -t times the chart tangent, modulo the line direction;
* pencil_frames / check_splitting_type: the one-parameter pencil of
  derivative frames is exactly linear in the slide parameter, and the
  combined frame has full rank with the limit frame nowhere dropping;
* family_dimension: rank of the full parametrization Jacobian.
"""

from __future__ import annotations

from dataclasses import dataclass

from .jets import Jet1
from .linalg import Mat, NotInSpan, solve_in_span
from .lines import line_matrix_rows
from .metabelian import GroupElement, OmegaForm, element, multiply
from .polynomials import Poly
from .scalars import ONE, Q, ZERO
from .varieties import VarietyChart

PENCIL_SLIDES = (Q(1), Q(2), Q(-1), Q(1, 2), Q(7))
SPLITTING_SAMPLES = (ZERO, Q(1), Q(-1), Q(2), Q(1, 3), Q(5))


class ChartMiss(Exception):
    """The chosen pivot columns are singular at this plane."""


class RankDeficient(Exception):
    """A frame expected to have full rank dropped rank."""


def primary_pivots(omega: OmegaForm, x: GroupElement, w):
    """Leftmost valid pivot pair: the echelon pivots of the line's plane."""
    reduced, pivots = Mat(line_matrix_rows(omega, x, w)).rref()
    if len(pivots) != 2:
        raise ChartMiss("line span is degenerate")
    return pivots


def next_pivots(omega: OmegaForm, x: GroupElement, w, exclude):
    """Next pivot pair (lex order) with invertible minor, or None."""
    rows = line_matrix_rows(omega, x, w)
    ncols = len(rows[0])
    for i in range(ncols):
        for j in range(i + 1, ncols):
            if (i, j) == tuple(exclude):
                continue
            minor = rows[0][i] * rows[1][j] - rows[0][j] * rows[1][i]
            if minor != 0:
                return (i, j)
    return None


def _value(entry):
    return entry.val if isinstance(entry, Jet1) else entry


def _eps(entry, k):
    return entry.eps[k] if isinstance(entry, Jet1) else ZERO


def chart_block(rows, pivots):
    """Non-pivot block of the plane normalized at the pivot columns.

    Generic over scalars and jets; raises ChartMiss when the pivot
    minor's value part vanishes.
    """
    c1, c2 = pivots
    a, b = rows[0][c1], rows[0][c2]
    c, d = rows[1][c1], rows[1][c2]
    det = a * d - b * c
    if _value(det) == 0:
        raise ChartMiss(f"pivot columns {pivots} are singular here")
    inv = ((d / det, (-b) / det), ((-c) / det, a / det))
    out = []
    for r in range(2):
        row = []
        for col in range(len(rows[0])):
            if col == c1 or col == c2:
                continue
            row.append(inv[r][0] * rows[0][col] + inv[r][1] * rows[1][col])
        out.append(row)
    return out


def _slid_base(chart, omega, param, x, t):
    w0 = chart.evaluate(param)
    return multiply(omega, x, element(omega, tuple(Q(t) * c for c in w0)))


def direction_variation(chart: VarietyChart, omega: OmegaForm, param, x, delta, t, pivots) -> Mat:
    """Derivative of the chart coordinates of the line's plane as the
    parameter moves along delta, the base slid by t along the line."""
    xt = _slid_base(chart, omega, param, x, t)
    jets = [Jet1(Q(pv), (Q(dv),)) for pv, dv in zip(param, delta)]
    w_tau = chart.evaluate_generic(jets, zero=Jet1.const(0, 1))
    rows = line_matrix_rows(omega, xt, w_tau)
    block = chart_block(rows, pivots)
    return Mat([[_eps(entry, 0) for entry in row] for row in block])


def radial_variation(chart: VarietyChart, omega: OmegaForm, param, x, t, pivots) -> Mat:
    """Same derivative along the scaling arc (1 + tau) w: the plane does
    not move, so this must be exactly zero."""
    xt = _slid_base(chart, omega, param, x, t)
    scale = Jet1(ONE, (ONE,))
    w_tau = [scale * Q(c) for c in chart.evaluate(param)]
    rows = line_matrix_rows(omega, xt, w_tau)
    block = chart_block(rows, pivots)
    return Mat([[_eps(entry, 0) for entry in row] for row in block])


def direction_variation_symbolic(
    chart: VarietyChart, omega: OmegaForm, param, x, delta, t, pivots
) -> Mat:
    """Independent recomputation of direction_variation by polynomial
    calculus: the chart coordinates are rational functions of the arc
    parameter, differentiated by the quotient rule at zero."""
    xt = _slid_base(chart, omega, param, x, t)
    subs = [
        Poly.const(pv, 1) + Q(dv) * Poly.var(0, 1) for pv, dv in zip(param, delta)
    ]
    w_tau = [coord.compose(subs) for coord in chart.coords]
    row_point = [Poly.const(c, 1) for c in xt.w_part + xt.u_part] + [Poly.const(1, 1)]
    half_corr = omega.apply([Poly.const(c, 1) for c in xt.w_part], w_tau)
    row_dir = list(w_tau) + [Q(1, 2) * c for c in half_corr] + [Poly.zero(1)]
    rows = [row_point, row_dir]

    c1, c2 = pivots
    p00, p01 = rows[0][c1], rows[0][c2]
    p10, p11 = rows[1][c1], rows[1][c2]
    det = p00 * p11 - p01 * p10
    det0 = det.evaluate((ZERO,))
    if det0 == 0:
        raise ChartMiss(f"pivot columns {pivots} are singular here")
    det_prime0 = det.diff(0).evaluate((ZERO,))
    adj = ((p11, -p01), (-p10, p00))
    out = []
    for r in range(2):
        row = []
        for col in range(len(rows[0])):
            if col == c1 or col == c2:
                continue
            numerator = adj[r][0] * rows[0][col] + adj[r][1] * rows[1][col]
            n0 = numerator.evaluate((ZERO,))
            n_prime0 = numerator.diff(0).evaluate((ZERO,))
            row.append((n_prime0 * det0 - n0 * det_prime0) / (det0 * det0))
        out.append(row)
    return Mat(out)


def basepoint_variation(omega: OmegaForm, x: GroupElement, w, pivots) -> Mat:
    """Derivative of the plane as the base moves: one column per algebra
    basis direction, rows the flattened chart block.  The kernel is the
    span of the line direction."""
    n = omega.dim_w + omega.dim_u
    x_jets = GroupElement(
        tuple(Jet1.const(c, n) for c in x.w_part),
        tuple(Jet1.const(c, n) for c in x.u_part),
    )
    arg = GroupElement(
        tuple(Jet1.variable(0, n, i) for i in range(omega.dim_w)),
        tuple(Jet1.variable(0, n, omega.dim_w + c) for c in range(omega.dim_u)),
    )
    moved = multiply(omega, x_jets, arg)
    rows = line_matrix_rows(omega, moved, list(w))
    block = chart_block(rows, pivots)
    cols = []
    for k in range(n):
        cols.append([_eps(entry, k) for row in block for entry in row])
    return Mat.from_cols(cols)


def _flatten(mat: Mat):
    return [entry for row in mat.entries for entry in row]


def _direction_in_algebra(omega: OmegaForm, w):
    return list(w) + [ZERO] * omega.dim_u


@dataclass(frozen=True)
class SlideCheckResult:
    ok: bool
    tangent_span_ok: bool
    coefficients: tuple
    residual: tuple


def check_slide_identity(
    chart: VarietyChart, omega: OmegaForm, param, x, delta, t, pivots
) -> SlideCheckResult:
    """Verify: (variation slid by t) - (variation at 0), pulled back
    through the basepoint variation, equals -t times the chart tangent
    modulo the line direction.  Exact, zero tolerance."""
    w = chart.evaluate(param)
    j_t = direction_variation(chart, omega, param, x, delta, t, pivots)
    j_0 = direction_variation(chart, omega, param, x, delta, 0, pivots)
    shift = [a - b for a, b in zip(_flatten(j_t), _flatten(j_0))]
    bvm = basepoint_variation(omega, x, w, pivots)
    coeffs = solve_in_span(bvm, shift)

    tangent = chart.tangent_vector(param, delta)
    target = _direction_in_algebra(omega, tangent)
    residual = [c + Q(t) * v for c, v in zip(coeffs, target)]
    w_full = _direction_in_algebra(omega, w)
    lead = next(k for k, c in enumerate(w_full) if c != 0)
    scale = residual[lead] / w_full[lead]
    residual = tuple(r - scale * c for r, c in zip(residual, w_full))
    ok = all(r == 0 for r in residual)

    span_cols = [
        _direction_in_algebra(omega, frame_row)
        for frame_row in _partial_rows(chart, param)
    ]
    span_cols.append(w_full)
    try:
        solve_in_span(Mat.from_cols(span_cols), coeffs)
        tangent_span_ok = True
    except NotInSpan:
        tangent_span_ok = False
    return SlideCheckResult(ok, tangent_span_ok, tuple(coeffs), residual)


def _partial_rows(chart: VarietyChart, param):
    point = tuple(param)
    rows = []
    for a in range(chart.param_dim):
        rows.append(tuple(p.evaluate(point) for p in chart.partials[a]))
    return rows


def _unit(d, a):
    return tuple(ONE if i == a else ZERO for i in range(d))


def pencil_frames(chart: VarietyChart, omega: OmegaForm, param, x, pivots):
    """Frames spanning the pencil of direction-derivative planes.

    Returns (frame at slide zero, limit frame).  Asserts the pencil is
    exactly linear in the slide parameter at several slides, and that
    the two frames together have rank 2d.  Raises RankDeficient when
    the combined rank drops.
    """
    d = chart.param_dim
    w = chart.evaluate(param)
    bvm = basepoint_variation(omega, x, w, pivots)
    f0_cols = []
    finf_cols = []
    for a in range(d):
        f0_cols.append(_flatten(direction_variation(chart, omega, param, x, _unit(d, a), 0, pivots)))
        tangent = tuple(p.evaluate(tuple(param)) for p in chart.partials[a])
        image = bvm.times_vector(_direction_in_algebra(omega, tangent))
        finf_cols.append([-v for v in image])
    frame0 = Mat.from_cols(f0_cols)
    frame_inf = Mat.from_cols(finf_cols)

    for t in PENCIL_SLIDES:
        for a in range(d):
            slid = _flatten(direction_variation(chart, omega, param, x, _unit(d, a), t, pivots))
            expected = [u + t * v for u, v in zip(f0_cols[a], finf_cols[a])]
            if slid != expected:
                raise AssertionError(f"pencil not linear at slide {t}")

    if frame0.hstack(frame_inf).rank() != 2 * d:
        raise RankDeficient("combined pencil frames drop rank")
    return frame0, frame_inf


def check_splitting_type(frame0: Mat, frame_inf: Mat) -> bool:
    """Witness that every pencil member, including the limit, spans a
    d-plane: s * frame0 + frame_inf keeps rank d at s = 0 and beyond,
    while the combined frame has rank 2d."""
    d = frame0.ncols
    if frame0.hstack(frame_inf).rank() != 2 * d:
        return False
    for s in SPLITTING_SAMPLES:
        mixed = Mat(
            [
                [s * a + b for a, b in zip(row_a, row_b)]
                for row_a, row_b in zip(frame0.entries, frame_inf.entries)
            ]
        )
        if mixed.rank() != d:
            return False
    return True


def family_dimension(chart: VarietyChart, omega: OmegaForm, sampler, points: int = 10) -> int:
    """Max rank over sample points of the Jacobian of
    (parameter, base point) -> chart coordinates of the line's plane."""
    d = chart.param_dim
    n = omega.dim_w + omega.dim_u
    width = d + n
    best = 0
    for _ in range(points):
        param = sampler.vector(d)
        if all(c == 0 for c in chart.evaluate(param)):
            continue
        base_w = sampler.vector(omega.dim_w)
        base_u = sampler.vector(omega.dim_u)
        p_jets = [Jet1.variable(param[a], width, a) for a in range(d)]
        x_jets = GroupElement(
            tuple(Jet1.variable(base_w[i], width, d + i) for i in range(omega.dim_w)),
            tuple(
                Jet1.variable(base_u[c], width, d + omega.dim_w + c)
                for c in range(omega.dim_u)
            ),
        )
        w_jets = chart.evaluate_generic(p_jets, zero=Jet1.const(0, width))
        rows = line_matrix_rows(omega, x_jets, w_jets)
        value_rows = [[_value(entry) for entry in row] for row in rows]
        _, pivots = Mat(value_rows).rref()
        if len(pivots) != 2:
            continue
        block = chart_block(rows, pivots)
        jacobian = Mat(
            [
                [_eps(entry, k) for k in range(width)]
                for row in block
                for entry in row
            ]
        )
        best = max(best, jacobian.rank())
    return best

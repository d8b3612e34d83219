"""Horizontal lines, their canonical forms, and projective line embeddings.

A horizontal line is the left translate of a one-parameter subgroup in
a W-direction.  Its points are

    (x_w + t w,  x_u + (t/2) form(x_w, w)).

Canonical form: the direction is scaled so its leftmost nonzero entry
is one (the pivot), and the base point slides along the line until its
W-part vanishes at the pivot coordinate.  Lines embed into the
Grassmannian of 2-planes of V = W + U + I (I a line of constants) by
the row span of the base point (affine part 1) and the direction
(affine part 0); the exterior-square coordinates of that span satisfy
the classical quadratic relations.
"""

from __future__ import annotations

from dataclasses import dataclass

from .linalg import Mat, solve_in_span, NotInSpan
from .metabelian import GroupElement, OmegaForm, element, multiply
from .scalars import HALF, ONE, Q, ZERO
from .varieties import VarietyChart


class ZeroDirection(Exception):
    """A line needs a nonzero direction."""


@dataclass(frozen=True)
class HorizontalLine:
    direction: tuple
    base: GroupElement
    pivot: int


def line_through(omega: OmegaForm, x: GroupElement, w) -> HorizontalLine:
    """Canonical horizontal line through x in direction w."""
    w = tuple(Q(c) for c in w)
    if len(w) != omega.dim_w:
        raise ValueError("direction must lie in W")
    pivot = next((k for k, c in enumerate(w) if c != 0), None)
    if pivot is None:
        raise ZeroDirection("direction is the zero vector")
    lead = w[pivot]
    w = tuple(c / lead for c in w)
    t0 = -x.w_part[pivot]
    base = multiply(omega, x, element(omega, tuple(t0 * c for c in w)))
    return HorizontalLine(w, base, pivot)


def point_at(omega: OmegaForm, line: HorizontalLine, t) -> GroupElement:
    return multiply(omega, line.base, element(omega, tuple(Q(t) * c for c in line.direction)))


def parameter_of(omega: OmegaForm, line: HorizontalLine, x: GroupElement):
    """Parameter of a group element known to lie on the line."""
    t = x.w_part[line.pivot]
    if point_at(omega, line, t) != x:
        raise ValueError("point does not lie on the line")
    return t


@dataclass(frozen=True, eq=False)
class TangentDirectionPoint:
    """A chart parameter together with a base point: one line with a
    marked base, the direction being the chart value at the parameter."""

    chart: VarietyChart
    param: tuple
    base: GroupElement

    def __eq__(self, other):
        return (
            isinstance(other, TangentDirectionPoint)
            and self.chart == other.chart
            and self.param == other.param
            and self.base == other.base
        )

    def __hash__(self):
        return hash((self.chart, self.param, self.base))


def direction_point(chart: VarietyChart, omega: OmegaForm, param, base: GroupElement):
    param = tuple(Q(c) for c in param)
    if len(param) != chart.param_dim:
        raise ValueError("parameter arity mismatch")
    return TangentDirectionPoint(chart, param, base)


def slide_action(omega: OmegaForm, t, alpha: TangentDirectionPoint) -> TangentDirectionPoint:
    """Slide the base along the marked direction: base -> base * (t w, 0)."""
    w = alpha.chart.evaluate(alpha.param)
    shift = element(omega, tuple(Q(t) * c for c in w))
    return TangentDirectionPoint(alpha.chart, alpha.param, multiply(omega, alpha.base, shift))


def line_of(omega: OmegaForm, alpha: TangentDirectionPoint) -> HorizontalLine:
    return line_through(omega, alpha.base, alpha.chart.evaluate(alpha.param))


def line_and_parameter(omega: OmegaForm, alpha: TangentDirectionPoint):
    """Decompose a marked point into its canonical line and slide parameter."""
    line = line_of(omega, alpha)
    return line, parameter_of(omega, line, alpha.base)


def line_matrix_rows(omega: OmegaForm, x: GroupElement, w):
    """Spanning rows of the line's 2-plane in V = W + U + I."""
    half_corr = [HALF * c for c in omega.apply(x.w_part, w)]
    row_point = list(x.w_part) + list(x.u_part) + [ONE]
    row_dir = list(w) + half_corr + [ZERO]
    return [row_point, row_dir]


@dataclass(frozen=True)
class PlueckerLine:
    basis: Mat
    pivots: tuple
    vector: tuple


def pluecker_vector(rows):
    r1, r2 = rows
    out = []
    for i in range(len(r1)):
        for j in range(i + 1, len(r1)):
            out.append(r1[i] * r2[j] - r1[j] * r2[i])
    return tuple(out)


def pluecker_embed(omega: OmegaForm, line: HorizontalLine) -> PlueckerLine:
    rows = line_matrix_rows(omega, line.base, line.direction)
    reduced, pivots = Mat(rows).rref()
    if len(pivots) != 2:
        raise ZeroDirection("degenerate line span")
    return PlueckerLine(reduced, pivots, pluecker_vector(reduced.entries))


def pluecker_relations_hold(vector, ncols) -> bool:
    """Quadratic relations p_ij p_kl - p_ik p_jl + p_il p_jk == 0."""
    index = {}
    k = 0
    for i in range(ncols):
        for j in range(i + 1, ncols):
            index[(i, j)] = k
            k += 1
    p = vector
    for i in range(ncols):
        for j in range(i + 1, ncols):
            for a in range(j + 1, ncols):
                for b in range(a + 1, ncols):
                    lhs = (
                        p[index[(i, j)]] * p[index[(a, b)]]
                        - p[index[(i, a)]] * p[index[(j, b)]]
                        + p[index[(i, b)]] * p[index[(j, a)]]
                    )
                    if lhs != 0:
                        return False
    return True


def contains_point(omega: OmegaForm, pline: PlueckerLine, point: GroupElement) -> bool:
    """Membership of a group point in the embedded 2-plane."""
    vec = list(point.w_part) + list(point.u_part) + [ONE]
    try:
        solve_in_span(pline.basis.transpose(), vec)
    except NotInSpan:
        return False
    return True


def boundary_direction(omega: OmegaForm, line: HorizontalLine):
    """Projective point where the embedded line meets the W + U hyperplane.

    Coordinates [w : (1/2) form(x_w, w)], scaled so the leftmost nonzero
    entry is one; independent of the base point chosen on the line.
    """
    half_corr = [HALF * c for c in omega.apply(line.base.w_part, line.direction)]
    vec = list(line.direction) + half_corr
    lead = next(c for c in vec if c != 0)
    return tuple(c / lead for c in vec)

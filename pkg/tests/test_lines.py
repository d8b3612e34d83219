import pytest

from metaline.lines import (
    ZeroDirection,
    boundary_direction,
    contains_point,
    direction_point,
    line_and_parameter,
    line_matrix_rows,
    line_of,
    line_through,
    parameter_of,
    pluecker_embed,
    pluecker_relations_hold,
    pluecker_vector,
    point_at,
    slide_action,
)
from metaline.metabelian import OmegaForm, element, multiply
from metaline.sampling import RationalSampler
from metaline.scalars import Q

HEIS = OmegaForm.heisenberg()


def test_canonical_form_invariants():
    x = element(HEIS, (3, 5), (7,))
    line = line_through(HEIS, x, (2, 4))
    assert line.direction == (1, 2)
    assert line.pivot == 0
    assert line.direction[line.pivot] == 1
    assert line.base.w_part[line.pivot] == 0


def test_same_line_same_canonical_form():
    x = element(HEIS, (3, 5), (7,))
    line = line_through(HEIS, x, (2, 4))
    # any point of the line with any rescaled direction gives the same form
    y = point_at(HEIS, line, Q(9, 2))
    assert line_through(HEIS, y, (-6, -12)) == line


def test_distinct_lines_differ():
    x = element(HEIS, (3, 5), (7,))
    assert line_through(HEIS, x, (2, 4)) != line_through(HEIS, x, (2, 5))
    shifted = multiply(HEIS, x, element(HEIS, (0, 0), (1,)))
    assert line_through(HEIS, shifted, (2, 4)) != line_through(HEIS, x, (2, 4))


def test_zero_direction_rejected():
    x = element(HEIS, (0, 0))
    with pytest.raises(ZeroDirection):
        line_through(HEIS, x, (0, 0))


def test_point_at_and_parameter_of():
    x = element(HEIS, (0, 1), (0,))
    line = line_through(HEIS, x, (1, 0))
    y = point_at(HEIS, line, Q(5, 3))
    assert parameter_of(HEIS, line, y) == Q(5, 3)
    off = element(HEIS, (1, 2), (3,))
    with pytest.raises(ValueError):
        parameter_of(HEIS, line, off)


def test_line_points_satisfy_group_parametrization():
    x = element(HEIS, (2, 3), (5,))
    line = line_through(HEIS, x, (1, 1))
    t = Q(7, 2)
    expected = multiply(HEIS, line.base, element(HEIS, tuple(t * c for c in line.direction)))
    assert point_at(HEIS, line, t) == expected


def test_marked_point_slide_preserves_line(flat_conic):
    chart, omega, _ = flat_conic
    x = element(omega, (1, 2, 3))
    alpha = direction_point(chart, omega, (Q(2),), x)
    slid = slide_action(omega, Q(5), alpha)
    assert slid != alpha
    assert line_of(omega, slid) == line_of(omega, alpha)
    line, t = line_and_parameter(omega, slid)
    line0, t0 = line_and_parameter(omega, alpha)
    assert line == line0
    assert t - t0 == Q(5) * chart.evaluate((Q(2),))[0] / line.direction[line.pivot]


def test_pluecker_vector_order():
    rows = [[1, 0, 2], [0, 1, 3]]
    assert pluecker_vector(rows) == (1, 3, -2)


def test_pluecker_embedding_relations_and_membership(twisted_cubic):
    chart, omega, _ = twisted_cubic
    sampler = RationalSampler(13)
    n = omega.dim_w + omega.dim_u
    for _ in range(10):
        x = element(omega, sampler.vector(omega.dim_w), sampler.vector(omega.dim_u))
        w = chart.evaluate(sampler.vector(chart.param_dim))
        line = line_through(omega, x, w)
        plane = pluecker_embed(omega, line)
        assert pluecker_relations_hold(plane.vector, n + 1)
        for t in (Q(0), Q(1), Q(-3, 2)):
            assert contains_point(omega, plane, point_at(omega, line, t))
        assert not contains_point(
            omega, plane, multiply(omega, x, element(omega, (0,) * omega.dim_w, (1,)))
        )


def test_pluecker_injective_on_canonical_lines(twisted_cubic):
    chart, omega, _ = twisted_cubic
    sampler = RationalSampler(17)
    lines = []
    for _ in range(200):
        x = element(omega, sampler.vector(omega.dim_w), sampler.vector(omega.dim_u))
        w = sampler.nonzero_vector(omega.dim_w)
        lines.append(line_through(omega, x, w))
    embedded = {}
    for line in lines:
        key = pluecker_embed(omega, line).basis
        if key in embedded:
            assert embedded[key] == line
        else:
            embedded[key] = line
    distinct = set(lines)
    assert len(embedded) == len(distinct)


def test_boundary_direction_base_invariance(twisted_cubic):
    chart, omega, _ = twisted_cubic
    x = element(omega, (1, 2, 3, 4), (5,))
    w = chart.evaluate((Q(2),))
    line = line_through(omega, x, w)
    slid = line_through(omega, point_at(omega, line, Q(7)), w)
    assert boundary_direction(omega, line) == boundary_direction(omega, slid)
    # leading entry normalized to one
    vec = boundary_direction(omega, line)
    assert next(c for c in vec if c != 0) == 1


def test_flat_boundary_is_the_variety(flat_conic):
    """With a vanishing form the boundary direction is the chart value."""
    chart, omega, _ = flat_conic
    sampler = RationalSampler(19)
    x = element(omega, (4, 5, 6))
    for _ in range(20):
        p = sampler.vector(1)
        w = chart.evaluate(p)
        line = line_through(omega, x, w)
        expected = tuple(c / w[0] for c in w)
        assert boundary_direction(omega, line) == expected


def test_line_matrix_rows_shape(twisted_cubic):
    chart, omega, _ = twisted_cubic
    x = element(omega, (1, 0, 0, 0), (0,))
    w = chart.evaluate((Q(1),))
    rows = line_matrix_rows(omega, x, w)
    assert len(rows) == 2
    assert len(rows[0]) == omega.dim_w + omega.dim_u + 1
    assert rows[0][-1] == 1 and rows[1][-1] == 0


def test_slide_action_is_additive(twisted_cubic):
    chart, omega, _ = twisted_cubic
    sampler = RationalSampler(41)
    for _ in range(20):
        base = element(omega, sampler.vector(omega.dim_w), sampler.vector(omega.dim_u))
        alpha = direction_point(chart, omega, sampler.vector(chart.param_dim), base)
        s, t = sampler.rational(), sampler.rational()
        assert slide_action(omega, Q(0), alpha) == alpha
        assert slide_action(omega, s, slide_action(omega, t, alpha)) == slide_action(
            omega, s + t, alpha
        )
        assert line_of(omega, slide_action(omega, t, alpha)) == line_of(omega, alpha)


def test_pluecker_basis_heisenberg_example():
    # base (e2, 0), direction e1: rows (0,1,0,1) and (1,0,-1/2,0)
    line = line_through(HEIS, element(HEIS, (0, 1), (0,)), (1, 0))
    plane = pluecker_embed(HEIS, line)
    assert plane.pivots == (0, 1)
    assert plane.basis.entries == (
        (Q(1), Q(0), Q(-1, 2), Q(0)),
        (Q(0), Q(1), Q(0), Q(1)),
    )


def test_pluecker_relations_on_50_lines(quartic):
    chart, omega, _ = quartic
    sampler = RationalSampler(43)
    n = omega.dim_w + omega.dim_u
    for _ in range(50):
        x = element(omega, sampler.vector(omega.dim_w), sampler.vector(omega.dim_u))
        w = chart.evaluate(sampler.vector(chart.param_dim))
        plane = pluecker_embed(omega, line_through(omega, x, w))
        assert pluecker_relations_hold(plane.vector, n + 1)

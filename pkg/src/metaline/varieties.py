"""Polynomial charts of projective subvarieties and isotropy certificates.

A chart is a polynomial map from d parameters into the vector space W;
its image projects to a d-dimensional locus in the projectivization.
The affine tangent space of the cone at a chart point is spanned by the
chart value together with the d coordinate partials (the frame), and a
chart is isotropic for a form when the form vanishes identically on
every pair of frame vectors - proved here as a polynomial identity,
never by sampling.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .linalg import Mat
from .metabelian import OmegaForm
from .polynomials import Poly, parse_poly
from .scalars import Q, qstr

__all__ = [
    "VarietyChart",
    "DirectionRecovery",
    "FrameDegenerate",
    "IsotropyCertificate",
    "IsotropyWitness",
    "make_chart",
    "affine_tangent_frame",
    "certify_isotropic",
    "veronese_chart",
    "linear_chart",
    "compose_veronese3",
    "builtin_chart",
    "builtin_names",
    "chart_from_json",
    "omega_from_json",
]


class FrameDegenerate(Exception):
    """The chart frame dropped rank at a sample point."""


@dataclass(frozen=True)
class DirectionRecovery:
    """Coordinate hints inverting a chart on its image.

    constant_index points at a coordinate identically one; each entry of
    parameter_indices points at a coordinate equal to the bare parameter.
    """

    constant_index: int
    parameter_indices: tuple


@dataclass(frozen=True, eq=False)
class VarietyChart:
    label: str
    param_dim: int
    ambient_dim: int
    coords: tuple
    partials: tuple
    recovery: DirectionRecovery | None

    def evaluate(self, point):
        point = tuple(point)
        return tuple(poly.evaluate(point) for poly in self.coords)

    def evaluate_generic(self, values, zero):
        return [poly.evaluate(values, zero=zero) for poly in self.coords]

    def tangent_vector(self, point, delta):
        """Differential of the chart at point applied to delta."""
        point = tuple(point)
        delta = tuple(delta)
        out = [Q(0)] * self.ambient_dim
        for a in range(self.param_dim):
            if delta[a] == 0:
                continue
            for i in range(self.ambient_dim):
                out[i] += delta[a] * self.partials[a][i].evaluate(point)
        return tuple(out)

    def __eq__(self, other):
        return (
            isinstance(other, VarietyChart)
            and self.label == other.label
            and self.coords == other.coords
        )

    def __hash__(self):
        return hash((self.label, self.coords))


def make_chart(label, coords, recovery=None) -> VarietyChart:
    coords = tuple(coords)
    if not coords:
        raise ValueError("chart needs at least one coordinate")
    d = coords[0].nvars
    if any(p.nvars != d for p in coords):
        raise ValueError("chart coordinates must share one parameter list")
    partials = tuple(tuple(p.diff(a) for p in coords) for a in range(d))
    if recovery is None:
        recovery = _detect_recovery(coords, d)
    return VarietyChart(label, d, len(coords), coords, partials, recovery)


def _detect_recovery(coords, d):
    constant_index = None
    param_indices = [None] * d
    for k, poly in enumerate(coords):
        if constant_index is None and poly.is_one():
            constant_index = k
            continue
        for a in range(d):
            if param_indices[a] is None and poly == Poly.var(a, d):
                param_indices[a] = k
                break
    if constant_index is None or any(i is None for i in param_indices):
        return None
    return DirectionRecovery(constant_index, tuple(param_indices))


def affine_tangent_frame(chart: VarietyChart, point):
    """Frame of the cone's tangent space: chart value plus all partials.

    Raises FrameDegenerate unless the d+1 frame vectors are independent.
    """
    point = tuple(point)
    rows = [chart.evaluate(point)]
    for a in range(chart.param_dim):
        rows.append(tuple(p.evaluate(point) for p in chart.partials[a]))
    frame = Mat(rows)
    if frame.rank() != chart.param_dim + 1:
        raise FrameDegenerate(
            f"frame rank below {chart.param_dim + 1} at {tuple(map(qstr, point))}"
        )
    return frame


@dataclass(frozen=True)
class IsotropyWitness:
    pair: tuple
    point: tuple
    values: tuple

    def describe(self):
        point = ",".join(qstr(c) for c in self.point)
        values = ",".join(qstr(c) for c in self.values)
        return f"frame pair {self.pair} at point ({point}) maps to ({values})"


@dataclass(frozen=True)
class IsotropyCertificate:
    label: str
    proven: bool
    pairs_checked: int
    witness: IsotropyWitness | None


def _symbolic_frame(chart: VarietyChart):
    rows = [list(chart.coords)]
    for a in range(chart.param_dim):
        rows.append(list(chart.partials[a]))
    return rows


def _nonzero_point(polys, nvars):
    """Integer point where some polynomial in the list is nonzero.

    A finite grid with per-variable size degree+1 must contain one.
    """
    degree = max(max((p.degree_in(a) for p in polys), default=0) for a in range(nvars))
    grid = range(degree + 1)
    for raw in sorted(itertools.product(grid, repeat=nvars), key=lambda t: (sum(t), t)):
        point = tuple(Q(c) for c in raw)
        values = tuple(p.evaluate(point) for p in polys)
        if any(v != 0 for v in values):
            return point, values
    raise AssertionError("nonzero polynomial vanished on a full grid")


def certify_isotropic(chart: VarietyChart, omega: OmegaForm) -> IsotropyCertificate:
    """Prove the form vanishes identically on all frame pairs, or exhibit
    a parameter point where it does not."""
    if omega.dim_w != chart.ambient_dim:
        raise ValueError("form and chart have different ambient dimension")
    frame = _symbolic_frame(chart)
    pairs = 0
    for a in range(len(frame)):
        for b in range(a + 1, len(frame)):
            pairs += 1
            values = omega.apply(frame[a], frame[b])
            polys = [v if isinstance(v, Poly) else Poly.const(v, chart.param_dim) for v in values]
            if all(p.is_zero() for p in polys):
                continue
            point, witness_values = _nonzero_point(polys, chart.param_dim)
            witness = IsotropyWitness((a, b), point, witness_values)
            return IsotropyCertificate(chart.label, False, pairs, witness)
    return IsotropyCertificate(chart.label, True, pairs, None)


def _degree_exponents(nvars, degree):
    """Exponent tuples of total degree == degree, descending lex order."""
    exps = [
        e
        for e in itertools.product(range(degree + 1), repeat=nvars)
        if sum(e) == degree
    ]
    return sorted(exps, key=lambda e: tuple(-x for x in e))


def veronese_chart(r, k, label=None) -> VarietyChart:
    """Degree-k monomial chart of (r-1)-dimensional projective space.

    Coordinates are all degree-k monomials of (1, p_1, ..., p_{r-1}).
    """
    if r < 2 or k < 1:
        raise ValueError("need r >= 2 and k >= 1")
    d = r - 1
    coords = []
    for exps in _degree_exponents(r, k):
        term = {tuple(exps[1:]): Q(1)}
        coords.append(Poly(d, term))
    return make_chart(label or f"veronese-{r}-{k}", coords)


def linear_chart(dim_w, label=None) -> VarietyChart:
    """Affine chart of the full projectivization of W."""
    if dim_w < 2:
        raise ValueError("need dim_w >= 2")
    d = dim_w - 1
    coords = [Poly.const(1, d)] + [Poly.var(a, d) for a in range(d)]
    return make_chart(label or f"linear-{dim_w}", coords)


def compose_veronese3(chart: VarietyChart, label=None) -> VarietyChart:
    """Compose a chart with the third Veronese map of its ambient space."""
    coords = []
    for exps in _degree_exponents(chart.ambient_dim, 3):
        poly = Poly.const(1, chart.param_dim)
        for i, e in enumerate(exps):
            if e:
                poly = poly * chart.coords[i] ** e
        coords.append(poly)
    return make_chart(label or f"veronese3-of-{chart.label}", coords)


_BUILTIN_BUILDERS = {
    "veronese-2-3": lambda: (veronese_chart(2, 3, "veronese-2-3"), None),
    "veronese-2-4": lambda: (veronese_chart(2, 4, "veronese-2-4"), None),
    "veronese-3-3": lambda: (veronese_chart(3, 3, "veronese-3-3"), None),
    "flat-conic": lambda: (veronese_chart(2, 2, "flat-conic"), None),
    "flat-linear": lambda: (linear_chart(3, "flat-linear"), None),
    "veronese3-of-conic": lambda: (
        compose_veronese3(veronese_chart(2, 2), "veronese3-of-conic"),
        None,
    ),
    "nonisotropic-cubic": lambda: (
        veronese_chart(2, 3, "nonisotropic-cubic"),
        OmegaForm.from_entries(4, 1, [(0, 1, (Q(1),))]),
    ),
}


def builtin_names():
    return sorted(_BUILTIN_BUILDERS)


def builtin_chart(name):
    """Catalog entry: (chart, explicit form or None when derived)."""
    try:
        builder = _BUILTIN_BUILDERS[name]
    except KeyError:
        raise KeyError(f"unknown builtin {name!r}; known: {', '.join(builtin_names())}")
    return builder()


def chart_from_json(data) -> VarietyChart:
    """Chart from {label, variables, coordinates, recovery?}."""
    label = data["label"]
    variables = list(data["variables"])
    coords = [parse_poly(text, variables) for text in data["coordinates"]]
    recovery = None
    if "recovery" in data:
        raw = data["recovery"]
        recovery = DirectionRecovery(
            int(raw["constantIndex"]), tuple(int(i) for i in raw["parameterIndices"])
        )
    return make_chart(label, coords, recovery)


def omega_from_json(dim_w, data) -> OmegaForm:
    """Form from {dimU, entries: [{i, j, uVector}]}."""
    dim_u = int(data["dimU"])
    entries = []
    for entry in data.get("entries", []):
        vec = [_scalar_from_json(x) for x in entry["uVector"]]
        entries.append((int(entry["i"]), int(entry["j"]), vec))
    return OmegaForm.from_entries(dim_w, dim_u, entries)


def _scalar_from_json(x):
    if isinstance(x, str):
        from .scalars import parse_rational

        return parse_rational(x)
    if isinstance(x, int):
        return Q(x)
    raise ValueError(f"rational expected, got {x!r}")

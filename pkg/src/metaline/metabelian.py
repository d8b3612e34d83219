"""Two-step nilpotent groups built from a vector-valued antisymmetric form.

The form maps pairs of vectors in a space W into a second space U; the
group lives on W + U in logarithmic coordinates with product

    (w, u) * (w', u') = (w + w', u + u' + (1/2) * form(w, w')).

The commutator subgroup sits inside U, which is central, and the
exponential map is the identity on coordinates.  All operations are
generic over the coordinate ring, so the same code path runs on
rationals, first-order jets, and polynomials (used for the symbolic
identity proofs below).
"""

from __future__ import annotations

from dataclasses import dataclass

from .jets import Jet1
from .linalg import pair_count, pair_index
from .polynomials import Poly
from .scalars import HALF, Q, ZERO


class OmegaForm:
    """Antisymmetric bilinear form on W with values in U.

    Stored as one U-vector per unordered index pair (i < j, lex order).
    """

    __slots__ = ("dim_w", "dim_u", "table")

    def __init__(self, dim_w, dim_u, table):
        self.dim_w = int(dim_w)
        self.dim_u = int(dim_u)
        table = tuple(tuple(Q(x) for x in row) for row in table)
        if len(table) != pair_count(self.dim_w):
            raise ValueError("table must cover every index pair i < j")
        if any(len(row) != self.dim_u for row in table):
            raise ValueError("table entries must have length dim_u")
        self.table = table

    @classmethod
    def zero(cls, dim_w, dim_u=0):
        return cls(dim_w, dim_u, [[ZERO] * dim_u for _ in range(pair_count(dim_w))])

    @classmethod
    def heisenberg(cls):
        return cls.from_entries(2, 1, [(0, 1, (Q(1),))])

    @classmethod
    def from_entries(cls, dim_w, dim_u, entries):
        """Build from sparse entries [(i, j, u_vector), ...] with i < j."""
        table = [[ZERO] * dim_u for _ in range(pair_count(dim_w))]
        for i, j, vec in entries:
            if not 0 <= i < j < dim_w:
                raise ValueError("entry indices must satisfy 0 <= i < j < dim_w")
            table[pair_index(i, j, dim_w)] = [Q(x) for x in vec]
        return cls(dim_w, dim_u, table)

    def value(self, i, j):
        """Form on basis vectors e_i, e_j."""
        if i == j:
            return (ZERO,) * self.dim_u
        if i < j:
            return self.table[pair_index(i, j, self.dim_w)]
        return tuple(-x for x in self.table[pair_index(j, i, self.dim_w)])

    def apply(self, u, v):
        """Form on coordinate vectors; generic over the coordinate ring."""
        u = list(u)
        v = list(v)
        if len(u) != self.dim_w or len(v) != self.dim_w:
            raise ValueError("vectors must have length dim_w")
        out = [ZERO] * self.dim_u
        k = 0
        for i in range(self.dim_w):
            ui, vi = u[i], v[i]
            for j in range(i + 1, self.dim_w):
                minor = ui * v[j] - u[j] * vi
                row = self.table[k]
                k += 1
                for c in range(self.dim_u):
                    coeff = row[c]
                    if coeff != 0:
                        out[c] = out[c] + minor * coeff
        return out

    def is_zero(self):
        return all(x == 0 for row in self.table for x in row)

    def __eq__(self, other):
        return (
            isinstance(other, OmegaForm)
            and (self.dim_w, self.dim_u) == (other.dim_w, other.dim_u)
            and self.table == other.table
        )

    def __hash__(self):
        return hash((self.dim_w, self.dim_u, self.table))


@dataclass(frozen=True)
class GroupElement:
    """Group (equivalently, algebra) element in logarithmic coordinates."""

    w_part: tuple
    u_part: tuple

    @property
    def coords(self):
        return self.w_part + self.u_part


def identity_element(omega: OmegaForm) -> GroupElement:
    return GroupElement((ZERO,) * omega.dim_w, (ZERO,) * omega.dim_u)


def element(omega: OmegaForm, w, u=None) -> GroupElement:
    w = tuple(Q(x) for x in w)
    u = tuple(Q(x) for x in u) if u is not None else (ZERO,) * omega.dim_u
    if len(w) != omega.dim_w or len(u) != omega.dim_u:
        raise ValueError("coordinate arity mismatch")
    return GroupElement(w, u)


def from_coords(omega: OmegaForm, coords) -> GroupElement:
    coords = tuple(coords)
    return element(omega, coords[: omega.dim_w], coords[omega.dim_w :])


def multiply(omega: OmegaForm, a: GroupElement, b: GroupElement) -> GroupElement:
    correction = omega.apply(a.w_part, b.w_part)
    w = tuple(x + y for x, y in zip(a.w_part, b.w_part))
    u = tuple(x + y + HALF * c for x, y, c in zip(a.u_part, b.u_part, correction))
    return GroupElement(w, u)


def inverse(a: GroupElement) -> GroupElement:
    return GroupElement(tuple(-x for x in a.w_part), tuple(-x for x in a.u_part))


def bracket(omega: OmegaForm, a: GroupElement, b: GroupElement) -> GroupElement:
    """Lie bracket in log coordinates: W-part zero, U-part the form value."""
    u = omega.apply(a.w_part, b.w_part)
    return GroupElement((ZERO,) * omega.dim_w, tuple(u))


def exp_w(omega: OmegaForm, w) -> GroupElement:
    """Exponential of a W-direction (log coordinates, so just embedding)."""
    return element(omega, w)


class InternalConsistencyError(AssertionError):
    pass


def maurer_cartan_log_derivative(omega: OmegaForm, x: GroupElement, v) -> GroupElement:
    """Log-derivative at x of left translation applied to a W-direction v.

    Computed in closed form and re-derived by jet differentiation of
    t -> x * (t v, 0); the two must agree exactly.
    """
    v = tuple(Q(c) for c in v)
    if len(v) != omega.dim_w:
        raise ValueError("direction must lie in W")
    half_corr = omega.apply(x.w_part, v)
    closed = GroupElement(v, tuple(HALF * c for c in half_corr))

    jet_x = GroupElement(
        tuple(Jet1.const(c, 1) for c in x.w_part),
        tuple(Jet1.const(c, 1) for c in x.u_part),
    )
    jet_arg = GroupElement(
        tuple(Jet1(ZERO, (c,)) for c in v),
        tuple(Jet1.const(0, 1) for _ in range(omega.dim_u)),
    )
    moved = multiply(omega, jet_x, jet_arg)
    jet_w = tuple(c.eps[0] for c in moved.w_part)
    jet_u = tuple(c.eps[0] for c in moved.u_part)
    if jet_w != closed.w_part or jet_u != closed.u_part:
        raise InternalConsistencyError("closed form and jet derivative disagree")
    return closed


def _invariant_field(omega: OmegaForm, direction):
    """Left-invariant vector field of a W-direction, as polynomial coefficients."""
    n = omega.dim_w + omega.dim_u
    z_w = [Poly.var(i, n) for i in range(omega.dim_w)]
    const_dir = [Poly.const(c, n) for c in direction]
    corr = omega.apply(z_w, const_dir)
    coeffs = [Poly.const(c, n) for c in direction]
    coeffs.extend(HALF * c for c in corr)
    return coeffs


def levi_tensor(omega: OmegaForm, x: GroupElement, u, v):
    """U-component of the bracket of the left-invariant extensions of u, v.

    The bracket is computed on polynomial vector fields by
    differentiating coefficients, then evaluated at the basepoint x.
    """
    u = tuple(u)
    v = tuple(v)
    n = omega.dim_w + omega.dim_u
    fu = _invariant_field(omega, u)
    fv = _invariant_field(omega, v)
    point = x.coords
    values = []
    for c in range(n):
        total = Poly.zero(n)
        for a in range(n):
            if not fu[a].is_zero():
                da = fv[c].diff(a)
                if not da.is_zero():
                    total = total + fu[a] * da
            if not fv[a].is_zero():
                da = fu[c].diff(a)
                if not da.is_zero():
                    total = total - fv[a] * da
        values.append(total.evaluate(point))
    if any(x != 0 for x in values[: omega.dim_w]):
        raise InternalConsistencyError("field bracket left the center")
    return tuple(values[omega.dim_w :])


def _symbolic_element(omega: OmegaForm, nvars, offset):
    w = tuple(Poly.var(offset + i, nvars) for i in range(omega.dim_w))
    u = tuple(Poly.var(offset + omega.dim_w + c, nvars) for c in range(omega.dim_u))
    return GroupElement(w, u)


def associativity_holds(omega: OmegaForm) -> bool:
    """Prove (a b) c == a (b c) as a polynomial identity."""
    n = omega.dim_w + omega.dim_u
    a = _symbolic_element(omega, 3 * n, 0)
    b = _symbolic_element(omega, 3 * n, n)
    c = _symbolic_element(omega, 3 * n, 2 * n)
    return multiply(omega, multiply(omega, a, b), c) == multiply(omega, a, multiply(omega, b, c))


def commutator_matches_bracket(omega: OmegaForm) -> bool:
    """Prove a b a^-1 b^-1 == exp(bracket) symbolically for W-directions."""
    m = omega.dim_w
    a = GroupElement(
        tuple(Poly.var(i, 2 * m) for i in range(m)),
        tuple(Poly.zero(2 * m) for _ in range(omega.dim_u)),
    )
    b = GroupElement(
        tuple(Poly.var(m + i, 2 * m) for i in range(m)),
        tuple(Poly.zero(2 * m) for _ in range(omega.dim_u)),
    )
    left = multiply(omega, multiply(omega, multiply(omega, a, b), inverse(a)), inverse(b))
    expected = GroupElement(
        tuple(Poly.zero(2 * m) for _ in range(m)),
        tuple(omega.apply(a.w_part, b.w_part)),
    )
    return left == expected


def one_parameter_subgroup_holds(omega: OmegaForm) -> bool:
    """Prove (s w, 0) (t w, 0) == ((s+t) w, 0) symbolically in s, t and w."""
    m = omega.dim_w
    nvars = m + 2
    s = Poly.var(m, nvars)
    t = Poly.var(m + 1, nvars)
    w = [Poly.var(i, nvars) for i in range(m)]
    zeros_u = tuple(Poly.zero(nvars) for _ in range(omega.dim_u))
    a = GroupElement(tuple(s * wi for wi in w), zeros_u)
    b = GroupElement(tuple(t * wi for wi in w), zeros_u)
    product = multiply(omega, a, b)
    expected = GroupElement(tuple((s + t) * wi for wi in w), zeros_u)
    return product == expected

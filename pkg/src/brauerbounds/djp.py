"""Degree-d integrality obstruction: stack the per-degree conditions
"p_i(c_0, c_1, ..., c_i) is an integral class" for i = 1..min(d, g) into one
rational system over the Hodge coefficients a_j, and solve it exactly into an
affine lattice.  An empty lattice certifies that the index cannot divide d.
"""

from __future__ import annotations

from fractions import Fraction

from .exterior import MultiVector, gbinom
from .linalg import AffineLattice, solve_integrality
from .model import BrauerClassSpec, HodgeCoordinates, p_poly


def column_classes(spec: BrauerClassSpec, d: int, i: int) -> list[MultiVector]:
    """Coefficient class of a_j in p_i, for j = 1..m: C(d-j, i-j) B^(i-j) theta^j/j!."""
    ctx = spec.ctx
    m = min(d, ctx.g)
    out = []
    for j in range(1, m + 1):
        coef = gbinom(d - j, i - j) if j <= i else 0
        if coef:
            out.append(spec.B_power(i - j).wedge(ctx.theta_power_integral(j)).scale(coef))
        else:
            out.append(ctx.zero())
    return out


def build_system(spec: BrauerClassSpec, d: int, c0: int = 1):
    """Stacked rational system (P, w): rows are the colex coordinates of all
    degrees i = 1..m; column j carries the a_j coefficient class, w the
    C(d,i) B^i c0 term.  The same a_j appears in every block, which is what
    propagates constraints across degrees."""
    if d < 1:
        raise ValueError("degree must be positive")
    ctx = spec.ctx
    m = min(d, ctx.g)
    P: list[list[Fraction]] = []
    w: list[Fraction] = []
    for i in range(1, m + 1):
        cols = [cls.coordinates(2 * i) for cls in column_classes(spec, d, i)]
        const = spec.B_power(i).scale(Fraction(gbinom(d, i)) * c0).coordinates(2 * i)
        for r in range(ctx.rank(2 * i)):
            P.append([cols[j][r] for j in range(m)])
            w.append(const[r])
    return P, w


def djp_solution_family(spec: BrauerClassSpec, d: int, c0: int = 1) -> AffineLattice | None:
    """Exact set of Hodge coefficient vectors making every p_i integral; None if empty."""
    P, w = build_system(spec, d, c0)
    return solve_integrality(P, w)


def djp_obstructed(spec: BrauerClassSpec, d: int, c0: int = 1) -> bool:
    """True exactly when the solution family is empty, so ind does not divide d."""
    return djp_solution_family(spec, d, c0) is None


class ChernResidueMaps:
    """The integral classes C_i as affine functions of the lattice parameters u.

    C_i(u) = base[i] + sum_k u_k * deltas[k][i]; base and deltas are integral
    classes (differences of two family members), which is asserted at build
    time and is what makes mod-p residues a function of u mod p.
    """

    def __init__(self, spec: BrauerClassSpec, d: int, family: AffineLattice, c0: int = 1):
        ctx = spec.ctx
        m = min(d, ctx.g)
        self.spec = spec
        self.d = d
        self.m = m
        self.c0 = c0
        base_coords = HodgeCoordinates(d, tuple(family.offset), c0)
        self.base = [ctx.scalar(c0)] + [p_poly(spec, d, i, base_coords) for i in range(1, m + 1)]
        self.deltas = []
        for col in family.basis:
            delta_coords = HodgeCoordinates(d, tuple(col), 0)
            delta = [ctx.zero()] + [
                p_poly(spec, d, i, delta_coords) for i in range(1, m + 1)
            ]
            self.deltas.append(delta)
        for cls in self.base:
            if not cls.is_integral():
                raise AssertionError("family offset does not give integral classes")
        for delta in self.deltas:
            for cls in delta:
                if not cls.is_integral():
                    raise AssertionError("lattice direction moves C_i non-integrally")

    @property
    def t(self) -> int:
        return len(self.deltas)

    def value(self, u) -> list[MultiVector]:
        """All classes C_0..C_m at integer parameters u."""
        out = list(self.base)
        for c, delta in zip(u, self.deltas):
            if c:
                out = [a + int(c) * b for a, b in zip(out, delta)]
        return out

    def residue(self, u, p: int) -> list[MultiVector]:
        return [cls.reduce_mod(p) for cls in self.value(u)]

    def coordinate_maps(self):
        """Stacked integer (value, matrix) affine maps per degree i = 1..m."""
        maps = []
        for i in range(1, self.m + 1):
            value = [int(c) for c in self.base[i].coordinates(2 * i)]
            matrix_cols = [
                [int(c) for c in delta[i].coordinates(2 * i)] for delta in self.deltas
            ]
            matrix = [
                [matrix_cols[k][r] for k in range(self.t)] for r in range(len(value))
            ]
            maps.append((value, matrix))
        return maps

"""Arithmetic model of a B-field class on a very general principally
polarized abelian g-fold: normalized two-form data, Hodge coordinates against
the integral generators theta^j/j!, the per-degree integrality polynomials,
symbol length, primary decomposition and canonical orbit representatives.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from fractions import Fraction

from .exterior import AlgebraContext, MultiVector, gbinom


def _modinv(a: int, m: int) -> int:
    g, x, _ = _egcd(a % m, m)
    if g != 1:
        raise ValueError(f"{a} not invertible mod {m}")
    return x % m


def _egcd(a, b):
    if a == 0:
        return b, 0, 1
    g, x, y = _egcd(b % a, a)
    return g, y - (b // a) * x, x


class BrauerClassSpec:
    """A topologically trivial class given by an integral two-form b and a
    period candidate n; the rational B-field is b/n.

    The stored data is normalized: b is reduced mod n, the common content is
    divided out, and n shrinks to the actual period n/gcd(n, content).
    """

    def __init__(self, ctx: AlgebraContext, b: MultiVector, n: int):
        if not isinstance(n, int) or n < 1:
            raise ValueError("period candidate must be a positive integer")
        if not b.is_integral():
            raise ValueError("b must be an integral two-form")
        if not b.is_homogeneous(2):
            raise ValueError("b must be homogeneous of degree 2")
        coords = [int(c) % n for c in b.coordinates(2)]
        content = math.gcd(n, *coords) if coords else n
        period = n // content
        if period > 1:
            coords = [(c // content) % period for c in coords]
        else:
            coords = [0] * len(coords)
        self.ctx = ctx
        self.period = period
        self.b = ctx.from_coordinates(2, coords)
        self.B = self.b.scale(Fraction(1, period))
        self._b_powers: dict[int, MultiVector] = {0: ctx.one(), 1: self.b}
        self._B_powers: dict[int, MultiVector] = {0: ctx.one(), 1: self.B}

    @property
    def g(self) -> int:
        return self.ctx.g

    def coordinates(self) -> tuple[int, ...]:
        return tuple(int(c) for c in self.b.coordinates(2))

    def b_power(self, e: int) -> MultiVector:
        if e not in self._b_powers:
            self._b_powers[e] = self.b_power(e - 1).wedge(self.b)
        return self._b_powers[e]

    def B_power(self, e: int) -> MultiVector:
        if e not in self._B_powers:
            self._B_powers[e] = self.b_power(e).scale(Fraction(1, self.period**e))
        return self._B_powers[e]

    def negated(self) -> "BrauerClassSpec":
        """The inverse class, B-field -b/n."""
        coords = [(-c) % self.period for c in self.coordinates()] if self.period > 1 else [0] * len(self.coordinates())
        return BrauerClassSpec(self.ctx, self.ctx.from_coordinates(2, coords), self.period)

    def __eq__(self, other):
        return (
            isinstance(other, BrauerClassSpec)
            and self.g == other.g
            and self.period == other.period
            and self.b == other.b
        )

    def __repr__(self):
        return f"BrauerClassSpec(g={self.g}, period={self.period}, b={self.b!r})"


@dataclass(frozen=True)
class HodgeCoordinates:
    """Coefficients a_j of the Hodge classes c_j = a_j * theta^j/j! tested in
    degree d, together with the degree-zero class c0."""

    d: int
    a: tuple[Fraction, ...]
    c0: int = 1

    @property
    def m(self) -> int:
        return len(self.a)

    @staticmethod
    def zero(spec: BrauerClassSpec, d: int, c0: int = 1) -> "HodgeCoordinates":
        m = min(d, spec.g)
        return HodgeCoordinates(d, tuple(Fraction(0) for _ in range(m)), c0)


def p_poly(spec: BrauerClassSpec, d: int, i: int, coords: HodgeCoordinates) -> MultiVector:
    """C(d,i) B^i c0 + sum_j C(d-j, i-j) B^(i-j) a_j theta^j/j!, in degree 2i."""
    ctx = spec.ctx
    if i > ctx.g:
        warnings.warn(f"degree 2*{i} exceeds the top cohomology; class is zero")
        return ctx.zero()
    out = spec.B_power(i).scale(Fraction(gbinom(d, i)) * coords.c0)
    for j in range(1, min(i, coords.m) + 1):
        a_j = coords.a[j - 1]
        if not a_j:
            continue
        coef = gbinom(d - j, i - j)
        if not coef:
            continue
        out = out + spec.B_power(i - j).wedge(ctx.theta_power_integral(j)).scale(a_j * coef)
    return out


def p_poly_linear(spec: BrauerClassSpec, d: int, i: int, a_vector) -> MultiVector:
    """The a-linear part of p_poly: sum_j C(d-j, i-j) B^(i-j) a_j theta^j/j!."""
    ctx = spec.ctx
    if i > ctx.g:
        return ctx.zero()
    out = ctx.zero()
    for j, a_j in enumerate(a_vector, start=1):
        a_j = Fraction(a_j)
        if not a_j or j > i:
            continue
        coef = gbinom(d - j, i - j)
        if not coef:
            continue
        out = out + spec.B_power(i - j).wedge(ctx.theta_power_integral(j)).scale(a_j * coef)
    return out


# ---------------------------------------------------------------------------
# symbol length via the alternating canonical form over Z/p^r
# ---------------------------------------------------------------------------

def _alternating_matrix(spec: BrauerClassSpec, modulus: int):
    """Coefficient matrix M with M[i][j] = coefficient of e_(i+1)^e_(j+1), i<j."""
    ctx = spec.ctx
    n = ctx.n_generators
    M = [[0] * n for _ in range(n)]
    for mask, c in spec.b.coeffs.items():
        bits = [i for i in range(n) if mask >> i & 1]
        i, j = bits
        M[i][j] = int(c) % modulus
        M[j][i] = (-int(c)) % modulus
    return M


def _vp(x: int, p: int) -> int:
    v = 0
    while x % p == 0:
        x //= p
        v += 1
    return v


def _plane_scales(M, p: int, r: int) -> list[int]:
    """Scales of the hyperbolic planes of an alternating matrix over Z/p^r.

    Symplectic elimination: pick the entry of minimal p-valuation, use its
    index pair as a plane, clear every other row/column against it by exact
    unit division, repeat on the remaining indices.
    """
    mod = p**r
    n = len(M)
    M = [[x % mod for x in row] for row in M]
    active = list(range(n))
    scales = []
    while True:
        best = None
        for ai in range(len(active)):
            for aj in range(ai + 1, len(active)):
                i, j = active[ai], active[aj]
                x = M[i][j] % mod
                if x:
                    v = _vp(x, p)
                    if best is None or v < best[0]:
                        best = (v, i, j)
        if best is None:
            break
        v, i, j = best
        m_piv = M[i][j] % mod
        unit = m_piv // p**v
        inv_unit = _modinv(unit, mod)
        for k in active:
            if k in (i, j):
                continue
            # e_k <- e_k + alpha e_i + beta e_j kills both M[i][k] and M[j][k]
            alpha = (M[j][k] // p**v * inv_unit) % mod
            beta = (-(M[i][k] // p**v) * inv_unit) % mod
            if alpha or beta:
                for l in range(n):
                    M[k][l] = (M[k][l] + alpha * M[i][l] + beta * M[j][l]) % mod
                for l in range(n):
                    M[l][k] = (M[l][k] + alpha * M[l][i] + beta * M[l][j]) % mod
                M[k][k] = 0
        scales.append(m_piv)
        active = [k for k in active if k not in (i, j)]
    return scales


def symbol_length(spec: BrauerClassSpec) -> int:
    """Minimal number of rank-2 summands u^v expressing b mod n.

    Computed per prime-power component of the period as the number of
    hyperbolic planes of the alternating coefficient matrix whose scale is
    nonzero in Z/p^r; the overall length is the maximum over components.
    """
    n = spec.period
    if n == 1:
        return 0
    length = 0
    for p, r in _factorize(n).items():
        scales = _plane_scales(_alternating_matrix(spec, p**r), p, r)
        length = max(length, sum(1 for s in scales if s % p**r))
    return length


def _factorize(n: int) -> dict[int, int]:
    out = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def primary_decomposition(spec: BrauerClassSpec) -> list[BrauerClassSpec]:
    """Component specs (b_q, q) per maximal prime power q | n, recombining to b.

    The component B-field is t*b/q with t the inverse of n/q mod q, so that
    sum_q (n/q) * b_q = b (mod n).
    """
    n = spec.period
    if n == 1:
        return [spec]
    coords = spec.coordinates()
    out = []
    for p, r in sorted(_factorize(n).items()):
        q = p**r
        t = _modinv(n // q, q)
        comp = [(t * c) % q for c in coords]
        out.append(BrauerClassSpec(spec.ctx, spec.ctx.from_coordinates(2, comp), q))
    return out


# ---------------------------------------------------------------------------
# orbit representatives and Hamming weight
# ---------------------------------------------------------------------------

def canonical_coordinates(ctx: AlgebraContext, coords, n: int) -> tuple[int, ...]:
    """Lexicographically least vector among {coords + k*theta mod n}.

    The first colexicographic two-form basis element is x1^y1, a theta term
    with unit coefficient, so exactly one shift zeroes the first coordinate
    and that member is the lexicographic minimum.
    """
    coords = tuple(int(c) % n for c in coords)
    theta_coords = tuple(int(c) for c in ctx.theta().coordinates(2))
    best = None
    for k in range(n):
        cand = tuple((c + k * t) % n for c, t in zip(coords, theta_coords))
        if best is None or cand < best:
            best = cand
    return best


def canonical_representative(spec: BrauerClassSpec) -> BrauerClassSpec:
    coords = canonical_coordinates(spec.ctx, spec.coordinates(), spec.period)
    return BrauerClassSpec(spec.ctx, spec.ctx.from_coordinates(2, coords), spec.period)


def hamming_weight_coords(coords) -> int:
    return sum(1 for c in coords if c)


def hamming_weight(spec: BrauerClassSpec) -> int:
    """Number of nonzero coordinates of b mod n in the colex wedge basis."""
    return hamming_weight_coords(spec.coordinates())

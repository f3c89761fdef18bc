"""Exact exterior algebra on the 2g generators x_1, y_1, ..., x_g, y_g.

Models the even/odd cohomology ring of a complex torus of dimension g:
degree-k classes are integer or rational combinations of wedge products of
k distinct generators.  Basis blades are bit-sets over the generator index
set {1, ..., 2g} (generator 2k-1 is x_k, generator 2k is y_k), listed in
colexicographic order inside each degree.  Coefficients are exact rationals
throughout; there is no floating point anywhere in this package.
"""

from __future__ import annotations

import math
from fractions import Fraction
from itertools import combinations


def merge_sign(a: int, b: int) -> int:
    """Sign of sorting the concatenation blade(a).blade(b), for disjoint bit-sets."""
    inversions = 0
    t = b
    while t:
        low = t & -t
        inversions += (a >> low.bit_length()).bit_count()
        t ^= low
    return -1 if inversions & 1 else 1


def gbinom(n: int, k: int) -> int:
    """Generalized binomial n*(n-1)*...*(n-k+1)/k!, defined for any integer n, k >= 0.

    Zero when k < 0, so expressions like gbinom(d - j, i - j) vanish for j > i.
    """
    if k < 0:
        return 0
    num = 1
    for s in range(k):
        num *= n - s
    return num // math.factorial(k)


class AlgebraContext:
    """Fixed-dimension algebra: blade tables, ranks and the polarization class."""

    def __init__(self, g: int):
        if not isinstance(g, int) or g < 1:
            raise ValueError(f"dimension g must be a positive integer, got {g!r}")
        self.g = g
        self.n_generators = 2 * g
        self._blades: dict[int, tuple[int, ...]] = {}
        self._blade_index: dict[int, dict[int, int]] = {}
        # Pascal rows up to 2g; larger binomials go through gbinom.
        self.binomial_table = [
            [math.comb(n, k) for k in range(n + 1)] for n in range(2 * g + 1)
        ]
        self._sign_table: dict[tuple[int, int], int] = {}

    def blades(self, k: int) -> tuple[int, ...]:
        """All degree-k basis blades as bit-masks, in colexicographic order."""
        if k < 0 or k > self.n_generators:
            return ()
        if k not in self._blades:
            combos = sorted(
                combinations(range(self.n_generators), k), key=lambda c: c[::-1]
            )
            self._blades[k] = tuple(sum(1 << i for i in c) for c in combos)
        return self._blades[k]

    def blade_position(self, k: int) -> dict[int, int]:
        if k not in self._blade_index:
            self._blade_index[k] = {m: i for i, m in enumerate(self.blades(k))}
        return self._blade_index[k]

    def rank(self, k: int) -> int:
        """Dimension of the degree-k component, C(2g, k)."""
        if k < 0 or k > self.n_generators:
            return 0
        return self.binomial_table[self.n_generators][k]

    def sign(self, a: int, b: int) -> int:
        key = (a, b)
        s = self._sign_table.get(key)
        if s is None:
            s = merge_sign(a, b)
            self._sign_table[key] = s
        return s

    # --- constructors -------------------------------------------------

    def zero(self) -> "MultiVector":
        return MultiVector(self, {})

    def scalar(self, c) -> "MultiVector":
        c = Fraction(c)
        return MultiVector(self, {0: c} if c else {})

    def one(self) -> "MultiVector":
        return self.scalar(1)

    def generator(self, idx: int) -> "MultiVector":
        """The basis 1-form with generator index idx in 1..2g."""
        if not 1 <= idx <= self.n_generators:
            raise ValueError(f"generator index {idx} out of range 1..{self.n_generators}")
        return MultiVector(self, {1 << (idx - 1): Fraction(1)})

    def x(self, i: int) -> "MultiVector":
        return self.generator(2 * i - 1)

    def y(self, i: int) -> "MultiVector":
        return self.generator(2 * i)

    def omega(self, i: int) -> "MultiVector":
        """x_i ^ y_i."""
        return self.x(i) * self.y(i)

    def theta(self) -> "MultiVector":
        """The principal polarization x_1^y_1 + ... + x_g^y_g."""
        coeffs = {}
        for i in range(1, self.g + 1):
            mask = (1 << (2 * i - 2)) | (1 << (2 * i - 1))
            coeffs[mask] = Fraction(1)
        return MultiVector(self, coeffs)

    def theta_power_integral(self, k: int) -> "MultiVector":
        """theta^k / k!, the integral generator in degree 2k; zero for k > g."""
        if k < 0:
            raise ValueError("power must be nonnegative")
        if k > self.g:
            return self.zero()
        coeffs = {}
        for subset in combinations(range(1, self.g + 1), k):
            mask = 0
            for i in subset:
                mask |= (1 << (2 * i - 2)) | (1 << (2 * i - 1))
            coeffs[mask] = Fraction(1)
        return MultiVector(self, coeffs)

    def from_coordinates(self, k: int, coords) -> "MultiVector":
        """Build a degree-k class from its colexicographic coordinate vector."""
        blades = self.blades(k)
        if len(coords) != len(blades):
            raise ValueError(
                f"expected {len(blades)} coordinates in degree {k}, got {len(coords)}"
            )
        coeffs = {}
        for mask, c in zip(blades, coords):
            c = Fraction(c)
            if c:
                coeffs[mask] = c
        return MultiVector(self, coeffs)

    def generator_name(self, idx: int) -> str:
        """Name of generator idx in 1..2g: odd -> x_k, even -> y_k."""
        k, r = divmod(idx + 1, 2)
        return f"x{k}" if r == 0 else f"y{k}"

    def __repr__(self):
        return f"AlgebraContext(g={self.g})"


class MultiVector:
    """Graded element with sparse exact-rational coefficients, immutable by convention."""

    __slots__ = ("ctx", "coeffs")

    def __init__(self, ctx: AlgebraContext, coeffs: dict[int, Fraction]):
        self.ctx = ctx
        self.coeffs = {m: c for m, c in coeffs.items() if c}

    def _check_ctx(self, other: "MultiVector"):
        if self.ctx.g != other.ctx.g:
            raise ValueError(
                f"context mismatch: g={self.ctx.g} vs g={other.ctx.g}"
            )

    # --- ring operations ----------------------------------------------

    def __add__(self, other):
        if not isinstance(other, MultiVector):
            return NotImplemented
        self._check_ctx(other)
        out = dict(self.coeffs)
        for m, c in other.coeffs.items():
            s = out.get(m, 0) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return MultiVector(self.ctx, out)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return MultiVector(self.ctx, {m: -c for m, c in self.coeffs.items()})

    def __mul__(self, other):
        if isinstance(other, MultiVector):
            return self.wedge(other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def scale(self, c) -> "MultiVector":
        c = Fraction(c)
        if not c:
            return self.ctx.zero()
        return MultiVector(self.ctx, {m: c * v for m, v in self.coeffs.items()})

    def wedge(self, other: "MultiVector") -> "MultiVector":
        """Exterior product; zero on blades with shared generators."""
        self._check_ctx(other)
        sign = self.ctx.sign
        out: dict[int, Fraction] = {}
        for ma, ca in self.coeffs.items():
            for mb, cb in other.coeffs.items():
                if ma & mb:
                    continue
                m = ma | mb
                s = out.get(m, 0) + sign(ma, mb) * ca * cb
                if s:
                    out[m] = s
                else:
                    out.pop(m, None)
        return MultiVector(self.ctx, out)

    def power(self, e: int) -> "MultiVector":
        """e-fold wedge of a homogeneous even-degree class; power(v, 0) = 1."""
        if e < 0:
            raise ValueError("negative wedge power")
        if e == 0:
            return self.ctx.one()
        degs = self.degrees()
        if len(degs) > 1 or (degs and degs[0] % 2):
            raise ValueError("wedge powers require a homogeneous even-degree class")
        out = self
        for _ in range(e - 1):
            out = out.wedge(self)
        return out

    def __pow__(self, e: int):
        return self.power(e)

    # --- structure ------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.coeffs

    def degrees(self) -> list[int]:
        return sorted({m.bit_count() for m in self.coeffs})

    def component(self, k: int) -> "MultiVector":
        return MultiVector(
            self.ctx, {m: c for m, c in self.coeffs.items() if m.bit_count() == k}
        )

    def is_homogeneous(self, k: int | None = None) -> bool:
        degs = self.degrees()
        if k is None:
            return len(degs) <= 1
        return degs == [] or degs == [k]

    def coordinates(self, k: int) -> list[Fraction]:
        """Colexicographic coordinate vector of the degree-k component."""
        out = [Fraction(0)] * self.ctx.rank(k)
        pos = self.ctx.blade_position(k)
        for m, c in self.coeffs.items():
            if m.bit_count() == k:
                out[pos[m]] = c
        return out

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs.values())

    def reduce_mod(self, p: int) -> "MultiVector":
        """Coefficient-wise reduction of an integral class modulo p."""
        if not self.is_integral():
            raise ValueError("reduce_mod requires an integral class")
        return MultiVector(
            self.ctx,
            {m: Fraction(int(c) % p) for m, c in self.coeffs.items()},
        )

    def content(self) -> int:
        """gcd of the coefficients of an integral class (0 for the zero class)."""
        if not self.is_integral():
            raise ValueError("content requires an integral class")
        return math.gcd(*(abs(int(c)) for c in self.coeffs.values())) if self.coeffs else 0

    def __eq__(self, other):
        if not isinstance(other, MultiVector):
            return NotImplemented
        return self.ctx.g == other.ctx.g and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.ctx.g, tuple(sorted(self.coeffs.items()))))

    def _blade_name(self, mask: int) -> str:
        names = [self.ctx.generator_name(i + 1) for i in range(self.ctx.n_generators) if mask >> i & 1]
        return "^".join(names) if names else "1"

    def __repr__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for m in sorted(self.coeffs, key=lambda m: (m.bit_count(), self.ctx.blade_position(m.bit_count()).get(m, 0))):
            c = self.coeffs[m]
            name = self._blade_name(m)
            if name == "1":
                parts.append(str(c))
            elif c == 1:
                parts.append(name)
            elif c == -1:
                parts.append(f"-{name}")
            else:
                parts.append(f"{c}*{name}")
        return " + ".join(parts).replace("+ -", "- ")


# Module-level aliases matching the operation names used throughout the package.

def wedge(u: MultiVector, v: MultiVector) -> MultiVector:
    return u.wedge(v)


def power(v: MultiVector, e: int) -> MultiVector:
    return v.power(e)


def theta(ctx: AlgebraContext) -> MultiVector:
    return ctx.theta()


def theta_power_integral(ctx: AlgebraContext, k: int) -> MultiVector:
    return ctx.theta_power_integral(k)


def coordinates(v: MultiVector, k: int) -> list[Fraction]:
    return v.coordinates(k)


def is_integral(v: MultiVector) -> bool:
    return v.is_integral()


def reduce_mod(v: MultiVector, p: int) -> MultiVector:
    return v.reduce_mod(p)

"""Cohomology-operation refinement of the integrality obstruction.

On an abelian variety every Steenrod square and odd-prime reduced power
vanishes, while the mod-p reductions of integral classes that come from
Chern classes of a topological K-theory class must satisfy the universal
operation relations.  The refiner therefore sweeps the residues of the
classes C_i over the integrality family and rejects residue tuples that
break some relation; if every residue tuple breaks one, the index cannot
divide the tested degree.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .exterior import AlgebraContext, MultiVector, gbinom
from .djp import ChernResidueMaps, djp_solution_family
from .linalg import AffineLattice, residue_points
from .model import BrauerClassSpec
from .symfunc import to_elementary_basis


# ---------------------------------------------------------------------------
# mod-2 square relations
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SteenrodRelation:
    """Right side of the square relation on C_i raised by 2l:
    sum_k C(i-l+k-1, k) C_(l-k) C_(i+k) mod 2; the left side vanishes here."""

    i: int
    l: int

    @property
    def max_index(self) -> int:
        return self.i + self.l

    def terms(self):
        for k in range(self.l + 1):
            coef = gbinom(self.i - self.l + k - 1, k) % 2
            if coef:
                yield (self.l - k, self.i + k)

    def label(self) -> str:
        return f"Sq^{2 * self.l}(C{self.i})"


def square_relations(g: int) -> list[SteenrodRelation]:
    """All relations with target inside nonzero cohomology: i, l >= 1, i+l <= g."""
    out = []
    for l in range(1, g):
        for i in range(1, g - l + 1):
            out.append(SteenrodRelation(i, l))
    return out


def steenrod_rhs(ctx: AlgebraContext, i: int, l: int, residues) -> MultiVector:
    """Evaluate the relation right side on mod-2 residue classes (C_0 included)."""
    out = ctx.zero()
    for a, b in SteenrodRelation(i, l).terms():
        if a >= len(residues) or b >= len(residues):
            raise KeyError(f"missing residue C_{max(a, b)}")
        out = out + residues[a].wedge(residues[b])
    return out.reduce_mod(2)


# ---------------------------------------------------------------------------
# odd-prime reduced power relations
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ReducedPowerPolynomial:
    """The weighted homogeneous polynomial equal to P^j(C_i) mod p, expressed
    as {multiset of indices: coefficient} over products of C classes."""

    p: int
    i: int
    j: int
    terms: tuple[tuple[tuple[int, ...], int], ...]

    @property
    def weight(self) -> int:
        return self.i + self.j * (self.p - 1)

    @property
    def max_index(self) -> int:
        return max((max(mu) for mu, _ in self.terms), default=0)

    def evaluate(self, ctx: AlgebraContext, residues) -> MultiVector:
        total = ctx.zero()
        for mu, c in self.terms:
            acc = ctx.scalar(c)
            for part in mu:
                acc = acc.wedge(residues[part])
            total = total + acc
        return total.reduce_mod(self.p)

    def label(self) -> str:
        return f"P^{self.j}(C{self.i}) mod {self.p}"


def reduced_power_polynomial(p: int, i: int, j: int) -> ReducedPowerPolynomial:
    """Build P^j(c_i) = Q_(p,i,j)(c_1, ..., c_(i+j(p-1))) by the splitting
    principle: apply t -> t + t^p to the roots of e_i and take the piece of
    weight i + j(p-1), rewritten in the elementary basis mod p."""
    if p < 3 or p % 2 == 0:
        raise ValueError("reduced powers are for odd primes")
    if i < 1 or j < 1:
        raise ValueError("indices must be positive")
    N = i + j * (p - 1)
    poly: dict[tuple[int, ...], int] = {}
    for chosen in combinations(range(N), i):
        for raised in combinations(chosen, j):
            exp = [0] * N
            for a in chosen:
                exp[a] = p if a in raised else 1
            key = tuple(exp)
            poly[key] = poly.get(key, 0) + 1
    terms = to_elementary_basis(poly, N, p)
    for mu in terms:
        if sum(mu) != N:
            raise AssertionError("reduced power polynomial is not weighted homogeneous")
    return ReducedPowerPolynomial(p, i, j, tuple(sorted(terms.items())))


def power_relations(p: int, g: int) -> list[ReducedPowerPolynomial]:
    """All odd-p relations with target degree inside the algebra: i + j(p-1) <= g."""
    out = []
    for j in range(1, g):
        for i in range(1, g - j * (p - 1) + 1):
            if i + j * (p - 1) <= g:
                out.append(reduced_power_polynomial(p, i, j))
    return out


# ---------------------------------------------------------------------------
# the refined verdict
# ---------------------------------------------------------------------------

def refined_obstructed(
    spec: BrauerClassSpec,
    d: int,
    primes=(2,),
    c0: int = 1,
    family: AffineLattice | None = ...,
):
    """True with certificate when no residue tuple of the integrality family
    can be the mod-p Chern classes of a topological K-theory class.

    Residues at distinct primes recombine by CRT over the integer lattice
    parameters, so a single prime whose relations kill every residue tuple
    already certifies the obstruction.
    """
    if c0 != 1:
        raise ValueError("the Chern-class reading requires c0 = 1")
    if family is ...:
        family = djp_solution_family(spec, d, c0)
    if family is None:
        return True, {"verdict": "obstructed", "family": "empty", "primes": {}}
    ctx = spec.ctx
    g = ctx.g
    m = min(d, g)
    maps = ChernResidueMaps(spec, d, family, c0)
    cert: dict = {"family": "nonempty", "primes": {}}
    for p in sorted(set(primes)):
        if p == 2:
            relations = square_relations(g)
        else:
            relations = power_relations(p, g)
        applicable = [rel for rel in relations if rel.max_index <= m]
        skipped = [rel.label() for rel in relations if rel.max_index > m]
        pts = residue_points(family, maps.coordinate_maps(), p)
        violations = []
        survivor = None
        for u, _key in pts:
            residues = maps.residue(u, p)
            violated = None
            for rel in applicable:
                if isinstance(rel, SteenrodRelation):
                    value = steenrod_rhs(ctx, rel.i, rel.l, residues)
                else:
                    value = rel.evaluate(ctx, residues)
                if not value.is_zero():
                    violated = rel
                    break
            if violated is None:
                survivor = list(u)
                break
            indices = (
                [violated.i, violated.l]
                if isinstance(violated, SteenrodRelation)
                else [violated.i, violated.j]
            )
            violations.append(
                {"u": list(u), "relation": violated.label(), "indices": indices}
            )
        entry = {
            "residues_checked": len(violations) + (1 if survivor is not None else 0),
            "skipped_relations": skipped,
        }
        if survivor is None:
            entry["violations"] = violations
            cert["primes"][str(p)] = entry
            cert["verdict"] = "obstructed"
            cert["obstructing_prime"] = p
            return True, cert
        entry["survivor"] = survivor
        cert["primes"][str(p)] = entry
    cert["verdict"] = "unobstructed"
    return False, cert

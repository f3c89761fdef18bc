"""Two-stage Chern-character obstruction, specialized to abelian varieties.

Stage one reuses the integrality solver with the opposite B-field sign and
unknown Hodge classes Q_i.  Stage two demands that the Chern characters of
the resulting candidate classes be integral (on an abelian variety the
character of a topological K-theory class always is): each ch_k(u) is a
polynomial in the lattice parameters u with bounded denominators, so
integrality only depends on u modulo the lcm q of those denominators, and
the finitely many residues are swept exactly.  The sweep is done per prime
power of q (the conditions recombine by CRT) with a hard budget; exceeding
the budget yields the first-class verdict "inconclusive".
"""

from __future__ import annotations

import math
from fractions import Fraction

import numpy as np

from .djp import ChernResidueMaps, djp_solution_family
from .exterior import MultiVector
from .linalg import AffineLattice
from .model import BrauerClassSpec

DEFAULT_BUDGET = 4_000_000
CONSTRUCTION_CAP = 3_000_000
OPS_CAP = 2_000_000_000


# ---------------------------------------------------------------------------
# Newton's identities between Chern classes and character components
# ---------------------------------------------------------------------------

class NewtonTransform:
    """Mutually inverse maps c_1..c_n <-> ch_1..ch_n via power sums.

    Works over any commutative graded ring element type supporting +, * and
    scalar multiplication by Fraction (multivectors, or polynomials in the
    lattice parameters with multivector coefficients).
    """

    def __init__(self, degree_bound: int):
        self.degree_bound = degree_bound

    def ch_from_c(self, cs, one):
        """[ch_1..ch_n] from [c_1..c_n]; ch_k = p_k / k! by Newton's identity."""
        n = len(cs)
        e = [one] + list(cs)
        p: list = [None] * (n + 1)
        for k in range(1, n + 1):
            acc = e[k] * Fraction((-1) ** (k - 1) * k)
            for r in range(1, k):
                acc = acc + e[r] * p[k - r] * Fraction((-1) ** (r - 1))
            p[k] = acc
        return [p[k] * Fraction(1, math.factorial(k)) for k in range(1, n + 1)]

    def c_from_ch(self, chs, one):
        """[c_1..c_n] from [ch_1..ch_n]; k e_k = sum (-1)^(r-1) e_(k-r) p_r."""
        n = len(chs)
        p = [None] + [chs[k - 1] * Fraction(math.factorial(k)) for k in range(1, n + 1)]
        e = [one]
        for k in range(1, n + 1):
            acc = None
            for r in range(1, k + 1):
                term = e[k - r] * p[r] * Fraction((-1) ** (r - 1))
                acc = term if acc is None else acc + term
            e.append(acc * Fraction(1, k))
        return e[1:]


# ---------------------------------------------------------------------------
# polynomials in the lattice parameters with multivector coefficients
# ---------------------------------------------------------------------------

class ParamPoly:
    """Sparse polynomial over integer parameters u_1..u_t whose coefficients
    are multivectors; supports the ring operations NewtonTransform needs."""

    __slots__ = ("t", "coeffs")

    def __init__(self, t: int, coeffs: dict[tuple[int, ...], MultiVector]):
        self.t = t
        self.coeffs = {e: v for e, v in coeffs.items() if not v.is_zero()}

    @staticmethod
    def constant(t: int, value: MultiVector) -> "ParamPoly":
        return ParamPoly(t, {(0,) * t: value})

    @staticmethod
    def affine(t: int, base: MultiVector, deltas) -> "ParamPoly":
        coeffs = {(0,) * t: base}
        for k, delta in enumerate(deltas):
            exp = tuple(int(i == k) for i in range(t))
            coeffs[exp] = delta
        return ParamPoly(t, coeffs)

    def __add__(self, other: "ParamPoly") -> "ParamPoly":
        out = dict(self.coeffs)
        for e, v in other.coeffs.items():
            out[e] = out[e] + v if e in out else v
        return ParamPoly(self.t, out)

    def __mul__(self, other):
        if isinstance(other, ParamPoly):
            out: dict[tuple[int, ...], MultiVector] = {}
            for ea, va in self.coeffs.items():
                for eb, vb in other.coeffs.items():
                    prod = va.wedge(vb)
                    if prod.is_zero():
                        continue
                    e = tuple(x + y for x, y in zip(ea, eb))
                    out[e] = out[e] + prod if e in out else prod
            return ParamPoly(self.t, out)
        return ParamPoly(self.t, {e: v.scale(other) for e, v in self.coeffs.items()})

    def evaluate(self, u) -> MultiVector:
        total = None
        for e, v in self.coeffs.items():
            c = Fraction(1)
            for exp, val in zip(e, u):
                c *= Fraction(val) ** exp
            term = v.scale(c)
            total = term if total is None else total + term
        return total

    def monomial_count(self) -> int:
        return len(self.coeffs)


# ---------------------------------------------------------------------------
# the two stages
# ---------------------------------------------------------------------------

def hotchkiss_first_stage(spec: BrauerClassSpec, d: int) -> AffineLattice | None:
    """Hodge classes Q making every c_k(v) = p_k(-B; Q) integral; None if empty."""
    return djp_solution_family(spec.negated(), d)


def _prime_factors(n: int):
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


def _vp(n: int, p: int) -> int:
    v = 0
    while n % p == 0 and n > 0:
        n //= p
        v += 1
    return v


def hotchkiss_second_stage(
    spec: BrauerClassSpec,
    d: int,
    family: AffineLattice,
    budget: int = DEFAULT_BUDGET,
):
    """Sweep ch_k(u) integrality over the finite residue space.

    Returns (verdict, certificate) with verdict one of "obstructed",
    "unobstructed", "inconclusive".
    """
    if family is None:
        raise ValueError("second stage needs a nonempty first-stage family")
    neg = spec.negated()
    ctx = spec.ctx
    m = min(d, ctx.g)
    maps = ChernResidueMaps(neg, d, family)
    t = maps.t

    est = sum(math.comb(t + k, k) * ctx.rank(2 * k) for k in range(1, m + 1))
    if est > CONSTRUCTION_CAP:
        return "inconclusive", {
            "reason": "construction estimate exceeds cap",
            "estimate": est,
        }

    c_polys = [
        ParamPoly.affine(t, maps.base[k], [delta[k] for delta in maps.deltas])
        for k in range(1, m + 1)
    ]
    newton = NewtonTransform(m)
    ch_polys = newton.ch_from_c(c_polys, ParamPoly.constant(t, ctx.one()))

    # per-k scalar coordinate polynomials {exp: Fraction} and denominators
    coord_polys: list[dict] = []
    q_k_list: list[int] = []
    for k, poly in enumerate(ch_polys, start=1):
        per_coord: dict[int, dict] = {}
        q_k = 1
        for e, mv in poly.coeffs.items():
            for mask, c in mv.coeffs.items():
                per_coord.setdefault(mask, {})[e] = c
                q_k = q_k * c.denominator // math.gcd(q_k, c.denominator)
        coord_polys.append(per_coord)
        q_k_list.append(q_k)
    q = 1
    for q_k in q_k_list:
        q = q * q_k // math.gcd(q, q_k)

    cert: dict = {"q": q, "t": t, "primes": {}}
    if q == 1:
        cert["survivor"] = [0] * t
        return "unobstructed", cert

    total_residues = sum(p ** (max(_vp(qk, p) for qk in q_k_list) * t) for p in _prime_factors(q))
    if t and total_residues > budget:
        cert["reason"] = f"residue count {total_residues} exceeds budget {budget}"
        return "inconclusive", cert

    survivors: dict[int, tuple[int, list[int]]] = {}
    inconclusive = False
    for p in sorted(_prime_factors(q)):
        e_by_k = [_vp(qk, p) for qk in q_k_list]
        E = max(e_by_k)
        M = p**E
        found, ops_ok = _sweep_prime(coord_polys, q_k_list, e_by_k, p, M, t)
        if not ops_ok:
            inconclusive = True
            cert["primes"][str(p)] = {"modulus": M, "verdict": "inconclusive"}
            continue
        if found is None:
            cert["primes"][str(p)] = {"modulus": M, "verdict": "obstructed",
                                      "residues_checked": M**t}
            cert["obstructing_prime"] = p
            return "obstructed", cert
        survivors[p] = (M, found)
        cert["primes"][str(p)] = {"modulus": M, "verdict": "survivor", "u": found}
    if inconclusive:
        return "inconclusive", cert
    # CRT-combine the per-prime survivors and verify exactly
    u = [0] * t
    modulus = 1
    for p, (M, vec) in survivors.items():
        for j in range(t):
            u[j] = _crt(u[j], modulus, vec[j], M)
        modulus *= M
    for poly in ch_polys:
        if not poly.evaluate(u).is_integral():
            raise AssertionError("CRT survivor failed exact verification")
    cert["survivor"] = u
    return "unobstructed", cert


def _crt(a: int, m: int, b: int, n: int) -> int:
    g, x, _ = _egcd(m % n, n)
    assert g == 1
    return (a + m * ((b - a) * x % n)) % (m * n)


def _egcd(a, b):
    if a == 0:
        return b, 0, 1
    g, x, y = _egcd(b % a, a)
    return g, y - (b // a) * x, x


def _sweep_prime(coord_polys, q_k_list, e_by_k, p, M, t):
    """Vectorized scan of (Z/M)^t; returns (first surviving u or None, ops_ok)."""
    systems = []
    ops = 0
    for per_coord, q_k, e_k in zip(coord_polys, q_k_list, e_by_k):
        if e_k == 0:
            continue
        mod_k = p**e_k
        monos: dict[tuple[int, ...], int] = {}
        rows = []
        for _mask, poly in per_coord.items():
            row = {}
            for e, c in poly.items():
                coef = int(c * q_k) % mod_k
                if coef:
                    row[e] = coef
            if row:
                for e in row:
                    monos.setdefault(e, len(monos))
                rows.append(row)
        if not rows:
            continue
        C = np.zeros((len(rows), len(monos)), dtype=np.int64)
        for ri, row in enumerate(rows):
            for e, coef in row.items():
                C[ri, monos[e]] = coef
        ordered = [e for e, _ in sorted(monos.items(), key=lambda kv: kv[1])]
        exps = np.array(ordered, dtype=np.int64).reshape(len(ordered), t)
        systems.append((C, exps, mod_k))
        ops += C.shape[0] * C.shape[1] * (M**t)
    if ops > OPS_CAP:
        return None, False
    if not systems:
        return [0] * t, True
    total = M**t
    chunk = 1 << 15
    for start in range(0, total, chunk):
        stop = min(start + chunk, total)
        idx = np.arange(start, stop, dtype=np.int64)
        U = np.empty((t, stop - start), dtype=np.int64)
        rem = idx
        for j in range(t):
            U[j] = rem % M
            rem = rem // M
        alive = np.ones(stop - start, dtype=bool)
        for C, exps, mod_k in systems:
            Um = U % mod_k
            # monomial value matrix via iterated powers mod mod_k
            V = np.ones((exps.shape[0], stop - start), dtype=np.int64)
            for j in range(t):
                col = exps[:, j]
                if not col.any():
                    continue
                maxe = int(col.max())
                pows = [np.ones(stop - start, dtype=np.int64)]
                for _ in range(maxe):
                    pows.append((pows[-1] * Um[j]) % mod_k)
                for mi in range(exps.shape[0]):
                    if col[mi]:
                        V[mi] = (V[mi] * pows[int(col[mi])]) % mod_k
            F = (C @ V) % mod_k
            alive &= ~(F != 0).any(axis=0)
            if not alive.any():
                break
        if alive.any():
            pos = int(np.argmax(alive))
            value = start + pos
            u = []
            for _ in range(t):
                u.append(int(value % M))
                value //= M
            return u, True
    return None, True


def hotchkiss_obstructed(
    spec: BrauerClassSpec, d: int, budget: int = DEFAULT_BUDGET
):
    """Combined verdict: stage-one emptiness, else the stage-two sweep."""
    family = hotchkiss_first_stage(spec, d)
    if family is None:
        return "obstructed", {"stage": 1, "family": "empty"}
    verdict, cert = hotchkiss_second_stage(spec, d, family, budget)
    cert["stage"] = 2
    return verdict, cert

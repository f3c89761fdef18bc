"""Small exact symmetric-function toolkit: explicit elementary symmetric
polynomials over N formal roots and the greedy rewrite of a symmetric
polynomial into the elementary basis, optionally modulo a prime.

Polynomials are dicts {exponent tuple of length N: integer coefficient}.
"""

from __future__ import annotations

from itertools import combinations


def elementary(N: int, k: int) -> dict[tuple[int, ...], int]:
    """e_k(t_1..t_N) as an exponent dict; e_0 = 1, zero for k > N."""
    if k == 0:
        return {(0,) * N: 1}
    if k < 0 or k > N:
        return {}
    out = {}
    for subset in combinations(range(N), k):
        exp = [0] * N
        for i in subset:
            exp[i] = 1
        out[tuple(exp)] = 1
    return out


def poly_mul(a: dict, b: dict, p: int | None = None) -> dict:
    out: dict[tuple[int, ...], int] = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = tuple(x + y for x, y in zip(ea, eb))
            c = out.get(e, 0) + ca * cb
            if p is not None:
                c %= p
            if c:
                out[e] = c
            else:
                out.pop(e, None)
    return out


def poly_scale_add(dst: dict, src: dict, c: int, p: int | None = None) -> dict:
    for e, v in src.items():
        s = dst.get(e, 0) + c * v
        if p is not None:
            s %= p
        if s:
            dst[e] = s
        else:
            dst.pop(e, None)
    return dst


def conjugate_partition(lam: tuple[int, ...]) -> tuple[int, ...]:
    if not lam:
        return ()
    return tuple(sum(1 for part in lam if part > r) for r in range(lam[0]))


def to_elementary_basis(poly: dict, N: int, p: int | None = None) -> dict[tuple[int, ...], int]:
    """Rewrite a symmetric polynomial as {mu: coeff} meaning
    sum over terms of coeff * prod_r e_(mu_r), mu a partition of the weight.

    Greedy peeling: the lex-greatest monomial partition lambda of the
    remainder is the leading monomial of prod_r e_(lambda'_r) with unit
    coefficient, so subtracting that product kills it and the leading
    monomial strictly decreases.
    """
    work = dict(poly)
    if p is not None:
        work = {e: c % p for e, c in work.items() if c % p}
    out: dict[tuple[int, ...], int] = {}
    e_cache: dict[int, dict] = {}

    def e_poly(k):
        if k not in e_cache:
            e_cache[k] = elementary(N, k)
        return e_cache[k]

    while work:
        lam = max(tuple(sorted(e, reverse=True)) for e in work)
        lam_stripped = tuple(x for x in lam if x)
        rep = lam + (0,) * (N - len(lam))
        c = work.get(rep, 0)
        if c == 0:
            raise AssertionError("polynomial is not symmetric")
        mu = conjugate_partition(lam_stripped)
        prod = {(0,) * N: 1}
        for part in mu:
            prod = poly_mul(prod, e_poly(part), p)
        poly_scale_add(work, prod, -c, p)
        out[mu] = c
    return out


def evaluate_elementary_expression(terms: dict, values: list, one) -> object:
    """Evaluate sum coeff * prod_r values[mu_r] over the term dict.

    values[k] stands for e_k (1-indexed; values[0] unused); `one` is the
    multiplicative unit of the target ring.
    """
    total = None
    for mu, c in terms.items():
        acc = one
        for part in mu:
            acc = acc * values[part]
        acc = acc * c
        total = acc if total is None else total + acc
    return total

"""Reproducible sampling campaigns over two-form orbits.

Vectors are drawn from a counter-based keyed hash (reproducible regardless
of threading), rejection-filtered by Hamming weight and exact period,
canonicalized along the theta orbit and deduplicated; each accepted orbit
gets the full bound treatment.
"""

from __future__ import annotations

import hashlib
import multiprocessing
import time
from dataclasses import dataclass

from .driver import index_lower_bound
from .exterior import AlgebraContext
from .hotchkiss import DEFAULT_BUDGET
from .forms import form_text_from_coordinates
from .model import (
    BrauerClassSpec,
    canonical_coordinates,
    hamming_weight_coords,
    symbol_length,
)

CSV_COLUMNS = (
    "id",
    "g",
    "period",
    "canonical_form",
    "hamming_weight",
    "symbol_length",
    "djp_bound",
    "refined_bound",
    "hotchkiss_bound",
    "cap",
    "elapsed_ms",
    "seed",
    "sample_index",
)


@dataclass
class SampleRecord:
    id: str
    g: int
    period: int
    canonical_form: str
    hamming_weight: int
    symbol_length: int
    djp_bound: object
    refined_bound: object
    hotchkiss_bound: object
    cap: int
    elapsed_ms: int
    seed: int
    sample_index: int

    def row(self):
        return [str(getattr(self, col)) for col in CSV_COLUMNS]


def _prf_bytes(seed: int, attempt: int, block: int) -> bytes:
    key = (seed % 2**64).to_bytes(8, "big")
    data = attempt.to_bytes(8, "big") + block.to_bytes(4, "big")
    return hashlib.blake2b(data, key=key, digest_size=32).digest()


def _draw_vector(seed: int, attempt: int, size: int, n: int):
    """size digits uniform mod n via byte rejection; deterministic in (seed, attempt)."""
    limit = 256 - 256 % n
    digits = []
    block = 0
    while len(digits) < size:
        for byte in _prf_bytes(seed, attempt, block):
            if byte < limit:
                digits.append(byte % n)
                if len(digits) == size:
                    break
        block += 1
    return tuple(digits)


def _draw_uniform(seed: int, attempt: int, m: int) -> int:
    """One uniform draw in [0, m), keyed separately from the vector stream."""
    limit = 256 - 256 % m
    block = 1 << 20
    while True:
        for byte in _prf_bytes(seed, attempt, block):
            if byte < limit:
                return byte % m
        block += 1


def _gcd_content(coords, n):
    import math

    return math.gcd(n, *coords)


def sample_orbits(
    g: int,
    period: int,
    weight_bound: int,
    count: int,
    seed: int,
    orbit_uniform: bool = False,
):
    """Deterministic stream of distinct orbit representatives.

    Returns (list of canonical coordinate tuples, exhausted flag).  Raw
    vectors must have weight <= weight_bound and exact period; orbits whose
    canonical representative is zero (the trivial class) are skipped.
    """
    if weight_bound < 1 or count < 1:
        raise ValueError("weight bound and count must be positive")
    ctx = AlgebraContext(g)
    size = ctx.rank(2)
    theta_coords = tuple(int(c) for c in ctx.theta().coordinates(2))
    found: list[tuple[int, ...]] = []
    seen = set()
    attempt = 0
    since_new = 0
    patience = 2000 + 200 * count
    while len(found) < count and since_new < patience:
        coords = _draw_vector(seed, attempt, size, period)
        attempt += 1
        since_new += 1
        if hamming_weight_coords(coords) > weight_bound:
            continue
        if _gcd_content(coords, period) != 1:
            continue
        canon = canonical_coordinates(ctx, coords, period)
        if not any(canon):
            continue
        if canon in seen:
            continue
        if orbit_uniform:
            members = [
                tuple((c + k * t) % period for c, t in zip(coords, theta_coords))
                for k in range(period)
            ]
            qualifying = sum(
                1
                for mem in members
                if hamming_weight_coords(mem) <= weight_bound
                and _gcd_content(mem, period) == 1
            )
            if qualifying > 1 and _draw_uniform(seed, attempt - 1, qualifying) != 0:
                continue
        seen.add(canon)
        found.append(canon)
        since_new = 0
    return found, len(found) < count


def _record_for_orbit(args):
    (index, canon, g, period, seed, methods, primes, budget) = args
    ctx = AlgebraContext(g)
    started = time.perf_counter()
    spec = BrauerClassSpec(ctx, ctx.from_coordinates(2, canon), period)
    report = index_lower_bound(spec, methods=methods, primes=primes, budget=budget)
    elapsed_ms = int((time.perf_counter() - started) * 1000)

    def bound_of(method):
        if method not in report.method_bounds:
            return "skipped"
        if method == "hotchkiss" and report.inconclusive:
            return "inconclusive"
        return report.method_bounds[method]

    return SampleRecord(
        id=f"g{g}p{period}s{seed}i{index}",
        g=g,
        period=spec.period,
        canonical_form=form_text_from_coordinates(ctx, canon),
        hamming_weight=hamming_weight_coords(canon),
        symbol_length=symbol_length(spec),
        djp_bound=bound_of("djp"),
        refined_bound=bound_of("refined"),
        hotchkiss_bound=bound_of("hotchkiss"),
        cap=report.cap,
        elapsed_ms=elapsed_ms,
        seed=seed,
        sample_index=index,
    )


def sample_campaign(
    g: int,
    period: int,
    weight_bound: int,
    count: int,
    seed: int,
    methods=("djp", "refined"),
    primes=(2,),
    budget: int = DEFAULT_BUDGET,
    orbit_uniform: bool = False,
    threads: int = 1,
):
    """Emit records for `count` distinct orbits (fewer when exhausted).

    Output order is sample_index order regardless of worker count.
    """
    orbits, exhausted = sample_orbits(g, period, weight_bound, count, seed, orbit_uniform)
    jobs = [
        (index, canon, g, period, seed, tuple(methods), tuple(primes), budget)
        for index, canon in enumerate(orbits)
    ]
    if threads <= 1 or len(jobs) < 2:
        records = [_record_for_orbit(job) for job in jobs]
    else:
        with multiprocessing.Pool(threads) as pool:
            records = list(pool.imap(_record_for_orbit, jobs))
    return records, exhausted

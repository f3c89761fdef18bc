"""Top-level algorithms: iterate obstruction checks over candidate degrees to
produce a certified index lower bound, the closed-form failure-degree table,
and the exhaustive indecomposability certifier.
"""

from __future__ import annotations

import math
import multiprocessing
import os
import time
from dataclasses import dataclass, field
from fractions import Fraction

from .djp import djp_solution_family
from .exterior import AlgebraContext
from .hotchkiss import DEFAULT_BUDGET, hotchkiss_first_stage, hotchkiss_second_stage
from .model import (
    BrauerClassSpec,
    canonical_coordinates,
    hamming_weight,
    primary_decomposition,
    symbol_length,
)
from .steenrod import refined_obstructed

METHOD_ORDER = ("djp", "refined", "hotchkiss")


# ---------------------------------------------------------------------------
# failure-degree bound and its table
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BoundParameters:
    """Exact data for the degree 2 p^(rs) where the integrality obstruction
    is guaranteed to vanish on a g-fold for period p^r."""

    g: int
    p: int
    r: int
    rs: int

    @property
    def s(self) -> Fraction:
        return Fraction(self.rs, self.r)


def _floor_log(n: int, p: int) -> int:
    out = 0
    while n >= p:
        n //= p
        out += 1
    return out


def failure_degree_bound(g: int, p: int, r: int) -> BoundParameters:
    """rs = r*g - floor((g-1)/(p-1)) + floor(log_p(g-1)) + 1, all exact."""
    if g < 2:
        raise ValueError("dimension must be at least 2")
    if r < 1:
        raise ValueError("exponent must be positive")
    rs = r * g - (g - 1) // (p - 1) + _floor_log(g - 1, p) + 1
    return BoundParameters(g, p, r, rs)


TABLE_PRIME_POWERS = ((2, 1), (3, 1), (2, 2), (5, 1), (7, 1), (2, 3), (3, 2), (11, 1), (13, 1), (2, 4))


def table_s(max_dim: int = 12):
    """Grid of s values (hyphen when s >= dim) for dims 3..max_dim."""
    rows = []
    for g in range(3, max_dim + 1):
        cells = []
        for p, r in TABLE_PRIME_POWERS:
            s = failure_degree_bound(g, p, r).s
            if s >= g:
                cells.append("-")
            elif s.denominator == 1:
                cells.append(str(s.numerator))
            else:
                cells.append(f"{s.numerator}/{s.denominator}")
        rows.append((g, cells))
    return rows


def digit_sum(n: int, p: int) -> int:
    out = 0
    while n:
        out += n % p
        n //= p
    return out


# ---------------------------------------------------------------------------
# index lower bound
# ---------------------------------------------------------------------------

@dataclass
class DegreeRecord:
    d: int
    component: int
    verdicts: dict
    certificate: dict
    elapsed_ms: float


@dataclass
class ObstructionReport:
    spec_summary: dict
    degrees: list
    lower_bound: int
    cap: int
    determined: bool
    inconclusive: bool = False
    method_bounds: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "spec": self.spec_summary,
            "degrees": [
                {
                    "d": rec.d,
                    "djp": rec.verdicts.get("djp", "skipped"),
                    "refined": rec.verdicts.get("refined", "skipped"),
                    "hotchkiss": rec.verdicts.get("hotchkiss", "skipped"),
                    "certificate": rec.certificate,
                    "component": rec.component,
                }
                for rec in self.degrees
            ],
            "lower_bound": self.lower_bound,
            "cap": self.cap,
            "determined": self.determined,
        }


def _check_degree(spec, d, methods, primes, budget):
    """Cheapest-first method chain at one degree; returns (verdicts, cert, obstructed, inconclusive)."""
    verdicts = {}
    certificate = {}
    family = ...
    if "djp" in methods:
        family = djp_solution_family(spec, d)
        if family is None:
            verdicts["djp"] = "obstructed"
            certificate = {"method": "djp", "family": "empty"}
            return verdicts, certificate, True, False
        verdicts["djp"] = "unobstructed"
    if "refined" in methods:
        obstructed, cert = refined_obstructed(spec, d, primes=primes, family=family)
        if obstructed:
            verdicts["refined"] = "obstructed"
            certificate = {"method": "refined", **cert}
            return verdicts, certificate, True, False
        verdicts["refined"] = "unobstructed"
    if "hotchkiss" in methods:
        stage1 = hotchkiss_first_stage(spec, d)
        if stage1 is None:
            verdicts["hotchkiss"] = "obstructed"
            certificate = {"method": "hotchkiss", "stage": 1, "family": "empty"}
            return verdicts, certificate, True, False
        verdict, cert = hotchkiss_second_stage(spec, d, stage1, budget)
        verdicts["hotchkiss"] = verdict
        if verdict == "obstructed":
            certificate = {"method": "hotchkiss", "stage": 2, **cert}
            return verdicts, certificate, True, False
        if verdict == "inconclusive":
            certificate = {"method": "hotchkiss", "stage": 2, **cert}
            return verdicts, certificate, False, True
    return verdicts, certificate, False, False


def index_lower_bound(
    spec: BrauerClassSpec,
    methods=("djp", "refined"),
    primes=(2,),
    budget: int = DEFAULT_BUDGET,
    target: int | None = None,
) -> ObstructionReport:
    """Certified lower bound on the index, capped by period^symbol_length.

    Prime-power periods iterate d over the powers p^k, r <= k < r*length;
    an obstruction at p^k lifts the bound to p^(k+1), and the chain stops at
    the first power where every enabled method fails.  Composite periods run
    per primary component and the componentwise bounds multiply.  A target
    stops the chain early once reached (bounds only grow along the chain).
    """
    methods = tuple(m for m in METHOD_ORDER if m in methods)
    length = symbol_length(spec)
    cap = spec.period**length if spec.period > 1 else 1
    summary = {
        "g": spec.g,
        "period": spec.period,
        "hamming_weight": hamming_weight(spec),
        "symbol_length": length,
    }
    if spec.period == 1:
        return ObstructionReport(summary, [], 1, 1, True,
                                 method_bounds={m: 1 for m in methods})
    degrees: list[DegreeRecord] = []
    bound = 1
    any_inconclusive = False
    method_bounds = {m: 1 for m in methods}
    for comp in primary_decomposition(spec):
        p = _least_prime_factor(comp.period)
        r = _exponent(comp.period, p)
        comp_len = symbol_length(comp)
        exp = r
        comp_method_exp = {m: None for m in methods}
        while exp < r * comp_len:
            d = p**exp
            start = time.perf_counter()
            verdicts, certificate, obstructed, inconclusive = _check_degree(
                comp, d, methods, primes, budget
            )
            elapsed = (time.perf_counter() - start) * 1000.0
            degrees.append(DegreeRecord(d, comp.period, verdicts, certificate, elapsed))
            any_inconclusive = any_inconclusive or inconclusive
            # per-method-prefix bookkeeping: the chain using only methods up
            # to m stops at the first degree none of them obstructs
            seen_obstruction = False
            for m in methods:
                seen_obstruction = seen_obstruction or verdicts.get(m) == "obstructed"
                if comp_method_exp[m] is None and not seen_obstruction:
                    comp_method_exp[m] = exp
            if not obstructed:
                break
            exp += 1
            if target is not None and bound * p**exp >= target:
                break
        comp_bound = p**exp
        bound *= comp_bound
        for m in methods:
            stop = comp_method_exp[m] if comp_method_exp[m] is not None else exp
            method_bounds[m] *= p**stop
    determined = bound == cap and not any_inconclusive
    report = ObstructionReport(summary, degrees, bound, cap, determined,
                               any_inconclusive, method_bounds)
    if cap % bound:
        raise AssertionError("bound exceeds the symbol-length cap")
    return report


def _least_prime_factor(n: int) -> int:
    d = 2
    while d * d <= n:
        if n % d == 0:
            return d
        d += 1
    return n


def _exponent(n: int, p: int) -> int:
    out = 0
    while n % p == 0:
        n //= p
        out += 1
    return out


# ---------------------------------------------------------------------------
# indecomposability
# ---------------------------------------------------------------------------

@dataclass
class IndecomposabilityResult:
    verdict: str  # "indecomposable" or "inconclusive"
    witness: tuple | None
    candidates: int
    stats: dict
    elapsed_ms: float


_WORK = {}


def _candidate_vector(index: int, n: int, size: int):
    digits = []
    rem = index
    for _ in range(size):
        digits.append(rem % n)
        rem //= n
    return tuple(digits)


def _bound_for_coords(coords, cache):
    """Capped index bound for the class of a coordinate vector, memoized on
    the canonical orbit representative (verdicts are orbit-invariant)."""
    g, n, target, methods, primes, budget = (
        _WORK["g"], _WORK["n"], _WORK["target"], _WORK["methods"],
        _WORK["primes"], _WORK["budget"],
    )
    ctx = _WORK["ctx"]
    canon = canonical_coordinates(ctx, coords, n)
    hit = cache.get(canon)
    if hit is not None:
        return hit
    spec = BrauerClassSpec(ctx, ctx.from_coordinates(2, canon), n)
    report = index_lower_bound(spec, methods, primes, budget, target=target)
    # the method that certified the last obstructed degree
    certifier = None
    if report.lower_bound >= target:
        for rec in reversed(report.degrees):
            if any(v == "obstructed" for v in rec.verdicts.values()):
                certifier = rec.certificate.get("method")
                break
        certifier = certifier or "cap"
    out = (report.lower_bound, certifier)
    cache[canon] = out
    return out


def _indec_chunk(args):
    start, stop = args
    g, n, target = _WORK["g"], _WORK["n"], _WORK["target"]
    size = _WORK["size"]
    b_coords = _WORK["b_coords"]
    cache = _WORK.setdefault("cache", {})
    counts = {"djp": 0, "refined": 0, "hotchkiss": 0, "cap": 0}
    witness = None
    for idx in range(start, stop):
        c = _candidate_vector(idx, n, size)
        bound_c, method_c = _bound_for_coords(c, cache)
        if bound_c >= target:
            counts[method_c] += 1
            continue
        rest = tuple((b - x) % n for b, x in zip(b_coords, c))
        bound_r, method_r = _bound_for_coords(rest, cache)
        if bound_r >= target:
            counts[method_r] += 1
            continue
        witness = (idx, c)
        break
    return start, stop, counts, witness


def _init_worker(work):
    global _WORK
    _WORK = dict(work)
    _WORK["ctx"] = AlgebraContext(work["g"])


def indecomposability_test(
    spec: BrauerClassSpec,
    target_index: int,
    methods=("djp", "refined"),
    primes=(2,),
    threads: int = 1,
    budget: int = DEFAULT_BUDGET,
    chunk_size: int = 2048,
) -> IndecomposabilityResult:
    """Exhaust all n^C(2g,2) splittings b = c + (b - c); indecomposable when
    every split leaves one side with a certified bound >= target_index.

    Chunk boundaries are fixed by candidate index, chunks are consumed in
    order, and per-candidate verdicts are pure, so the verdict, witness and
    statistics are identical for every worker count.
    """
    if target_index < 2:
        raise ValueError("degenerate target index; the class must have index > 1")
    if spec.period < 2:
        raise ValueError("trivial class cannot be tested for indecomposability")
    n = spec.period
    size = spec.ctx.rank(2)
    total = n**size
    work = {
        "g": spec.g,
        "n": n,
        "size": size,
        "target": target_index,
        "methods": tuple(methods),
        "primes": tuple(primes),
        "budget": budget,
        "b_coords": spec.coordinates(),
    }
    started = time.perf_counter()
    chunks = ((s, min(s + chunk_size, total)) for s in range(0, total, chunk_size))
    counts = {"djp": 0, "refined": 0, "hotchkiss": 0, "cap": 0}
    processed = 0
    witness = None
    if threads <= 1:
        _init_worker(work)
        for args in chunks:
            _, stop, c_counts, c_witness = _indec_chunk(args)
            for k, v in c_counts.items():
                counts[k] += v
            if c_witness is not None:
                processed = c_witness[0] + 1
                witness = c_witness
                break
            processed = stop
    else:
        with multiprocessing.Pool(threads, initializer=_init_worker, initargs=(work,)) as pool:
            for _, stop, c_counts, c_witness in pool.imap(_indec_chunk, chunks):
                for k, v in c_counts.items():
                    counts[k] += v
                if c_witness is not None:
                    processed = c_witness[0] + 1
                    witness = c_witness
                    pool.terminate()
                    break
                processed = stop
    elapsed = (time.perf_counter() - started) * 1000.0
    if witness is None:
        stats = {"counts": counts, "group_order": total, "threads": threads}
        return IndecomposabilityResult("indecomposable", None, processed, stats, elapsed)
    stats = {"counts": counts, "group_order": total, "threads": threads}
    return IndecomposabilityResult("inconclusive", witness[1], processed, stats, elapsed)


def default_threads() -> int:
    env = os.environ.get("BRAUER_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            pass
    return multiprocessing.cpu_count()

"""Acceptance suite: every criterion at its stated tolerance, one line each.

Run `pytest -s tests/test_acceptance.py` to see the PASS lines as they
complete; any failure fails the suite.
"""

import math
import random
import time
from fractions import Fraction

from brauerbounds.cli import main
from brauerbounds.djp import djp_obstructed, djp_solution_family
from brauerbounds.driver import (
    digit_sum,
    failure_degree_bound,
    indecomposability_test,
    index_lower_bound,
)
from brauerbounds.exterior import AlgebraContext
from brauerbounds.linalg import AffineLattice, lattices_equal
from brauerbounds.model import BrauerClassSpec, symbol_length
from brauerbounds.sampling import sample_campaign
from brauerbounds.steenrod import refined_obstructed

EXPECTED_TABLE = {
    3: ["-", "-", "-", "-", "-", "-", "-", "-", "-", "-"],
    4: ["3", "-", "7/2", "-", "-", "11/3", "-", "-", "-", "15/4"],
    5: ["4", "-", "9/2", "-", "-", "14/3", "-", "-", "-", "19/4"],
    6: ["4", "-", "5", "-", "-", "16/3", "-", "-", "-", "11/2"],
    7: ["4", "6", "11/2", "-", "-", "6", "13/2", "-", "-", "25/4"],
    8: ["4", "7", "6", "-", "-", "20/3", "15/2", "-", "-", "7"],
    9: ["5", "7", "7", "-", "-", "23/3", "8", "-", "-", "8"],
    10: ["5", "9", "15/2", "-", "-", "25/3", "19/2", "-", "-", "35/4"],
    11: ["5", "9", "8", "-", "-", "9", "10", "-", "-", "19/2"],
    12: ["5", "10", "17/2", "-", "-", "29/3", "11", "-", "-", "41/4"],
}


def fourfold_spec():
    ctx = AlgebraContext(4)
    b = ctx.x(1) * (ctx.y(1) + ctx.y(3)) + ctx.x(2) * ctx.y(2) + ctx.x(3) * ctx.y(1)
    return BrauerClassSpec(ctx, b, 2)


def threefold_spec():
    ctx = AlgebraContext(3)
    b = (
        ctx.x(1) * (ctx.y(1) + ctx.y(2))
        + ctx.x(2) * (ctx.y(1) + ctx.y(3))
        + ctx.x(3) * (ctx.y(1) + ctx.y(2) + ctx.y(3))
    )
    return BrauerClassSpec(ctx, b, 2)


def test_acceptance_table_reproduction(capsys):
    started = time.perf_counter()
    assert main(["table-s"]) == 0
    out = capsys.readouterr().out.strip().splitlines()
    rows = {int(line.split()[0]): line.split()[1:] for line in out[1:]}
    assert rows == EXPECTED_TABLE
    elapsed = time.perf_counter() - started
    assert elapsed < 1.0, f"table took {elapsed:.2f}s"
    with capsys.disabled():
        print(f"PASS: table-s reproduces all 100 grid cells in {elapsed:.2f}s")


def test_acceptance_fourfold_example_end_to_end(capsys):
    started = time.perf_counter()
    spec = fourfold_spec()
    # solution family at d=4: the lattice cut out by the congruences
    # m1 = 2k, m2, m3 in Z, -(3/4)m1 + m3 + m4 in Z; its coordinate
    # projections are the ranges 2Z, Z, Z, (1/2)Z
    fam = djp_solution_family(spec, 4)
    assert fam is not None
    expected = AffineLattice(
        [0, 0, 0, 0],
        [(2, 0, 0, Fraction(3, 2)), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)],
        [],
    )
    assert lattices_equal(fam, expected)
    assert fam.covolume_squared() == expected.covolume_squared()
    assert fam.contains([2, 1, 1, Fraction(1, 2)]) and not fam.contains([1, 0, 0, 0])
    proj = lambda k: math.gcd(*(int(2 * col[k]) for col in fam.basis))  # in units of 1/2
    assert [proj(k) for k in range(4)] == [4, 2, 2, 1]  # 2Z, Z, Z, (1/2)Z
    assert not djp_obstructed(spec, 4)
    obstructed, cert = refined_obstructed(spec, 4, primes=(2,))
    assert obstructed
    violations = cert["primes"]["2"]["violations"]
    assert violations and all(v["indices"] == [2, 1] for v in violations)
    report = index_lower_bound(spec, methods=("djp", "refined"), primes=(2,))
    assert report.lower_bound == 8 and report.cap == 8 and report.determined
    elapsed = time.perf_counter() - started
    assert elapsed < 10.0, f"fourfold example took {elapsed:.2f}s"
    with capsys.disabled():
        print(
            "PASS: fourfold example: family matches the derived congruence lattice, "
            f"refined kills every residue via (i=2,l=1), index 8 certified in {elapsed:.2f}s"
        )


def test_acceptance_threefold_example_end_to_end(capsys):
    started = time.perf_counter()
    spec = threefold_spec()
    assert symbol_length(spec) == 3
    report = index_lower_bound(spec, methods=("djp", "refined"), primes=(2,))
    assert report.lower_bound == 4
    res2 = indecomposability_test(spec, 4, threads=2)
    assert res2.verdict == "indecomposable"
    assert res2.candidates == 32768
    assert sum(res2.stats["counts"].values()) == 32768
    res1 = indecomposability_test(spec, 4, threads=1)
    assert (res1.verdict, res1.candidates, res1.stats["counts"]) == (
        res2.verdict,
        res2.candidates,
        res2.stats["counts"],
    )
    elapsed = time.perf_counter() - started
    assert elapsed < 1800.0, f"threefold example took {elapsed:.0f}s"
    with capsys.disabled():
        print(
            "PASS: threefold example: symbol length 3, bound 4, indecomposable "
            f"over all 32768 candidates, thread-count independent, {elapsed:.0f}s"
        )


def test_acceptance_wedge_identities(capsys):
    ctx = AlgebraContext(4)
    b = ctx.x(1) * (ctx.y(1) + ctx.y(3)) + ctx.x(2) * ctx.y(2) + ctx.x(3) * ctx.y(1)
    B = b.scale(Fraction(1, 2))
    om = {i: ctx.omega(i) for i in range(1, 5)}
    top = om[1] * om[2] * om[3] * om[4]
    expected = (
        2 * (om[1] * om[2])
        + (om[1] + om[2]) * (om[3] + om[4])
        + (ctx.x(1) * ctx.y(3) + ctx.x(3) * ctx.y(1)) * (om[2] + om[4])
    )
    assert b * ctx.theta() == expected
    for m1 in (1, 2, -5):
        assert (B**3) * (m1 * ctx.theta()) == Fraction(-3, 4) * m1 * top
    for m3 in (1, 4):
        assert B * (m3 * ctx.theta_power_integral(3)) == m3 * top
    with capsys.disabled():
        print("PASS: displayed wedge identities hold exactly")


def test_acceptance_failure_degree_property_suite(capsys):
    started = time.perf_counter()
    rng = random.Random(20260808)
    runs = 0
    for g in (3, 4, 5, 6):
        ctx = AlgebraContext(g)
        for p in (2, 3):
            for r in (1, 2):
                rs = failure_degree_bound(g, p, r).rs
                d = p**rs
                for _ in range(20):
                    coords = [rng.randrange(p**r) for _ in range(ctx.rank(2))]
                    coords[0] = 1  # force exact period p^r
                    spec = BrauerClassSpec(ctx, ctx.from_coordinates(2, coords), p**r)
                    fam = djp_solution_family(spec, d)
                    assert fam is not None, (g, p, r)
                    assert fam.contains([0] * fam.m), (g, p, r)
                    runs += 1
    # valuation identity within the binomial's support
    def vp(n, p):
        v = 0
        while n and n % p == 0:
            n //= p
            v += 1
        return v

    for g in (3, 4, 5, 6):
        for p in (2, 3):
            for r in (1, 2):
                rs = failure_degree_bound(g, p, r).rs
                for i in range(1, min(12, p**rs) + 1):
                    lhs = vp(math.comb(p**rs, i) * math.factorial(i), p) - r * i
                    vfac = (i - 1 - digit_sum(i - 1, p)) // (p - 1)
                    assert vfac == vp(math.factorial(i - 1), p)
                    assert lhs == (rs - r * i) + vfac
    elapsed = time.perf_counter() - started
    with capsys.disabled():
        print(
            f"PASS: obstruction vanishes at d=p^rs for all {runs} random classes "
            f"(grid (3..6)x(2,3)x(1,2)), valuation identity holds, {elapsed:.0f}s"
        )


def test_acceptance_oracle_suites(capsys):
    started = time.perf_counter()
    import test_hotchkiss
    import test_linalg
    import test_steenrod

    test_linalg.test_smith_vs_minor_gcd_oracle_200_random()
    test_linalg.test_solver_completeness_grid_scan_100_systems()
    test_steenrod.test_square_relation_symbolic_identity_up_to_4_roots()
    test_steenrod.test_reduced_power_matches_oracle_p3_p5()
    test_hotchkiss.test_newton_roundtrip_up_to_degree_8()
    elapsed = time.perf_counter() - started
    with capsys.disabled():
        print(
            "PASS: oracle suites (SNF minor-gcd x200, solver grid scan x100, "
            f"splitting-principle mod 2/3/5, Newton roundtrip to degree 8), {elapsed:.0f}s"
        )


def test_acceptance_method_strength_campaign(capsys):
    started = time.perf_counter()
    records, exhausted = sample_campaign(
        4, 2, 6, 100, seed=20260808,
        methods=("djp", "refined", "hotchkiss"), threads=2,
    )
    assert not exhausted
    assert len(records) == 100
    conclusive_h = 0
    for rec in records:
        assert rec.refined_bound >= rec.djp_bound
        assert rec.cap % rec.refined_bound == 0
        if rec.hotchkiss_bound not in ("skipped", "inconclusive"):
            assert rec.hotchkiss_bound >= rec.refined_bound
            conclusive_h += 1
    elapsed = time.perf_counter() - started
    with capsys.disabled():
        print(
            "PASS: 100-class campaign (g=4, period 2, weight<=6): refined >= djp "
            f"always, hotchkiss >= refined on {conclusive_h} conclusive records, {elapsed:.0f}s"
        )

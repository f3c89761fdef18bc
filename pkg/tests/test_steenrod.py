"""Square/reduced-power relations: symbolic oracles and the refined verdict."""

from itertools import combinations

import pytest

from brauerbounds.exterior import AlgebraContext, gbinom
from brauerbounds.model import BrauerClassSpec
from brauerbounds.steenrod import (
    ReducedPowerPolynomial,
    SteenrodRelation,
    power_relations,
    reduced_power_polynomial,
    refined_obstructed,
    square_relations,
    steenrod_rhs,
)
from brauerbounds.symfunc import elementary, poly_mul


def spec_obsdjp():
    ctx = AlgebraContext(4)
    b = ctx.x(1) * (ctx.y(1) + ctx.y(3)) + ctx.x(2) * ctx.y(2) + ctx.x(3) * ctx.y(1)
    return BrauerClassSpec(ctx, b, 2)


# ---------------------------------------------------------------------------
# splitting-principle oracle, fully independent of the production code:
# polynomials in N root variables as {exponent tuple: coeff mod p}
# ---------------------------------------------------------------------------

def oracle_total_operation(N, k, p):
    """e_k(t_1 + t_1^p, ..., t_N + t_N^p) as a monomial dict mod p."""
    out = {}
    for chosen in combinations(range(N), k):
        # expand prod (t_a + t_a^p) over the chosen roots
        partial = {tuple(0 for _ in range(N)): 1}
        for a in chosen:
            nxt = {}
            for exp, c in partial.items():
                for power in (1, p):
                    e2 = list(exp)
                    e2[a] += power
                    key = tuple(e2)
                    nxt[key] = (nxt.get(key, 0) + c) % p
            partial = nxt
        for exp, c in partial.items():
            out[exp] = (out.get(exp, 0) + c) % p
    return {e: c for e, c in out.items() if c}


def weight_piece(poly, w):
    return {e: c for e, c in poly.items() if sum(e) == w}


def oracle_evaluate_terms(terms, N, p):
    """Expand a {index multiset: coeff} expression into root monomials mod p."""
    out = {}
    for mu, c in terms:
        prod = {tuple(0 for _ in range(N)): c % p}
        for part in mu:
            prod = poly_mul(prod, elementary(N, part), p)
        for e, v in prod.items():
            out[e] = (out.get(e, 0) + v) % p
    return {e: c for e, c in out.items() if c}


def test_square_relation_symbolic_identity_up_to_4_roots():
    """Sq^{2l}(e_i) equals the universal right side for every i+l <= 4."""
    N, p = 4, 2
    for i in range(1, N + 1):
        for l in range(1, N - i + 1):
            total = oracle_total_operation(N, i, p)
            lhs = weight_piece(total, i + l)
            rel = SteenrodRelation(i, l)
            rhs = {}
            for a, b in rel.terms():
                if a > N or b > N:
                    continue
                prod = poly_mul(elementary(N, a), elementary(N, b), p)
                for e, c in prod.items():
                    rhs[e] = (rhs.get(e, 0) + c) % p
            rhs = {e: c for e, c in rhs.items() if c}
            assert lhs == rhs, (i, l)


def test_steenrod_rhs_small_cases():
    ctx = AlgebraContext(4)
    # residue stand-ins: C0 = 1, C1 = theta, C2 = theta^2/2, C3 = theta^3/6
    residues = [ctx.one()] + [ctx.theta_power_integral(k) for k in (1, 2, 3)]
    # i=2, l=1: C1*C2 + C0*C3
    got = steenrod_rhs(ctx, 2, 1, residues)
    expected = (residues[1] * residues[2] + residues[3]).reduce_mod(2)
    assert got == expected
    # i=1, l=1: C1^2 since C(-1,0)=1, C(0,1)=0
    assert list(SteenrodRelation(1, 1).terms()) == [(1, 1)]
    got = steenrod_rhs(ctx, 1, 1, residues)
    assert got == (residues[1] * residues[1]).reduce_mod(2)
    # l=0 would be the identity operation: single term C0*Ci
    assert [t for t in SteenrodRelation(3, 0).terms()] == [(0, 3)]


def test_square_relation_generation_bounds():
    rels = square_relations(4)
    assert all(r.i >= 1 and r.l >= 1 and r.i + r.l <= 4 for r in rels)
    assert SteenrodRelation(2, 1) in rels
    assert SteenrodRelation(4, 1) not in rels  # target degree 10 > 8


def test_reduced_power_p3_i1_j1_is_cube():
    q = reduced_power_polynomial(3, 1, 1)
    assert dict(q.terms) == {(1, 1, 1): 1}
    assert q.weight == 3


def test_reduced_power_matches_oracle_p3_p5():
    for p in (3, 5):
        for i in (1, 2, 3):
            j = 1
            N = i + j * (p - 1)
            q = reduced_power_polynomial(p, i, j)
            lhs = weight_piece(oracle_total_operation(N, i, p), N)
            rhs = oracle_evaluate_terms(q.terms, N, p)
            assert lhs == rhs, (p, i)
            # weighted homogeneity
            assert all(sum(mu) == N for mu, _ in q.terms)


def test_reduced_power_stability_more_roots():
    for p, i, j in ((3, 2, 1), (3, 1, 2), (5, 1, 1)):
        q = reduced_power_polynomial(p, i, j)
        N = q.weight
        # recompute with one extra root: restrict the oracle identity
        lhs = weight_piece(oracle_total_operation(N + 1, i, p), N)
        rhs = oracle_evaluate_terms(q.terms, N + 1, p)
        assert lhs == rhs


def test_vacuous_relations_beyond_top_degree():
    # any relation with target weight above g is simply not generated
    for p in (3, 5):
        for rel in power_relations(p, 4):
            assert rel.weight <= 4


def test_refined_obstructed_obsdjp_every_residue_violates_sq2_c2():
    spec = spec_obsdjp()
    obstructed, cert = refined_obstructed(spec, 4, primes=(2,))
    assert obstructed
    assert cert["verdict"] == "obstructed"
    assert cert["obstructing_prime"] == 2
    entry = cert["primes"]["2"]
    assert entry["violations"], "expected per-residue violations"
    for v in entry["violations"]:
        assert v["indices"] == [2, 1]


def test_refined_never_weaker_than_djp():
    spec = spec_obsdjp()
    # d=2 is already integrality-obstructed; refinement inherits it
    obstructed, cert = refined_obstructed(spec, 2, primes=(2,))
    assert obstructed and cert["family"] == "empty"


def test_refined_b_zero_unobstructed():
    ctx = AlgebraContext(3)
    spec = BrauerClassSpec(ctx, ctx.zero(), 1)
    for d in (1, 2, 4):
        obstructed, cert = refined_obstructed(spec, d, primes=(2, 3))
        assert not obstructed
        assert cert["verdict"] == "unobstructed"
        for p in ("2", "3"):
            assert cert["primes"][p]["survivor"] is not None


def test_refined_rejects_non_unit_c0():
    with pytest.raises(ValueError):
        refined_obstructed(spec_obsdjp(), 4, primes=(2,), c0=2)


def test_skipped_relations_logged_when_d_below_g():
    ctx = AlgebraContext(4)
    spec = BrauerClassSpec(ctx, ctx.zero(), 1)
    _, cert = refined_obstructed(spec, 2, primes=(2,))
    # m = 2 < g = 4: relations touching C_3, C_4 are skipped, not guessed
    assert cert["primes"]["2"]["skipped_relations"]

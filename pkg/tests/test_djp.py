"""Stacked integrality systems and their solution families."""

import math
import random
from fractions import Fraction

from brauerbounds.djp import (
    ChernResidueMaps,
    build_system,
    djp_obstructed,
    djp_solution_family,
)
from brauerbounds.exterior import AlgebraContext
from brauerbounds.linalg import AffineLattice, lattices_equal, residue_points
from brauerbounds.model import BrauerClassSpec, HodgeCoordinates, p_poly


def spec_obsdjp():
    ctx = AlgebraContext(4)
    b = ctx.x(1) * (ctx.y(1) + ctx.y(3)) + ctx.x(2) * ctx.y(2) + ctx.x(3) * ctx.y(1)
    return BrauerClassSpec(ctx, b, 2)


def spec_indec():
    ctx = AlgebraContext(3)
    b = (
        ctx.x(1) * (ctx.y(1) + ctx.y(2))
        + ctx.x(2) * (ctx.y(1) + ctx.y(3))
        + ctx.x(3) * (ctx.y(1) + ctx.y(2) + ctx.y(3))
    )
    return BrauerClassSpec(ctx, b, 2)


def test_row_and_column_counts_g4_d4():
    P, w = build_system(spec_obsdjp(), 4)
    assert len(P) == sum(math.comb(8, 2 * i) for i in range(1, 5)) == 127
    assert all(len(row) == 4 for row in P)
    assert len(w) == 127


def test_b_zero_g1_everything_integral():
    ctx = AlgebraContext(1)
    spec = BrauerClassSpec(ctx, ctx.zero(), 1)
    for d in (1, 2, 5):
        P, w = build_system(spec, d)
        assert all(x == 0 for x in w)
        fam = djp_solution_family(spec, d)
        assert fam is not None
        assert fam.contains([1]) and fam.contains([-7]) and not fam.contains([Fraction(1, 2)])


def test_obsdjp_family_equals_parameter_set():
    """Degree-4 family: m1 = 2k, m2, m3 integers, m4 in 3k/2 + Z.

    The four per-parameter ranges 2Z, Z, Z, (1/2)Z are the coordinate
    projections of this lattice; the last congruence couples m4 to m1.
    """
    fam = djp_solution_family(spec_obsdjp(), 4)
    assert fam is not None
    expected = AffineLattice(
        [0, 0, 0, 0],
        [(2, 0, 0, Fraction(3, 2)), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)],
        [],
    )
    assert fam.t == 4 and fam.s == 0
    assert lattices_equal(fam, expected)
    assert fam.covolume_squared() == expected.covolume_squared() == 4
    # pinned membership values
    assert fam.contains([2, 1, 1, Fraction(1, 2)])
    assert not fam.contains([1, 0, 0, 0])
    assert fam.contains([0, 0, 0, 0])
    # coordinate projections reproduce the displayed ranges
    assert projection_lattice(fam, 0) == (Fraction(0), Fraction(2))   # 2Z
    assert projection_lattice(fam, 1) == (Fraction(0), Fraction(1))   # Z
    assert projection_lattice(fam, 2) == (Fraction(0), Fraction(1))   # Z
    assert projection_lattice(fam, 3) == (Fraction(0), Fraction(1, 2))  # (1/2)Z


def projection_lattice(fam, coord):
    """(offset mod step, step) of the coordinate projection of the family."""
    vals = [col[coord] for col in fam.basis if col[coord]]
    step = Fraction(0)
    for v in vals:
        v = abs(v)
        step = v if not step else Fraction(
            math.gcd(step.numerator * v.denominator, v.numerator * step.denominator),
            step.denominator * v.denominator,
        )
    off = fam.offset[coord] % step if step else fam.offset[coord]
    return (off, step)


def test_obsdjp_not_obstructed_at_4_but_obstructed_at_2():
    spec = spec_obsdjp()
    assert not djp_obstructed(spec, 4)
    assert djp_obstructed(spec, 2)


def test_indec_obstructed_at_2():
    assert djp_obstructed(spec_indec(), 2)


def test_b_zero_never_obstructed():
    ctx = AlgebraContext(3)
    spec = BrauerClassSpec(ctx, ctx.zero(), 1)
    for d in (1, 2, 3, 4, 6):
        assert not djp_obstructed(spec, d)


def test_family_points_give_integral_classes():
    rng = random.Random(31)
    spec = spec_obsdjp()
    for d in (4, 8):
        fam = djp_solution_family(spec, d)
        assert fam is not None
        m = min(d, spec.g)
        for _ in range(25):
            u = [rng.randrange(-4, 5) for _ in range(fam.t)]
            w = [Fraction(rng.randrange(-2, 3)) for _ in range(fam.s)]
            a = fam.point(u, w)
            coords = HodgeCoordinates(d, tuple(a))
            for i in range(1, m + 1):
                assert p_poly(spec, d, i, coords).is_integral()


def test_prime_power_failure_degree_contains_zero():
    # at d = p^(rs) the all-zero Hodge point always solves the system
    rng = random.Random(41)
    ctx = AlgebraContext(3)
    for p, r in ((2, 1), (3, 1)):
        # rs = r*g - floor((g-1)/(p-1)) + floor(log_p(g-1)) + 1
        g = 3
        rs = r * g - (g - 1) // (p - 1) + (1 if p <= g - 1 else 0) + 1
        d = p**rs
        for _ in range(3):
            coords = [rng.randrange(p**r) for _ in range(ctx.rank(2))]
            coords[0] = 1
            spec = BrauerClassSpec(ctx, ctx.from_coordinates(2, coords), p**r)
            fam = djp_solution_family(spec, d)
            assert fam is not None
            assert fam.contains([0] * fam.m)


def test_chern_residue_maps_integrality_and_c3_nonzero_mod2():
    spec = spec_obsdjp()
    fam = djp_solution_family(spec, 4)
    maps = ChernResidueMaps(spec, 4, fam)
    assert maps.t == 4
    # the 3rd class is nonzero mod 2 at every enumerated residue
    pts = residue_points(fam, maps.coordinate_maps(), 2)
    assert pts
    for u, key in pts:
        c3 = key[2]
        assert any(x % 2 for x in c3)
    # the same fact via direct class evaluation
    for u, _ in pts:
        classes = maps.residue(u, 2)
        assert not classes[3].is_zero()

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from ltswan.newton import (
    DegenerateInput,
    FqTX,
    eisenstein_tower,
    h_from_newton,
    lower_hull,
    phi_points,
    residue_factorization_check,
    slope_stability,
    u_valuations,
    v_sharps,
)
from ltswan.ramify import expected_jumps

vals = st.tuples(st.fractions(-4, 4, max_denominator=6), st.fractions(-4, 4, max_denominator=6))
point_sets = st.dictionaries(st.integers(0, 30), vals, min_size=2, max_size=8)


@given(point_sets)
def test_hull_lies_below_every_point(pts):
    poly = lower_hull(pts.items())
    verts = dict(poly.vertices)
    assert all(pts[e] == v for e, v in verts.items())
    assert poly.vertices[0][0] == min(pts) and poly.vertices[-1][0] == max(pts)
    slopes = [s.slope for s in poly.segments]
    assert all(a < b for a, b in zip(slopes, slopes[1:]))
    assert sum(s.length for s in poly.segments) == max(pts) - min(pts)
    for e, v in pts.items():
        for s in poly.segments:
            if s.start <= e <= s.end:
                base = verts[s.start]
                line = (base[0] + s.slope[0] * (e - s.start), base[1] + s.slope[1] * (e - s.start))
                assert v >= line


def test_hull_rejects_degenerate_input():
    with pytest.raises(DegenerateInput):
        lower_hull([(1, (0, 0))])
    with pytest.raises(DegenerateInput):
        lower_hull([(1, (0, 0)), (1, (1, 0))])


def test_phi_hull_q2():
    poly = lower_hull(phi_points(2))
    assert [(s.start, s.end) for s in poly.segments] == [(1, 2), (2, 4)]
    assert poly.segments[0].root_valuation == (Fraction(1), Fraction(-1))


@pytest.mark.parametrize("q", [2, 3])
@pytest.mark.parametrize("n", [1, 2, 3])
def test_level_valuations(q, n):
    us = u_valuations(q, n)
    assert [u.flat for u in us] == [Fraction(1, (q - 1) * q ** (m - 1)) for m in range(1, n + 1)]
    assert all(u.normalized_sharp == -q ** (2 * n - 1) for u in us)
    assert v_sharps(q, n)[-1] == 1


@pytest.mark.parametrize("q", [2, 3])
@pytest.mark.parametrize("n", [1, 2, 3])
def test_newton_rebuilds_the_jumps(q, n):
    assert h_from_newton(q, n) == [v for v, _ in expected_jumps(q, n)]


@pytest.mark.parametrize("q", [2, 3, 4, 5])
@pytest.mark.parametrize("n", [1, 2, 3])
def test_tower_degree(q, n):
    rep = eisenstein_tower(q, n)
    assert rep["degree"] == rep["expected_degree"] == (q - 1) * q ** (n - 1)
    assert rep["totally_ramified"]


@pytest.mark.parametrize("q", [2, 3, 4])
@pytest.mark.parametrize("n", [1, 2, 3])
def test_residue_factorization(q, n):
    assert residue_factorization_check(q, n)["equal"]


def test_residue_composite_q2_n2():
    assert residue_factorization_check(2, 2)["lhs"] == "T^3X^4 + T^1X^8 + T^4X^8 + T^0X^16"


@given(st.sampled_from([2, 3, 4]), st.integers(0, 3), st.integers(0, 3), st.integers(1, 40))
def test_frobenius_power_matches_repeated_product(q, dx, dt, k):
    f = FqTX.monomial(q, dx, dt) + FqTX.monomial(q, 1)
    slow = FqTX.monomial(q, 0)
    for _ in range(k):
        slow = slow * f
    assert f.power(k) == slow


@pytest.mark.parametrize("q", [2, 3])
def test_slope_stability(q):
    rep = slope_stability(q, 100, seed=7)
    assert rep["stable"] and rep["count"] == 100
    assert slope_stability(q, 10, seed=7) == slope_stability(q, 10, seed=7)

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from ltswan.algebra import (
    CapExceeded,
    RankTwoLog,
    det,
    double_cosets,
    enumerate_gl2,
    gl2_order,
    intersect,
    iwahori_congruence,
    make_ring,
    mat_inv,
    mat_mul,
    named_subgroups,
    parse_ring_spec,
    pi_prime_conjugate,
)

from conftest import ALL_RINGS, SMALL_RINGS, ctx_for

rings = st.sampled_from(["2:1:1:mixed", "2:1:3:mixed", "3:1:2:mixed", "2:2:2:equal",
                         "5:1:2:mixed", "3:2:1:equal"]).map(parse_ring_spec)
fracs = st.fractions(min_value=-50, max_value=50, max_denominator=30)
values = st.builds(RankTwoLog, fracs, st.integers(-40, 40))


@given(rings, st.data())
def test_ring_axioms(R, data):
    el = st.integers(0, R.size - 1)
    a, b, c = data.draw(el), data.draw(el), data.draw(el)
    add, mul = R.add, R.mul
    assert add[a][add[b][c]] == add[add[a][b]][c]
    assert mul[a][mul[b][c]] == mul[mul[a][b]][c]
    assert mul[a][add[b][c]] == add[mul[a][b]][mul[a][c]]
    assert add[a][R.neg[a]] == 0
    if R.is_unit(a):
        assert mul[a][R.inv[a]] == 1
    assert R.val_pi(mul[a][b]) == min(R.n, R.val_pi(a) + R.val_pi(b))


@given(rings)
def test_unit_count_and_uniformizer(R):
    assert len(R.unit_group()) == R.size - R.size // R.q
    assert R.val_pi(R.pi) == (1 if R.n > 1 else R.n)
    assert R.pi_power(R.n) == 0


@given(rings, st.data())
def test_matrix_inverse_and_det(R, data):
    unit = st.sampled_from(R.unit_group())
    el = st.integers(0, R.size - 1)
    x = (data.draw(unit), data.draw(el), R.mul[R.pi][data.draw(el)], data.draw(unit))
    y = (data.draw(unit), R.mul[R.pi][data.draw(el)], data.draw(el), data.draw(unit))
    assert mat_mul(R, x, mat_inv(R, x)) == (1, 0, 0, 1)
    assert det(R, mat_mul(R, x, y)) == R.mul[det(R, x)][det(R, y)]


@given(values, values, values)
def test_value_order_is_lexicographic_on_reversed_coordinates(a, b, c):
    lt = a.flat > b.flat or (a.flat == b.flat and a.sharp > b.sharp)
    assert (a < b) == lt
    assert (a < b) + (b < a) + (a == b) == 1
    if a < b and b < c:
        assert a < c
    assert (a + b) - b == a


def test_value_examples():
    assert RankTwoLog(1, -9) < RankTwoLog(Fraction(1, 2), -9) < RankTwoLog(0, 3) < RankTwoLog(0, 0)
    assert RankTwoLog(0, 0).is_one
    assert RankTwoLog(Fraction(1, 2), -9).to_json() == {"flat": "1/2", "sharp": -9}


@pytest.mark.parametrize("spec", ALL_RINGS)
def test_gl2_order(spec):
    ctx = ctx_for(spec)
    assert ctx.G.order == gl2_order(ctx.q, ctx.n)
    assert ctx.G.is_subgroup()


def test_group_orders_small():
    orders = {s: ctx_for(s).G.order for s in ["2:1:1:mixed", "2:1:2:mixed", "2:2:1:equal",
                                             "3:1:1:mixed", "3:1:2:mixed"]}
    assert orders == {"2:1:1:mixed": 6, "2:1:2:mixed": 96, "2:2:1:equal": 180,
                      "3:1:1:mixed": 48, "3:1:2:mixed": 3888}


@pytest.mark.parametrize("spec", SMALL_RINGS)
def test_named_subgroups_are_subgroups(spec):
    ctx = ctx_for(spec)
    for name, H in named_subgroups(ctx.G, ctx.n, max(ctx.n - 1, 0)).items():
        assert H.is_subgroup(), name
        assert ctx.G.order % H.order == 0, name


def test_iwahori_layers_nest():
    ctx = ctx_for("2:1:2:mixed")
    layers = [iwahori_congruence(ctx.G, m) for m in range(0, 5)]
    assert layers[0].order == ctx.iwahori.order == 32
    for big, small in zip(layers, layers[1:]):
        assert set(small) <= set(big)
    assert layers[-1].order == 1
    with pytest.raises(ValueError):
        iwahori_congruence(ctx.G, 5)


def test_iwahori_is_pi_prime_stable():
    ctx = ctx_for("3:1:2:mixed")
    K = set(ctx.iwahori)
    assert all(pi_prime_conjugate(ctx.ring, x) in K for x in K)


def test_double_cosets_partition():
    ctx = ctx_for("2:1:2:mixed")
    dc = double_cosets(ctx.iwahori, ctx.G, ctx.iwahori)
    assert sorted(s for _, s in dc) == [32, 64]
    assert sum(s for _, s in dc) == ctx.G.order


def test_second_stabilizer_matches_conjugated_borel():
    ctx = ctx_for("2:1:2:mixed")
    assert ctx.second_stabilizer.order == 4
    assert intersect(ctx.iwahori, ctx.stabilizer).order == ctx.stabilizer.order


def test_bad_rings():
    with pytest.raises(ValueError):
        make_ring(4, 1, 1)
    with pytest.raises(ValueError):
        make_ring(2, 2, 1, "mixed")
    with pytest.raises(ValueError):
        make_ring(2, 1, 1, "weird")
    with pytest.raises(ValueError):
        parse_ring_spec("2:1")


def test_cap_fails_fast():
    with pytest.raises(CapExceeded):
        enumerate_gl2(make_ring(3, 1, 2), cap=100)

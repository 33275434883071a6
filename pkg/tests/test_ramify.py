from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from ltswan.algebra import RankTwoLog, mat_mul
from ltswan.chars import ClassFunction, inner_product
from ltswan.ramify import (
    NotInStabilizer,
    build_filtration,
    delta_class_function,
    expected_jumps,
    expected_upper,
    filtration,
    h_of,
    herbrand_upper,
    second_end_filtration,
    sw_class_function,
)

from conftest import ALL_RINGS, SMALL_RINGS, ctx_for


@pytest.mark.parametrize("spec", ALL_RINGS)
def test_jumps_match_closed_form(spec):
    ctx = ctx_for(spec)
    filt = filtration(ctx)
    assert [(jp.value, jp.order) for jp in filt.jumps] == expected_jumps(ctx.q, ctx.n)


@pytest.mark.parametrize("spec", ALL_RINGS)
def test_upper_jumps_match_closed_form(spec):
    ctx = ctx_for(spec)
    upper = herbrand_upper(filtration(ctx))
    sharps, last_flat = expected_upper(ctx.q, ctx.n)
    assert [u.sharp for u in upper] == sharps
    assert upper[-1].flat == last_flat


def test_filtration_q2_n2():
    filt = filtration(ctx_for("2:1:2:mixed"))
    assert [(jp.value, jp.order) for jp in filt.jumps] == [
        (RankTwoLog(0, 3), 8), (RankTwoLog(Fraction(1, 2), -9), 4), (RankTwoLog(1, -9), 2)]
    assert [(u.flat, u.sharp) for u in herbrand_upper(filt)] == [
        (0, 3), (2, -3), (3, -3)]


@pytest.mark.parametrize("spec", SMALL_RINGS + ["3:1:2:mixed"])
def test_layers_are_nested_subgroups(spec):
    filt = filtration(ctx_for(spec))
    prev = set(filt.group)
    for jp in filt.jumps:
        assert jp.members.is_subgroup()
        assert set(jp.members) <= prev
        prev = set(jp.members)
    vals = [jp.value for jp in filt.jumps]
    assert all(b < a for a, b in zip(vals, vals[1:]))


@pytest.mark.parametrize("spec", SMALL_RINGS)
def test_h_is_a_class_function_of_the_stabilizer(spec):
    ctx = ctx_for(spec)
    H, ring = ctx.stabilizer, ctx.ring
    for g in H.generators:
        for x in H:
            y = mat_mul(ring, mat_mul(ring, g, x), H.inv(g))
            assert h_of(x, ring) == h_of(y, ring)


@pytest.mark.parametrize("spec", SMALL_RINGS)
def test_conductor_class_functions_sum_to_zero(spec):
    filt = filtration(ctx_for(spec))
    triv = ClassFunction.trivial(filt.group)
    assert inner_product(sw_class_function(filt), triv).is_zero
    assert inner_product(delta_class_function(filt), triv).is_zero


@given(st.sampled_from(SMALL_RINGS), st.data())
def test_h_depends_only_on_congruence_depth(spec, data):
    ctx = ctx_for(spec)
    ring = ctx.ring
    x = data.draw(st.sampled_from(ctx.stabilizer.elements))
    v = h_of(x, ring)
    a, b = x[0], x[1]
    if a == 1 and b == 0:
        assert v is None
    elif a == 1:
        assert v.sharp == -ring.q ** (2 * ring.n - 1) - 1
        assert v.flat == Fraction(1, (ring.q - 1) * ring.q ** (ring.n - ring.val_pi(b) - 1))
    else:
        i = ring.val_pi(ring.sub(a, 1))
        assert v == RankTwoLog(0, ring.q ** (2 * i) - 1 if i else 0)


def test_h_rejects_non_stabilizer():
    ring = ctx_for("2:1:2:mixed").ring
    with pytest.raises(NotInStabilizer):
        h_of((1, 0, 2, 1), ring)
    with pytest.raises(NotInStabilizer):
        h_of((2, 0, 0, 2), ring)


def test_build_filtration_skips_tame_values():
    ctx = ctx_for("3:1:1:mixed")
    filt = build_filtration(ctx.stabilizer, lambda x: h_of(x, ctx.ring))
    assert len(filt.jumps) == 1
    assert filt.jumps[0].order == 3


@pytest.mark.parametrize("spec", ["2:1:2:mixed", "3:1:2:mixed"])
def test_second_end_keeps_the_outer_and_deepest_layers(spec):
    ctx = ctx_for(spec)
    q = ctx.q
    f2 = second_end_filtration(ctx)
    exp = expected_jumps(q, 2)
    assert f2.group.order == (q - 1) * q * q
    assert [(jp.value, jp.order) for jp in f2.jumps] == [(exp[0][0], q * q), exp[-1]]

from __future__ import annotations

import random

import pytest
from hypothesis import given, settings, strategies as st

from eschenburg import fixed_point as fp
from eschenburg.espaces import E2Params, EschParams, esch_is_free
from eschenburg.exact_arith import HALF, ZERO, RationalAngle as R
from eschenburg.fixed_point import EigMonomial as M
from eschenburg.group_catalog import (
    IDENTITY_TUPLE, MINUS_ONE, IsometryTuple, JCoset, Torus, build_group, close_subgroup,
    lift_su2_group,
)

E1 = lambda p: E2Params((1, 1, p))  # noqa: E731


def _show(triple):
    return [(m.z_exp, m.const) for m in triple]


def test_eig_triples_e1():
    g = build_group("2T").elements[5]
    t = g.eigen_angle()
    left, right = fp.eig_triples(E1(2), IsometryTuple(g2=g))
    assert _show(left) == [(1, ZERO), (1, ZERO), (2, ZERO)]
    assert _show(right) == [(0, t), (0, -t), (4, ZERO)]


def test_eig_triples_identity():
    left, right = fp.eig_triples(E2Params((1, 2, 3)), IDENTITY_TUPLE)
    assert _show(left) == [(1, ZERO), (2, ZERO), (3, ZERO)]
    assert _show(right) == [(0, ZERO), (0, ZERO), (6, ZERO)]


def test_eig_triples_left_torus():
    # diag(-1, 1, -1) on the left: w1 = theta = 1/4
    q = R(1, 4)
    left, right = fp.eig_triples(E2Params((1, 2, 3)), IsometryTuple(w1=q, g1=Torus(q)))
    assert _show(left) == [(1, HALF), (2, ZERO), (3, HALF)]
    assert _show(right) == [(0, ZERO), (0, ZERO), (6, ZERO)]


def test_eig_triples_unsupported():
    with pytest.raises(fp.UnsupportedFactor):
        fp.eig_triples(E2Params((1, 2, 3)), IsometryTuple(g1=JCoset(ZERO)))


def test_witness_examples():
    w = R(1, 3)
    assert fp.fixed_point_witness((M(1), M(1), M(2)), (M(0, w), M(0, w * 2), M(4))) == (w, 1)
    assert fp.fixed_point_witness((M(1), M(1), M(1)), (M(1), M(1), M(1))) == (ZERO, 0)
    z, _ = fp.fixed_point_witness((M(1), M(1), M(2)), (M(0, HALF), M(0, HALF), M(4)))
    assert z == HALF


def test_witness_none():
    # z, z, z^2 against two distinct nontrivial constants that z cannot both hit
    assert fp.fixed_point_witness((M(1), M(1), M(2)), (M(0, R(1, 3)), M(0, R(1, 5)), M(0, R(1, 7)))) is None


def test_kernel_examples():
    assert fp.is_in_action_kernel(E1(2), IsometryTuple(g1=MINUS_ONE))
    assert fp.is_in_action_kernel(E1(3), IsometryTuple(g2=MINUS_ONE))
    assert not fp.is_in_action_kernel(E1(2), IsometryTuple(g2=MINUS_ONE))
    assert not fp.is_in_action_kernel(E2Params((1, 2, 4)), IsometryTuple(g2=MINUS_ONE))
    # all p_i odd: right -id acts trivially
    assert fp.is_in_action_kernel(E2Params((1, 3, 5)), IsometryTuple(g2=MINUS_ONE))


def test_action_free_examples():
    q8 = lift_su2_group(build_group("quaternion8"), "right")
    cert = fp.action_is_free(E1(1), q8, "Q8")
    assert cert.free and cert.descriptor.invariant_factors == (2, 2)
    z5 = close_subgroup([IsometryTuple(g2=Torus(R(1, 5)))])
    cert = fp.action_is_free(E2Params((1, 1, 4)), z5, "Z5")
    assert not cert.free and cert.witness.z.den == 5
    assert fp.witness_is_valid(E2Params((1, 1, 4)), cert.witness)
    assert fp.action_is_free(E2Params((1, 2, 3)), close_subgroup([]), "1").free


def test_action_certificate_json():
    z5 = close_subgroup([IsometryTuple(g2=Torus(R(1, 5)))])
    doc = fp.action_is_free(E2Params((1, 1, 4)), z5, "cyclic:5").to_json()
    assert doc["verdict"] == "NotFree"
    assert set(doc["witness"]) == {"z", "bijection", "element"}
    assert doc["witness"]["z"] == "1/5"


def test_left_block_rearranged_for_mirror_triples():
    q8 = lift_su2_group(build_group("quaternion8"), "left")
    a = fp.action_is_free(E2Params((1, 1, 2)), q8, "Q8")
    b = fp.action_is_free(E2Params((1, 2, 1)), q8, "Q8")
    assert a.free == b.free


@pytest.mark.parametrize("p,side,free", [
    ((1, 1, 2), "right", False),
    ((1, 1, 2), "left", True),
    ((1, 1, 1), "right", True),
    ((1, 1, 1), "left", False),
    ((1, 1, 3), "left", False),
    ((1, 1, 3), "right", False),
    ((1, 3, 5), "right", False),
    ((-3, 1, 1), "right", True),
])
def test_so3_factor(p, side, free):
    cert = fp.so3_factor_is_free(E2Params(p), side)
    assert cert.free == free
    if not free:
        assert fp.witness_is_valid(E2Params(p), cert.witness, side)


def test_so3_no_left_factor():
    with pytest.raises(fp.NoSuchFactor):
        fp.so3_factor_is_free(E2Params((1, 2, 3)), "left")
    assert fp.available_sides(E2Params((1, 2, 3))) == ["right"]


def test_so3_right_witness_has_vertex_order():
    # the order-3 lens orbit of (1,1,2) is visible to the right factor
    w = fp.so3_factor_is_free(E2Params((1, 1, 2)), "right").witness
    assert w.free_eigen in (HALF, R(1, 3))


def _conjugate(group, c1, c2):
    return close_subgroup([IsometryTuple(g.w1, c1 * g.g1 * c1.inverse(), g.w2, c2 * g.g2 * c2.inverse())
                           for g in group.elements])


def test_conjugation_invariance_randomized():
    rng = random.Random(7)
    spaces = [E1(p) for p in range(1, 9)] + [E2Params(p) for p in ((1, 2, 3), (1, 3, 5), (1, 2, 5))]
    choices = ["cyclic:3", "cyclic:4", "cyclic:5", "bindihedral:2", "bindihedral:3", "2T"]
    for _ in range(200):
        space = rng.choice(spaces)
        kind = rng.choice(choices)
        side = rng.choice(fp.available_sides(space))
        group = lift_su2_group(build_group(kind), side)
        if kind == "2T":
            pool = build_group("2O").elements
        else:
            pool = [Torus(R(k, 12)) for k in range(12)] + [JCoset(R(k, 12)) for k in range(12)]
        c1, c2 = rng.choice(pool), rng.choice(pool)
        if kind != "2T":
            c1 = c1 if side == "left" else c1
        conj = _conjugate(group, c1, c2)
        a = fp.action_is_free(space, group, describe=False).free
        b = fp.action_is_free(space, conj, describe=False).free
        assert a == b, (space, kind, side, c1, c2)


SAMPLE_Z0 = [R(1, n) for n in range(2, 62)]


@settings(max_examples=300, deadline=None)
@given(st.tuples(*[st.integers(-12, 12)] * 3), st.tuples(*[st.integers(-12, 12)] * 2))
def test_circle_action_consistency(a, b2):
    b = (b2[0], b2[1], sum(a) - sum(b2))
    if abs(b[2]) > 12:
        return
    params = EschParams(a, b)
    hit = any(fp.circle_has_fixed_point(params, z0) for z0 in SAMPLE_Z0)
    assert hit == (not esch_is_free(params))

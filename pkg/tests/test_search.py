from __future__ import annotations

import itertools

import pytest
from hypothesis import given, settings, strategies as st

from eschenburg import fixed_point as fp, search
from eschenburg.espaces import E2Params, e2_is_free, e2_is_positively_curved, e2_normalize
from eschenburg.exact_arith import RationalAngle as R
from eschenburg.group_catalog import (
    MINUS_ONE, IsometryTuple, build_group, close_subgroup, lift_su2_group,
)
from eschenburg.search import SweepConfig, enumerate_canonical


def _triples(bound, **kw):
    return [e.p for e in enumerate_canonical(SweepConfig(bound, **kw))]


def test_enumerate_examples():
    got = _triples(2)
    assert (1, 1, 1) in got and (1, 1, 2) in got and (-2, 1, 1) in got
    assert (1, 2, 2) not in got
    assert _triples(1) == [(1, 1, 1)]


def test_enumerate_is_sorted_and_unique():
    got = _triples(6)
    assert got == sorted(set(got))


def test_enumerate_matches_brute_force():
    b = 4
    expected = set()
    for p in itertools.product(range(-b, b + 1), repeat=3):
        if not any(p):
            continue
        e = E2Params(p)
        if e2_is_free(e) and e2_is_positively_curved(e):
            expected.add(e2_normalize(e).p)
    assert set(_triples(b)) == expected


@settings(max_examples=15, deadline=None)
@given(st.integers(1, 7), st.integers(2, 5))
def test_shards_partition(bound, n):
    whole = _triples(bound)
    parts = [p for i in range(n) for p in _triples(bound, shard=(i, n))]
    assert sorted(parts) == whole


def test_family_filter():
    assert all(p[:2] == (1, 1) or p[1:] == (1, 1) for p in _triples(5, family="E1"))


def test_bad_config():
    with pytest.raises(ValueError):
        SweepConfig(3, shard=(2, 2))
    with pytest.raises(ValueError):
        SweepConfig(0)


def test_dirichlet_examples():
    assert search.dirichlet_triples(4, 1) == [(5, 13, 17)]
    assert search.dirichlet_triples(1, 1) == [(2, 3, 5)]
    assert search.dirichlet_triples(60, 1) == [(61, 181, 241)]
    assert search.dirichlet_triples(12, 3) == [(13, 37, 61), (13, 37, 73), (13, 37, 97)]


def test_dirichlet_stream_distinct_and_valid():
    got = list(itertools.islice(search.dirichlet_stream(24), 40))
    assert len(set(got)) == 40
    for t in got:
        assert len(set(t)) == 3 and all(x % 24 == 1 for x in t)


def test_order_criterion_examples():
    q8_left = lift_su2_group(build_group("quaternion8"), "left")
    assert search.order_criterion_free(2, q8_left)
    z4_right = lift_su2_group(build_group("cyclic:4"), "right")
    assert not search.order_criterion_free(3, z4_right)
    bad = close_subgroup([IsometryTuple(g1=MINUS_ONE)])
    assert not search.order_criterion_free(3, bad)


def test_order_criterion_rejects_phases():
    group = close_subgroup([IsometryTuple(w1=R(1, 3))])
    with pytest.raises(search.UnsupportedGroup):
        search.order_criterion_free(2, group)


def test_order_comparison_product_groups_agree():
    report = search.order_comparison(max_p=6)
    assert report.rows
    assert not [r for r in report.disagreements if r.product]


def test_pmap_order_preserving():
    assert search.pmap(abs, [-3, 2, -1, 0], jobs=2) == [3, 2, 1, 0]


def test_default_jobs(monkeypatch):
    monkeypatch.setenv(search.JOBS_ENV, "3")
    assert search.default_jobs() == 3


def test_theorem_b_case_p1():
    rec = search.theorem_b_case((1, 3))
    assert rec["certified"] and rec["placement"] == "left-circle"


def test_small_suites_pass():
    for suite in ("invariant-formulas", "bazaikin", "atlas"):
        assert search.verify_theorems(suite).passed
    assert search.verify_theorems("cross-oracle", bound=6).passed
    rep = search.verify_theorems("so3-classification", bound=8)
    assert rep.passed and rep.summary["free_spaces"] == [[1, 1, 1], [1, 1, 2]]


def test_sharded_suite_is_deterministic():
    a = search.verify_theorems("so3-classification", bound=6, jobs=1).lines()
    b = search.verify_theorems("so3-classification", bound=6, jobs=2).lines()
    assert a == b


def test_unknown_suite():
    with pytest.raises(ValueError):
        search.verify_theorems("nope")


@pytest.mark.parametrize("p", [3, 7, 11])
def test_q8_alone_has_fixed_points_when_four_divides_p_plus_one(p):
    # the uncertified Theorem B cases: the Q8 factor on its own already has fixed points
    space = E2Params((1, 1, p))
    group = search.theorem_b_group(p, 1, "left-circle")
    cert = fp.action_is_free(space, group, describe=False)
    assert not cert.free and fp.witness_is_valid(space, cert.witness)
    assert not search.order_criterion_free(p, lift_su2_group(build_group("quaternion8"), "right"))

from __future__ import annotations

import itertools

import pytest
from hypothesis import given, strategies as st

from eschenburg.espaces import (
    BazParams, E2Params, EschParams, NotFree, NotPositivelyCurved, TwistedFlag, baz_is_free,
    baz_is_positively_curved, classify_family, e1_parameter, e2_is_free, e2_is_positively_curved,
    e2_normalize, esch_is_free, esch_is_positively_curved, esch_to_e2, parse_space,
)


def test_esch_freeness_examples():
    assert esch_is_free(EschParams((1, 2, 3), (0, 0, 6)))
    assert not esch_is_free(EschParams((3, 3, 1), (0, 0, 7)))
    assert esch_is_free(EschParams((2, 1, -3), (0, 0, 0)))


def test_esch_curvature_examples():
    assert esch_is_positively_curved(EschParams((1, 1, 2), (0, 0, 4)))
    assert not esch_is_positively_curved(EschParams((1, 0, -1), (0, 0, 0)))
    assert esch_is_positively_curved(EschParams((1, 1, 1), (0, 0, 3)))


def test_sum_condition_enforced():
    with pytest.raises(ValueError):
        EschParams((1, 2, 3), (0, 0, 5))


@pytest.mark.parametrize("p,norm", [((2, 1, 1), (1, 1, 2)), ((-1, -1, -2), (1, 1, 2)),
                                    ((1, 1, -2), (-2, 1, 1)), ((-3, -1, 2), (-2, 1, 3))])
def test_e2_normalize_examples(p, norm):
    assert e2_normalize(E2Params(p)).p == norm


def test_e2_predicate_examples():
    assert e2_is_free(E2Params((1, 1, 2)))
    assert not e2_is_free(E2Params((3, 3, 1)))
    assert e2_is_free(E2Params((2, 1, 5)))
    assert e2_is_positively_curved(E2Params((1, 2, 3)))
    assert e2_is_positively_curved(E2Params((1, 1, -2)))
    assert not e2_is_positively_curved(E2Params((-2, 1, 3)))


def test_baz_examples():
    assert baz_is_free(BazParams((1, 1, 1, 1, 1)))
    assert not baz_is_free(BazParams((1, 1, 1, 1, 2)))
    assert not baz_is_free(BazParams((1, 1, 1, 3, 3)))
    assert baz_is_positively_curved(BazParams((1, 1, 1, 1, 3)))
    assert not baz_is_positively_curved(BazParams((1, 1, 1, 1, -1)))
    assert baz_is_positively_curved(BazParams((-1, 3, 3, 3, 3)))


def test_cross_oracle_exhaustive_small():
    for p in itertools.product(range(-8, 9), repeat=3):
        if not any(p):
            continue
        e = E2Params(p)
        assert e2_is_free(e) == esch_is_free(e.as_esch()), p
        assert e2_is_positively_curved(e) == esch_is_positively_curved(e.as_esch()), p


triple = st.tuples(*[st.integers(-30, 30)] * 3).filter(any)


@given(triple, st.permutations(range(3)), st.booleans())
def test_e2_predicates_symmetric(p, perm, flip):
    e = E2Params(p)
    q = tuple((-1 if flip else 1) * p[i] for i in perm)
    f = E2Params(q)
    assert e2_is_free(e) == e2_is_free(f)
    assert e2_is_positively_curved(e) == e2_is_positively_curved(f)
    assert e2_normalize(e) == e2_normalize(f)


@given(triple)
def test_e2_normalize_idempotent_and_preserving(p):
    e = E2Params(p)
    n = e2_normalize(e)
    assert e2_normalize(n) == n
    assert e2_is_free(n) == e2_is_free(e)
    assert e2_is_positively_curved(n) == e2_is_positively_curved(e)


@given(triple, triple, st.permutations(range(3)))
def test_esch_predicates_symmetric(a, b, perm):
    shift = sum(a) - sum(b)
    b = (b[0], b[1], b[2] + shift)
    x = EschParams(a, b)
    # permuting a, and negating both triples jointly
    y = EschParams(tuple(-a[i] for i in perm), tuple(-v for v in b))
    assert esch_is_free(x) == esch_is_free(y)
    assert esch_is_positively_curved(x) == esch_is_positively_curved(y)


@given(st.tuples(*[st.integers(-9, 9)] * 5), st.permutations(range(5)))
def test_baz_predicates_symmetric(p, perm):
    q = tuple(p[i] for i in perm)
    assert baz_is_free(BazParams(p)) == baz_is_free(BazParams(q))
    assert baz_is_positively_curved(BazParams(p)) == baz_is_positively_curved(BazParams(q))


def test_classify_examples():
    c = classify_family(E2Params((1, 1, 5)))
    assert str(c.family) == "E1(5)" and c.cohomogeneity == 1
    c = classify_family(E2Params((1, 1, -2)))
    assert str(c.family) == "AloffWallach(1,1)" and c.cohomogeneity == 0
    assert [str(t) for t in c.also] == ["E1(1)"]
    c = classify_family(E2Params((1, 2, 3)))
    assert str(c.family) == "E2Generic" and c.cohomogeneity == 2


def test_classify_more_families():
    assert [str(t) for t in classify_family(E2Params((1, 1, 1))).also] == ["AloffWallach(1,1)"]
    assert str(classify_family(E2Params((2, 1, -3))).family) == "AloffWallach(2,1)"
    assert str(classify_family(E2Params((-3, 1, 1))).family) == "E1(2)"
    assert str(classify_family(BazParams((1, 1, 1, 1, 3))).family) == "Bazaikin1(2)"
    assert str(classify_family(BazParams((1, 1, 1, 3, 5))).family) == "BazaikinGeneric"
    assert classify_family(TwistedFlag()).cohomogeneity == 2


def test_classify_general_eschenburg():
    # an equal pair in b reduces to an E2 triple after a joint shift
    c = classify_family(EschParams((3, 4, 5), (2, 2, 8)))
    assert c.family.name == "E2Generic" and c.e2 == E2Params((1, 2, 3))
    c = classify_family(EschParams((-4, -3, -1), (0, 4, -12)))
    assert c.family.name == "EschGeneric" and c.cohomogeneity == 4


def test_classify_rejects():
    with pytest.raises(NotFree):
        classify_family(E2Params((3, 3, 1)))
    with pytest.raises(NotPositivelyCurved):
        classify_family(E2Params((-2, 1, 3)))
    with pytest.raises(NotFree):
        classify_family(BazParams((1, 1, 1, 3, 3)))


def test_e1_mirror():
    assert e1_parameter(E2Params((1, 1, 7))) == 7
    assert e1_parameter(E2Params((1, -8, 1))) == 7
    assert e1_parameter(E2Params((1, 2, 3))) is None


def test_parse_space():
    assert parse_space("1,1,5") == E2Params((1, 1, 5))
    assert parse_space("1,2,3/0,0,6") == EschParams((1, 2, 3), (0, 0, 6))
    assert parse_space("1,1,1,1,3") == BazParams((1, 1, 1, 1, 3))
    assert parse_space("twisted-flag") == TwistedFlag()
    for bad in ("1,2", "a,b,c", "1,2,3/0,0", "0,0,0"):
        with pytest.raises(ValueError):
            parse_space(bad)


@given(st.tuples(*[st.integers(-15, 15)] * 3).filter(any))
def test_esch_to_e2_round_trip(p):
    e = E2Params(p)
    assert esch_to_e2(e.as_esch()) == e

"""
Eschenburg, E2, Aloff-Wallach and Bazaikin parameters: freeness, positive
curvature, normal forms and family labels.
"""
from __future__ import annotations

import dataclasses
import itertools
from math import gcd
from typing import Union


class ClassificationError(ValueError):
    """Parameters outside the positively curved family."""

    def __init__(self, reason: str, params):
        super().__init__(f"{reason}: {params}")
        self.reason = reason
        self.params = params


class NotFree(ClassificationError):
    def __init__(self, params, condition: str):
        super().__init__(f"action not free ({condition})", params)
        self.condition = condition


class NotPositivelyCurved(ClassificationError):
    def __init__(self, params, condition: str):
        super().__init__(f"not positively curved ({condition})", params)
        self.condition = condition


@dataclasses.dataclass(frozen=True)
class EschParams:
    a: tuple[int, int, int]
    b: tuple[int, int, int]

    def __post_init__(self):
        object.__setattr__(self, "a", tuple(int(x) for x in self.a))
        object.__setattr__(self, "b", tuple(int(x) for x in self.b))
        if len(self.a) != 3 or len(self.b) != 3:
            raise ValueError("Eschenburg parameters are two integer triples")
        if sum(self.a) != sum(self.b):
            raise ValueError(f"sum(a) != sum(b) for {self.a}/{self.b}")

    def __str__(self) -> str:
        return ",".join(map(str, self.a)) + "/" + ",".join(map(str, self.b))


@dataclasses.dataclass(frozen=True)
class E2Params:
    p: tuple[int, int, int]

    def __post_init__(self):
        object.__setattr__(self, "p", tuple(int(x) for x in self.p))
        if len(self.p) != 3:
            raise ValueError("an E2 parameter is an integer triple")
        if not any(self.p):
            raise ValueError("E2 triple must not be all zero")

    def as_esch(self) -> EschParams:
        return EschParams(self.p, (0, 0, sum(self.p)))

    def __str__(self) -> str:
        return ",".join(map(str, self.p))


@dataclasses.dataclass(frozen=True)
class BazParams:
    p: tuple[int, int, int, int, int]

    def __post_init__(self):
        object.__setattr__(self, "p", tuple(int(x) for x in self.p))
        if len(self.p) != 5:
            raise ValueError("a Bazaikin parameter is an integer 5-tuple")

    @property
    def q(self) -> int:
        return sum(self.p)

    def __str__(self) -> str:
        return ",".join(map(str, self.p))


@dataclasses.dataclass(frozen=True)
class TwistedFlag:
    """The six-dimensional Eschenburg flag SU(3)//T^2."""

    def __str__(self) -> str:
        return "twisted-flag"


SpaceParams = Union[EschParams, E2Params, BazParams, TwistedFlag]


def parse_space(text: str) -> SpaceParams:
    """
    ``p1,p2,p3`` (E2), ``a1,a2,a3/b1,b2,b3`` (Eschenburg), ``p1,...,p5`` (Bazaikin)
    or ``twisted-flag``.
    """
    text = text.strip()
    if text in ("twisted-flag", "flag", "E6"):
        return TwistedFlag()
    try:
        if "/" in text:
            a, b = text.split("/")
            return EschParams(_ints(a), _ints(b))
        vals = _ints(text)
    except ValueError as exc:
        raise ValueError(f"malformed space parameters {text!r}: {exc}") from None
    if len(vals) == 3:
        return E2Params(vals)
    if len(vals) == 5:
        return BazParams(vals)
    raise ValueError(f"expected 3 or 5 integers, got {len(vals)} in {text!r}")


def _ints(s: str) -> tuple[int, ...]:
    return tuple(int(x) for x in s.split(","))


# --------------------------------------------------------------------------
# Eschenburg spaces


def esch_is_free(params: EschParams) -> bool:
    a, b = params.a, params.b
    return all(gcd(a[0] - b[s[0]], a[1] - b[s[1]]) == 1 for s in itertools.permutations(range(3)))


def _outside(vals, lo, hi) -> bool:
    return all(v < lo or v > hi for v in vals)


def esch_is_positively_curved(params: EschParams) -> bool:
    a, b = params.a, params.b
    return _outside(b, min(a), max(a)) or _outside(a, min(b), max(b))


# --------------------------------------------------------------------------
# E2 triples


def _normal(p) -> tuple[int, int, int]:
    sp = tuple(sorted(p))
    sn = tuple(sorted(-x for x in p))
    pos_p = sum(x > 0 for x in sp) - sum(x < 0 for x in sp)
    if pos_p > 0:
        return sp
    if pos_p < 0:
        return sn
    return max(sp, sn, key=lambda t: t[::-1])


def e2_normalize(p: E2Params) -> E2Params:
    """
    Sorted representative up to reordering and global sign.

    The sign is chosen so that positive entries are in the majority; ties
    (a zero entry with opposite signs, or all zeros) fall back to the larger
    reversed tuple.
    """
    return E2Params(_normal(p.p))


def e2_is_free(p: E2Params) -> bool:
    x, y, z = p.p
    return gcd(x, y) == 1 and gcd(x, z) == 1 and gcd(y, z) == 1


def e2_is_positively_curved(p: E2Params) -> bool:
    for sign in (1, -1):
        for q1, q2, q3 in itertools.permutations([sign * x for x in p.p]):
            if 0 < q1 <= q2 <= q3:
                return True
            if 0 < q2 <= q3 and q1 < -q3:
                return True
    return False


# --------------------------------------------------------------------------
# Bazaikin


def _pair_splits():
    # unordered pairs of disjoint unordered index pairs from 5 slots
    seen = set()
    for s in itertools.permutations(range(5)):
        key = frozenset((frozenset(s[:2]), frozenset(s[2:4])))
        if key not in seen:
            seen.add(key)
            yield s


_BAZ_SPLITS = tuple(_pair_splits())


def baz_is_free(p: BazParams) -> bool:
    v = p.p
    if any(x % 2 == 0 for x in v):
        return False
    return all(gcd(v[s[0]] + v[s[1]], v[s[2]] + v[s[3]]) == 2 for s in _BAZ_SPLITS)


def baz_is_positively_curved(p: BazParams) -> bool:
    lo = sorted(p.p)
    return lo[0] + lo[1] > 0


# --------------------------------------------------------------------------
# families


@dataclasses.dataclass(frozen=True)
class FamilyTag:
    name: str  # AloffWallach | E1 | E2Generic | EschGeneric | TwistedFlag | Bazaikin1 | BazaikinGeneric
    k: int | None = None
    l: int | None = None
    p: int | None = None

    def __str__(self) -> str:
        if self.name == "AloffWallach":
            return f"AloffWallach({self.k},{self.l})"
        if self.name in ("E1", "Bazaikin1"):
            return f"{self.name}({self.p})"
        return self.name


COHOMOGENEITY = {
    "AloffWallach": 0, "E1": 1, "Bazaikin1": 1,
    "E2Generic": 2, "TwistedFlag": 2, "EschGeneric": 4,
}


@dataclasses.dataclass(frozen=True)
class Classification:
    family: FamilyTag
    cohomogeneity: int | None
    also: tuple[FamilyTag, ...] = ()
    e2: E2Params | None = None  # E2 normal form when the space reduces to one

    def to_json(self) -> dict:
        return {
            "family": str(self.family),
            "also": [str(t) for t in self.also],
            "cohomogeneity": self.cohomogeneity,
            "e2_normal_form": list(self.e2.p) if self.e2 else None,
        }


def esch_to_e2(params: EschParams) -> E2Params | None:
    """
    An E2 triple describing the same space, if one exists.

    Uses the symmetries a <-> b (inversion on SU(3)), joint shifts of all
    entries (central circle), reordering, and joint negation.
    """
    for x, y in ((params.a, params.b), (params.b, params.a)):
        for i, j in ((0, 1), (0, 2), (1, 2)):
            if y[i] == y[j]:
                shifted = tuple(v - y[i] for v in x)
                if any(shifted):
                    return E2Params(shifted)
    return None


def e1_parameter(p: E2Params) -> int | None:
    """
    p when the triple is (1,1,p) with p > 0, or its mirror (-(p+1),1,1), p >= 1.

    The circle of (1,1,p) and that of (1,1,-p-1) are exchanged by inversion on
    SU(3), so both triples describe E_p.
    """
    x, y, z = _normal(p.p)
    if (x, y) == (1, 1) and z > 0:
        return z
    if (y, z) == (1, 1) and x <= -2:
        return -x - 1
    return None


def aloff_wallach_kl(p: E2Params) -> tuple[int, int] | None:
    """(k, l) with k >= l >= 0 when the triple sums to zero."""
    if sum(p.p) != 0:
        return None
    mags = sorted((abs(x) for x in p.p), reverse=True)
    # triple is (k, l, -(k+l)) up to sign/order; k+l is the largest magnitude
    k, l = mags[1], mags[2]
    return (max(k, l), min(k, l))


def classify_family(params: SpaceParams) -> Classification:
    if isinstance(params, TwistedFlag):
        return Classification(FamilyTag("TwistedFlag"), COHOMOGENEITY["TwistedFlag"])
    if isinstance(params, BazParams):
        return _classify_baz(params)
    if isinstance(params, EschParams):
        if not esch_is_free(params):
            raise NotFree(params, "gcd(a_1 - b_σ(1), a_2 - b_σ(2)) != 1 for some σ")
        if not esch_is_positively_curved(params):
            raise NotPositivelyCurved(params, "b̄ meets [min ā, max ā] and ā meets [min b̄, max b̄]")
        e2 = esch_to_e2(params)
        if e2 is None:
            return Classification(FamilyTag("EschGeneric"), COHOMOGENEITY["EschGeneric"])
        return _classify_e2(e2)
    if not e2_is_free(params):
        raise NotFree(params, "gcd(p_i, p_j) != 1 for some i != j")
    if not e2_is_positively_curved(params):
        raise NotPositivelyCurved(params, "no reordering/sign satisfies 0<p1<=p2<=p3 or 0<p2<=p3, p1<-p3")
    return _classify_e2(params)


def _classify_e2(p: E2Params) -> Classification:
    normal = e2_normalize(p)
    kl = aloff_wallach_kl(p)
    e1 = e1_parameter(p)
    if kl is not None:
        tag = FamilyTag("AloffWallach", k=kl[0], l=kl[1])
        also = (FamilyTag("E1", p=1),) if kl == (1, 1) else ()
        return Classification(tag, COHOMOGENEITY["AloffWallach"], also, normal)
    if e1 is not None:
        also = (FamilyTag("AloffWallach", k=1, l=1),) if e1 == 1 else ()
        return Classification(FamilyTag("E1", p=e1), COHOMOGENEITY["E1"], also, normal)
    return Classification(FamilyTag("E2Generic"), COHOMOGENEITY["E2Generic"], (), normal)


def _classify_baz(p: BazParams) -> Classification:
    if not baz_is_free(p):
        raise NotFree(p, "some p_i even or gcd(p_σ1 + p_σ2, p_σ3 + p_σ4) != 2")
    if not baz_is_positively_curved(p):
        raise NotPositivelyCurved(p, "p_σ1 + p_σ2 <= 0 for some σ")
    s = sorted(p.p)
    if s[:4] == [1, 1, 1, 1] and s[4] >= 1:
        return Classification(FamilyTag("Bazaikin1", p=(s[4] + 1) // 2), COHOMOGENEITY["Bazaikin1"])
    return Classification(FamilyTag("BazaikinGeneric"), None)

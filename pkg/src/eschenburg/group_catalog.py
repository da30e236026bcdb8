"""
Finite subgroups of SU(2) and finite groups of natural isometries.

SU(2) is identified with the unit quaternions, with the diagonal torus
diag(e^{i t}, e^{-i t}) corresponding to cos t + i sin t.  Elements come in
three exact shapes:

* ``Torus(a)``  -- the torus element of angle a (in turns),
* ``JCoset(a)`` -- ``Torus(a) * j``,
* ``Quat(q)``   -- a unit quaternion over Q(sqrt2, sqrt5).

Cyclic and binary dihedral groups of any order live in the first two shapes;
the binary polyhedral groups need quaternions.  A quaternion that happens to be
a torus or j-coset element with angle denominator dividing 8 is always stored
in hybrid form, so every element has one encoding.
"""
from __future__ import annotations

import collections
import dataclasses
import math
from fractions import Fraction
from typing import Iterable, Union

from .exact_arith import (
    F0, RationalAngle, UnitQuaternion, ZERO, HALF, SQRT2, SQRT5,
    FieldElement, eigen_angle_of, exact_cos, quat_order,
)

DEFAULT_CAP = 10_000

QUARTER = RationalAngle(1, 4)


class MixedProductError(TypeError):
    """A torus-type element with no exact quaternion form met a quaternion."""


class CapExceeded(RuntimeError):
    pass


@dataclasses.dataclass(frozen=True)
class Torus:
    angle: RationalAngle

    def __mul__(self, other: Su2Element) -> Su2Element:
        if isinstance(other, Torus):
            return Torus(self.angle + other.angle)
        if isinstance(other, JCoset):
            return JCoset(self.angle + other.angle)
        return _quat_mul(self, other)

    def inverse(self) -> Torus:
        return Torus(-self.angle)

    def order(self) -> int:
        return self.angle.order()

    def eigen_angle(self) -> RationalAngle:
        return self.angle.folded()

    def is_diagonal(self) -> bool:
        return True

    def key(self) -> tuple:
        return (0, self.angle.num, self.angle.den)

    def __str__(self) -> str:
        return f"T({self.angle})"


@dataclasses.dataclass(frozen=True)
class JCoset:
    angle: RationalAngle

    def __mul__(self, other: Su2Element) -> Su2Element:
        # j t(b) = t(-b) j  and  j^2 = -1
        if isinstance(other, Torus):
            return JCoset(self.angle - other.angle)
        if isinstance(other, JCoset):
            return Torus(self.angle - other.angle + HALF)
        return _quat_mul(self, other)

    def inverse(self) -> JCoset:
        return JCoset(self.angle + HALF)

    def order(self) -> int:
        return 4

    def eigen_angle(self) -> RationalAngle:
        return QUARTER

    def is_diagonal(self) -> bool:
        return False

    def key(self) -> tuple:
        return (1, self.angle.num, self.angle.den)

    def __str__(self) -> str:
        return f"J({self.angle})"


@dataclasses.dataclass(frozen=True)
class Quat:
    q: UnitQuaternion

    def __mul__(self, other: Su2Element) -> Su2Element:
        return _quat_mul(self, other)

    def inverse(self) -> Su2Element:
        return canonical(self.q.conj())

    def order(self) -> int:
        return quat_order(self.q)

    def eigen_angle(self) -> RationalAngle:
        return eigen_angle_of(self.q)

    def is_diagonal(self) -> bool:
        return False

    def key(self) -> tuple:
        return (2,) + self.q.key()

    def __str__(self) -> str:
        w, x, y, z = self.q.as_floats()
        return f"Q({w:.4f},{x:.4f},{y:.4f},{z:.4f})"


Su2Element = Union[Torus, JCoset, Quat]

IDENTITY = Torus(ZERO)
MINUS_ONE = Torus(HALF)


def _sin(t: RationalAngle) -> FieldElement:
    return exact_cos(t - QUARTER)


def to_quaternion(g: Su2Element) -> UnitQuaternion:
    if isinstance(g, Quat):
        return g.q
    if g.angle.den > 8 or 8 % g.angle.den:
        raise MixedProductError(f"{g} has no quaternion form over Q(√2,√5)")
    c, s = exact_cos(g.angle), _sin(g.angle)
    if isinstance(g, Torus):
        return UnitQuaternion(c, s, F0, F0)
    return UnitQuaternion(F0, F0, c, s)


_EIGHTHS = [RationalAngle(k, 8) for k in range(8)]


def canonical(q: UnitQuaternion) -> Su2Element:
    """Hybrid form of q when it is a torus or j-coset element, else Quat(q)."""
    if q.y.is_zero() and q.z.is_zero():
        for t in _EIGHTHS:
            if exact_cos(t) == q.w and _sin(t) == q.x:
                return Torus(t)
    if q.w.is_zero() and q.x.is_zero():
        for t in _EIGHTHS:
            if exact_cos(t) == q.y and _sin(t) == q.z:
                return JCoset(t)
    return Quat(q)


def _quat_mul(a: Su2Element, b: Su2Element) -> Su2Element:
    return canonical(to_quaternion(a) * to_quaternion(b))


# --------------------------------------------------------------------------
# catalog of finite subgroups of SU(2)


@dataclasses.dataclass(frozen=True)
class GroupKind:
    family: str  # cyclic | bindihedral | 2T | 2O | 2I
    n: int = 0

    @classmethod
    def parse(cls, name: str) -> GroupKind:
        name = name.strip()
        if name == "quaternion8":
            return cls("bindihedral", 2)
        if name in ("2T", "2O", "2I"):
            return cls(name)
        fam, _, arg = name.partition(":")
        if fam in ("cyclic", "bindihedral") and arg:
            n = int(arg)
            if n < 1:
                raise ValueError(f"group parameter must be positive: {name!r}")
            return cls(fam, n)
        raise ValueError(f"unknown group name {name!r}")

    def expected_order(self) -> int:
        return {"cyclic": self.n, "bindihedral": 4 * self.n,
                "2T": 24, "2O": 48, "2I": 120}[self.family]

    def __str__(self) -> str:
        if self.family in ("cyclic", "bindihedral"):
            return f"{self.family}:{self.n}"
        return self.family


@dataclasses.dataclass(frozen=True)
class FiniteSu2Group:
    kind: GroupKind
    elements: tuple[Su2Element, ...]

    def order_histogram(self) -> dict[int, int]:
        return dict(sorted(collections.Counter(g.order() for g in self.elements).items()))

    def __len__(self) -> int:
        return len(self.elements)


_HALF = Fraction(1, 2)
_QTR = Fraction(1, 4)

# (1+i+j+k)/2, (1+i)/sqrt2, and an icosian of order 10
OMEGA = UnitQuaternion.of(_HALF, _HALF, _HALF, _HALF)
OCT = UnitQuaternion.of(SQRT2 * _HALF, SQRT2 * _HALF, 0, 0)
ICO = UnitQuaternion.of(FieldElement(_QTR, 0, _QTR), FieldElement(-_QTR, 0, _QTR), _HALF, 0)


def su2_closure(generators: Iterable[Su2Element], cap: int = DEFAULT_CAP) -> list[Su2Element]:
    seen = {IDENTITY.key(): IDENTITY}
    frontier = [IDENTITY]
    gens = list(generators)
    while frontier:
        nxt = []
        for g in frontier:
            for h in gens:
                gh = g * h
                k = gh.key()
                if k not in seen:
                    seen[k] = gh
                    nxt.append(gh)
                    if len(seen) > cap:
                        raise CapExceeded(f"closure exceeds {cap} elements")
        frontier = nxt
    return [seen[k] for k in sorted(seen)]


def build_group(kind: GroupKind | str) -> FiniteSu2Group:
    if isinstance(kind, str):
        kind = GroupKind.parse(kind)
    if kind.family == "cyclic":
        elems = [Torus(RationalAngle(k, kind.n)) for k in range(kind.n)]
    elif kind.family == "bindihedral":
        m = 2 * kind.n
        elems = [Torus(RationalAngle(k, m)) for k in range(m)]
        elems += [JCoset(RationalAngle(k, m)) for k in range(m)]
    else:
        i = Torus(QUARTER)
        gens = {
            "2T": [i, Quat(OMEGA)],
            "2O": [Quat(OCT), Quat(OMEGA)],
            "2I": [i, Quat(OMEGA), Quat(ICO)],
        }[kind.family]
        elems = su2_closure(gens)
    elems = sorted(elems, key=lambda g: g.key())
    return FiniteSu2Group(kind, tuple(elems))


# --------------------------------------------------------------------------
# natural isometries: (w1, g1, w2, g2) with central phases w and SU(2) parts g


@dataclasses.dataclass(frozen=True)
class IsometryTuple:
    """
    Left U(2) part ``w1 * g1`` and right U(2) part ``w2 * g2``.

    As a 3x3 matrix the left part is diag(e(w1) g1, e(-2 w1)), likewise on the right.
    """
    w1: RationalAngle = ZERO
    g1: Su2Element = IDENTITY
    w2: RationalAngle = ZERO
    g2: Su2Element = IDENTITY

    def __mul__(self, o: IsometryTuple) -> IsometryTuple:
        return IsometryTuple(self.w1 + o.w1, self.g1 * o.g1, self.w2 + o.w2, self.g2 * o.g2)

    def inverse(self) -> IsometryTuple:
        return IsometryTuple(-self.w1, self.g1.inverse(), -self.w2, self.g2.inverse())

    def key(self) -> tuple:
        return ((self.w1.num, self.w1.den), self.g1.key(), (self.w2.num, self.w2.den), self.g2.key())

    def is_identity(self) -> bool:
        return self == IDENTITY_TUPLE

    def is_pure(self) -> bool:
        return self.w1.is_zero() and self.w2.is_zero()

    def power(self, n: int) -> IsometryTuple:
        out = IDENTITY_TUPLE
        for _ in range(n):
            out = out * self
        return out

    def to_json(self) -> dict:
        return {"w1": str(self.w1), "g1": str(self.g1), "w2": str(self.w2), "g2": str(self.g2)}

    def __str__(self) -> str:
        return f"({self.w1}, {self.g1}, {self.w2}, {self.g2})"


IDENTITY_TUPLE = IsometryTuple()


def left(g: Su2Element, w: RationalAngle = ZERO) -> IsometryTuple:
    return IsometryTuple(w1=w, g1=g)


def right(g: Su2Element, w: RationalAngle = ZERO) -> IsometryTuple:
    return IsometryTuple(w2=w, g2=g)


@dataclasses.dataclass(frozen=True)
class FiniteIsometryGroup:
    elements: tuple[IsometryTuple, ...]
    generators: tuple[IsometryTuple, ...] = ()

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def keys(self) -> set:
        return {g.key() for g in self.elements}


def close_subgroup(generators: Iterable[IsometryTuple], cap: int = DEFAULT_CAP) -> FiniteIsometryGroup:
    """Breadth-first closure; elements sorted by canonical key."""
    gens = tuple(generators)
    seen = {IDENTITY_TUPLE.key(): IDENTITY_TUPLE}
    frontier = [IDENTITY_TUPLE]
    while frontier:
        nxt = []
        for g in frontier:
            for h in gens:
                gh = g * h
                k = gh.key()
                if k not in seen:
                    if len(seen) >= cap:
                        raise CapExceeded(f"closure exceeds {cap} elements")
                    seen[k] = gh
                    nxt.append(gh)
        frontier = nxt
    return FiniteIsometryGroup(tuple(seen[k] for k in sorted(seen)), gens)


def lift_su2_group(group: FiniteSu2Group, side: str) -> FiniteIsometryGroup:
    """Embed a catalog group into one SU(2) factor."""
    put = left if side == "left" else right
    elems = tuple(sorted((put(g) for g in group.elements), key=lambda t: t.key()))
    return FiniteIsometryGroup(elems, elems)


def product_group(g1: FiniteIsometryGroup, g2: FiniteIsometryGroup) -> FiniteIsometryGroup:
    """Direct product of two groups acting on commuting factors."""
    elems = {(a * b).key(): a * b for a in g1 for b in g2}
    return FiniteIsometryGroup(tuple(elems[k] for k in sorted(elems)), g1.generators + g2.generators)


# --------------------------------------------------------------------------
# abstract structure


@dataclasses.dataclass(frozen=True)
class AbstractDescriptor:
    order: int
    histogram: dict[int, int]
    abelian: bool
    invariant_factors: tuple[int, ...] | None = None

    def to_json(self) -> dict:
        return {
            "order": self.order,
            "histogram": {str(k): v for k, v in self.histogram.items()},
            "abelian": self.abelian,
            "invariant_factors": list(self.invariant_factors) if self.invariant_factors is not None else None,
        }


def _prime_factors(n: int) -> list[int]:
    out, p = [], 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def invariant_factors_from_orders(orders: list[int]) -> tuple[int, ...]:
    """
    Invariant factors d1 | d2 | ... of a finite abelian group from its element orders.

    For each prime p, the count of elements killed by p^k is p^(sum of min(k, e_i))
    over the p-primary cyclic exponents e_i, which recovers the partition.
    """
    n = len(orders)
    per_prime: dict[int, list[int]] = {}
    for p in _prime_factors(n):
        logs = [0]
        k = 1
        while True:
            count = sum(1 for o in orders if (p ** k) % o == 0)
            logs.append(_valuation(count, p))
            if count == p ** _valuation(n, p):
                break
            k += 1
        # number of cyclic factors with exponent >= k
        at_least = [logs[k] - logs[k - 1] for k in range(1, len(logs))]
        exps = []
        for k in range(len(at_least)):
            nxt = at_least[k + 1] if k + 1 < len(at_least) else 0
            exps += [k + 1] * (at_least[k] - nxt)
        per_prime[p] = sorted(exps, reverse=True)
    width = max((len(v) for v in per_prime.values()), default=0)
    factors = []
    for idx in range(width):
        d = 1
        for p, exps in per_prime.items():
            if idx < len(exps):
                d *= p ** exps[idx]
        factors.append(d)
    return tuple(sorted(factors)) if factors else ()


def _valuation(n: int, p: int) -> int:
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def _order_mod(g: IsometryTuple, kernel: set, cap: int = DEFAULT_CAP) -> int:
    power = g
    for n in range(1, cap + 1):
        if power.key() in kernel:
            return n
        power = power * g
    raise CapExceeded("element order exceeds cap")


def abstract_type(group: FiniteIsometryGroup, kernel: Iterable[IsometryTuple] = ()) -> AbstractDescriptor:
    """
    Order, element-order histogram, and abelian invariant factors of group/kernel.

    ``kernel`` must be a normal subgroup of ``group`` (the identity is always added).
    """
    ker = {g.key() for g in kernel} | {IDENTITY_TUPLE.key()}
    ker_elems = [g for g in group if g.key() in ker]
    if len(ker_elems) != len(ker):
        raise ValueError("kernel is not contained in the group")
    reps, covered = [], set()
    for g in group:
        if g.key() in covered:
            continue
        reps.append(g)
        covered.update((g * k).key() for k in ker_elems)
    orders = [_order_mod(g, ker) for g in reps]
    hist = dict(sorted(collections.Counter(orders).items()))
    abelian = all(
        (a * b * a.inverse() * b.inverse()).key() in ker
        for i, a in enumerate(reps) for b in reps[i + 1:]
    )
    factors = invariant_factors_from_orders(orders) if abelian else None
    return AbstractDescriptor(len(reps), hist, abelian, factors)

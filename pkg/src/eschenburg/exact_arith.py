"""
Exact arithmetic for roots of unity, the real field Q(sqrt2, sqrt5), and unit
quaternions over that field.

A root of unity e^{2 pi i t} is stored as the rational angle t modulo 1, so that
multiplication of circle elements becomes addition of angles.
"""
from __future__ import annotations

import dataclasses
import functools
import itertools
import math
from fractions import Fraction
from typing import Iterable, Iterator, Sequence


class Overflow(ArithmeticError):
    """No finite order was found within the iteration cap."""


class NoMatch(ValueError):
    """A real part matched none of the admissible cosines."""


@functools.total_ordering
@dataclasses.dataclass(frozen=True, init=False)
class RationalAngle:
    """
    An element of Q/Z, read as the root of unity e^{2 pi i num/den}.

    >>> RationalAngle(5, 4)
    RationalAngle(1/4)
    >>> RationalAngle(1, 3) + RationalAngle(2, 3)
    RationalAngle(0/1)
    """
    num: int
    den: int

    def __init__(self, num: int | Fraction = 0, den: int = 1):
        if den == 0:
            raise ZeroDivisionError("angle with zero denominator")
        value = Fraction(num) / den
        n, d = value.numerator % value.denominator, value.denominator
        object.__setattr__(self, "num", n)
        object.__setattr__(self, "den", d)

    @classmethod
    def parse(cls, text: str) -> RationalAngle:
        if "/" in text:
            n, d = text.split("/")
            return cls(int(n), int(d))
        return cls(Fraction(text))

    @property
    def fraction(self) -> Fraction:
        return Fraction(self.num, self.den)

    def order(self) -> int:
        """Multiplicative order of the root of unity."""
        return self.den

    def is_zero(self) -> bool:
        return self.num == 0

    def __lt__(self, other: RationalAngle) -> bool:
        return self.num * other.den < other.num * self.den

    def __add__(self, other: RationalAngle) -> RationalAngle:
        return RationalAngle(self.fraction + other.fraction)

    def __sub__(self, other: RationalAngle) -> RationalAngle:
        return RationalAngle(self.fraction - other.fraction)

    def __neg__(self) -> RationalAngle:
        return RationalAngle(-self.num, self.den)

    def __mul__(self, k: int) -> RationalAngle:
        # integer multiple, i.e. the k-th power of the circle element
        if not isinstance(k, int):
            return NotImplemented
        return RationalAngle(k * self.num, self.den)

    __rmul__ = __mul__

    def folded(self) -> RationalAngle:
        """Representative of {t, -t} lying in [0, 1/2]."""
        return self if 2 * self.num <= self.den else -self

    def __str__(self) -> str:
        return f"{self.num}/{self.den}"

    def __repr__(self) -> str:
        return f"RationalAngle({self})"


ZERO = RationalAngle(0)
HALF = RationalAngle(1, 2)


def _ext_gcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, u, v) with u*a + v*b = g = gcd(a, b) >= 0."""
    old_r, r = a, b
    old_u, u = 1, 0
    old_v, v = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_u, u = u, old_u - q * u
        old_v, v = v, old_v - q * v
    if old_r < 0:
        old_r, old_u, old_v = -old_r, -old_u, -old_v
    return old_r, old_u, old_v


@dataclasses.dataclass(frozen=True)
class SolutionSet:
    """Solutions of a system z^m = c on the circle: finite, empty, or everything."""
    points: tuple[RationalAngle, ...] = ()
    everything: bool = False

    def __bool__(self) -> bool:
        return self.everything or bool(self.points)

    def __len__(self) -> int:
        if self.everything:
            raise ValueError("the whole circle has no finite size")
        return len(self.points)

    def __iter__(self) -> Iterator[RationalAngle]:
        if self.everything:
            raise ValueError("cannot enumerate the whole circle")
        return iter(self.points)

    def __contains__(self, z: RationalAngle) -> bool:
        return self.everything or z in self.points

    def first(self) -> RationalAngle | None:
        """Smallest solution; 0 when every circle element solves the system."""
        if self.everything:
            return ZERO
        return self.points[0] if self.points else None


EMPTY = SolutionSet()
CIRCLE = SolutionSet(everything=True)


def solve_congruence_system(equations: Iterable[tuple[int, RationalAngle]]) -> SolutionSet:
    """
    All z in Q/Z with m*z = c for every (m, c).

    The system is folded to a single g*z = C with g the gcd of the exponents and
    then each original equation is checked against it.

    >>> solve_congruence_system([(3, ZERO)]).points
    (RationalAngle(0/1), RationalAngle(1/3), RationalAngle(2/3))
    >>> solve_congruence_system([(2, HALF)]).points
    (RationalAngle(1/4), RationalAngle(3/4))
    """
    eqs = [(int(m), c) for m, c in equations]
    g, rhs = 0, Fraction(0)
    for m, c in eqs:
        g, u, v = _ext_gcd(g, m)
        rhs = u * rhs + v * c.fraction
    if g == 0:
        return CIRCLE if all(c.is_zero() for _, c in eqs) else EMPTY
    base = RationalAngle(rhs)
    # g*z = base has g solutions; consistency of the rest only depends on base
    for m, c in eqs:
        if RationalAngle((m // g) * base.fraction) != c:
            return EMPTY
    start = base.fraction
    pts = sorted(RationalAngle((start + k) / g) for k in range(g))
    return SolutionSet(tuple(pts))


# --------------------------------------------------------------------------
# Q(sqrt2, sqrt5)

_ROOT_PRODUCTS = {
    # (i, j) -> (scalar, k): basis_i * basis_j = scalar * basis_k ; basis = 1, r2, r5, r10
    (0, 0): (1, 0), (0, 1): (1, 1), (0, 2): (1, 2), (0, 3): (1, 3),
    (1, 1): (2, 0), (1, 2): (1, 3), (1, 3): (2, 2),
    (2, 2): (5, 0), (2, 3): (5, 1),
    (3, 3): (10, 0),
}


@dataclasses.dataclass(frozen=True, init=False)
class FieldElement:
    """a + b*sqrt2 + c*sqrt5 + d*sqrt10 with rational coefficients."""
    coeffs: tuple[Fraction, Fraction, Fraction, Fraction]

    def __init__(self, a=0, b=0, c=0, d=0):
        object.__setattr__(self, "coeffs", tuple(Fraction(x) for x in (a, b, c, d)))

    def __add__(self, other):
        other = _lift(other)
        return FieldElement(*(x + y for x, y in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return FieldElement(*(-x for x in self.coeffs))

    def __sub__(self, other):
        return self + (-_lift(other))

    def __rsub__(self, other):
        return _lift(other) - self

    def __mul__(self, other):
        other = _lift(other)
        out = [Fraction(0)] * 4
        for i, x in enumerate(self.coeffs):
            if not x:
                continue
            for j, y in enumerate(other.coeffs):
                if not y:
                    continue
                s, k = _ROOT_PRODUCTS[(min(i, j), max(i, j))]
                out[k] += s * x * y
        return FieldElement(*out)

    __rmul__ = __mul__

    def _conj(self, flip2: bool, flip5: bool) -> FieldElement:
        a, b, c, d = self.coeffs
        return FieldElement(a, -b if flip2 else b, -c if flip5 else c,
                            -d if flip2 != flip5 else d)

    def inverse(self) -> FieldElement:
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero field element")
        # product over the Galois orbit is rational
        others = self._conj(True, False) * self._conj(False, True) * self._conj(True, True)
        norm = (self * others).coeffs[0]
        return others * FieldElement(1 / norm)

    def __truediv__(self, other):
        return self * _lift(other).inverse()

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def key(self) -> tuple[int, ...]:
        return tuple(itertools.chain.from_iterable((x.numerator, x.denominator) for x in self.coeffs))

    def __float__(self) -> float:
        a, b, c, d = self.coeffs
        return float(a) + float(b) * math.sqrt(2) + float(c) * math.sqrt(5) + float(d) * math.sqrt(10)

    def __repr__(self) -> str:
        names = ("", "√2", "√5", "√10")
        parts = [f"{x}{n}" for x, n in zip(self.coeffs, names) if x]
        return "FieldElement(" + (" + ".join(parts) or "0") + ")"


def _lift(x) -> FieldElement:
    if isinstance(x, FieldElement):
        return x
    return FieldElement(x)


SQRT2 = FieldElement(0, 1)
SQRT5 = FieldElement(0, 0, 1)
F0 = FieldElement(0)
F1 = FieldElement(1)


def _cos_table() -> dict[RationalAngle, FieldElement]:
    h = Fraction(1, 2)
    q = Fraction(1, 4)
    base = {
        Fraction(0): F1,
        Fraction(1, 2): -F1,
        Fraction(1, 3): FieldElement(-h),
        Fraction(1, 4): F0,
        Fraction(1, 6): FieldElement(h),
        Fraction(1, 8): FieldElement(0, h),
        Fraction(3, 8): FieldElement(0, -h),
        Fraction(1, 5): FieldElement(-q, 0, q),
        Fraction(2, 5): FieldElement(-q, 0, -q),
        Fraction(1, 10): FieldElement(q, 0, q),
        Fraction(3, 10): FieldElement(q, 0, -q),
    }
    table = {}
    for t, c in base.items():
        table[RationalAngle(t)] = c
        table[RationalAngle(-t)] = c
    return table


_COS = _cos_table()


def exact_cos(t: RationalAngle) -> FieldElement:
    """cos(2 pi t) when it lies in Q(sqrt2, sqrt5) for a catalog order; NoMatch otherwise."""
    try:
        return _COS[t]
    except KeyError:
        raise NoMatch(f"cos(2π·{t}) is outside the catalog field table") from None


# --------------------------------------------------------------------------
# unit quaternions


@dataclasses.dataclass(frozen=True)
class UnitQuaternion:
    w: FieldElement
    x: FieldElement
    y: FieldElement
    z: FieldElement

    @classmethod
    def of(cls, w=0, x=0, y=0, z=0) -> UnitQuaternion:
        q = cls(_lift(w), _lift(x), _lift(y), _lift(z))
        if q.norm_sq().coeffs != (1, 0, 0, 0):
            raise ValueError(f"not a unit quaternion: {q}")
        return q

    def norm_sq(self) -> FieldElement:
        return self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z

    def __mul__(self, o: UnitQuaternion) -> UnitQuaternion:
        a1, b1, c1, d1 = self.w, self.x, self.y, self.z
        a2, b2, c2, d2 = o.w, o.x, o.y, o.z
        return UnitQuaternion(
            a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
            a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
            a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
            a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
        )

    def conj(self) -> UnitQuaternion:
        return UnitQuaternion(self.w, -self.x, -self.y, -self.z)

    inverse = conj

    def __neg__(self) -> UnitQuaternion:
        return UnitQuaternion(-self.w, -self.x, -self.y, -self.z)

    def is_identity(self) -> bool:
        return self == IDENTITY_Q

    def key(self) -> tuple[int, ...]:
        return self.w.key() + self.x.key() + self.y.key() + self.z.key()

    def as_floats(self) -> tuple[float, float, float, float]:
        return float(self.w), float(self.x), float(self.y), float(self.z)


IDENTITY_Q = UnitQuaternion(F1, F0, F0, F0)


def quat_order(q: UnitQuaternion, cap: int = 240) -> int:
    """Smallest n >= 1 with q^n = 1, by repeated multiplication."""
    power = q
    for n in range(1, cap + 1):
        if power.is_identity():
            return n
        power = power * q
    raise Overflow(f"no finite order up to {cap}")


def eigen_angle_of(q: UnitQuaternion, cap: int = 240) -> RationalAngle:
    """
    The angle t in [0, 1/2] with eigenvalues e^{+-2 pi i t}.

    Real part of q is cos(2 pi t); t = k/n with n the order of q and k coprime to n.
    """
    n = quat_order(q, cap)
    for k in range(0, n // 2 + 1):
        if math.gcd(k, n) != 1:
            continue
        t = RationalAngle(k, n)
        try:
            if exact_cos(t) == q.w:
                return t
        except NoMatch:
            break
    raise NoMatch(f"real part {q.w} matches no primitive {n}-th cosine")


def all_pairings(size: int = 3) -> Sequence[tuple[int, ...]]:
    """Bijections of a small multiset in fixed index order (itertools order)."""
    return tuple(itertools.permutations(range(size)))

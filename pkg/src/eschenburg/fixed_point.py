"""
Exact fixed-point test for natural isometries of Eschenburg spaces.

An isometry (L, R) of SU(3) descends to E = SU(3)//S^1_{a,b} and fixes the
class of A iff L A R^-1 = diag(z^a) A diag(z^b)^-1 for some z, i.e. iff
diag(z^a)^-1 L and diag(z^b)^-1 R are conjugate.  Whenever L commutes with
diag(z^a) (and R with diag(z^b)) the eigenvalues are monomials in z, so the
test reduces to matching two multisets of monomials, one bijection at a time,
each bijection giving a congruence system on the circle.
"""
from __future__ import annotations

import dataclasses
import itertools
from fractions import Fraction
from typing import Callable, Iterable, Iterator, Union

from .espaces import E2Params, EschParams
from .exact_arith import (
    CIRCLE, HALF, ZERO, RationalAngle, SolutionSet, all_pairings, solve_congruence_system,
)
from .group_catalog import (
    AbstractDescriptor, FiniteIsometryGroup, IsometryTuple, JCoset, Quat, Su2Element, Torus,
    abstract_type,
)

Space = Union[E2Params, EschParams]

LEFT, RIGHT = "left", "right"


class UnsupportedFactor(ValueError):
    """A tuple component has no home in the space's natural isometry group."""


class NoSuchFactor(ValueError):
    """The requested side carries no SU(2) factor for this space."""


# --------------------------------------------------------------------------
# monomials


@dataclasses.dataclass(frozen=True)
class EigMonomial:
    """z^z_exp * lambda^lam_exp * e(const)."""
    z_exp: int
    const: RationalAngle = ZERO
    lam_exp: int = 0

    def at(self, z: RationalAngle, lam: RationalAngle = ZERO) -> RationalAngle:
        return z * self.z_exp + lam * self.lam_exp + self.const

    def __str__(self) -> str:
        parts = [f"z^{self.z_exp}"]
        if self.lam_exp:
            parts.append(f"λ^{self.lam_exp}")
        if not self.const.is_zero():
            parts.append(f"e({self.const})")
        return "·".join(parts)


Triple = tuple[EigMonomial, EigMonomial, EigMonomial]


def exponents(space: Space) -> tuple[tuple[int, int, int], tuple[int, int, int]]:
    if isinstance(space, E2Params):
        return space.p, (0, 0, sum(space.p))
    return space.a, space.b


def diagonal_angle(g: Su2Element) -> RationalAngle | None:
    """theta with g = diag(e(theta), e(-theta)), or None when g is not diagonal."""
    if isinstance(g, Torus):
        return g.angle
    if isinstance(g, JCoset):
        return None
    q = g.q
    if not (q.y.is_zero() and q.z.is_zero()):
        return None
    t = g.eigen_angle()
    return -t if float(q.x) < 0 else t


def _side(exps, w: RationalAngle, g: Su2Element, name: str) -> Triple:
    theta = diagonal_angle(g)
    if theta is None:
        if exps[0] != exps[1]:
            raise UnsupportedFactor(
                f"{name} SU(2) part {g} does not commute with the circle exponents {exps}"
            )
        theta = g.eigen_angle()
    consts = (w + theta, w - theta, -(w * 2))
    return tuple(EigMonomial(e, c) for e, c in zip(exps, consts))


def eig_triples(space: Space, t: IsometryTuple) -> tuple[Triple, Triple]:
    """
    Eigenvalues of diag(z^a)·L and diag(z^b)·R as monomials in z.

    >>> from .group_catalog import right, Torus
    >>> l, r = eig_triples(E2Params((1, 1, 2)), right(Torus(RationalAngle(1, 3))))
    >>> [str(m) for m in l], [str(m) for m in r]
    (['z^1', 'z^1', 'z^2'], ['z^0·e(1/3)', 'z^0·e(2/3)', 'z^4'])
    """
    a, b = exponents(space)
    return _side(a, t.w1, t.g1, LEFT), _side(b, t.w2, t.g2, RIGHT)


# --------------------------------------------------------------------------
# witnesses


@dataclasses.dataclass(frozen=True)
class FixedPointWitness:
    z: RationalAngle
    bijection: int
    element: IsometryTuple | None = None
    free_eigen: RationalAngle | None = None

    def to_json(self) -> dict:
        out = {"z": str(self.z), "bijection": self.bijection}
        if self.free_eigen is not None:
            out["lambda"] = str(self.free_eigen)
        out["element"] = self.element.to_json() if self.element is not None else None
        return out


def _pair_equations(left: Triple, right: Triple, perm) -> list[tuple[int, int, RationalAngle]]:
    """Rows (m, k, c) meaning m·z + k·λ = c, one per matched slot."""
    rows = []
    for i, j in enumerate(perm):
        lm, rm = left[i], right[j]
        rows.append((lm.z_exp - rm.z_exp, lm.lam_exp - rm.lam_exp, rm.const - lm.const))
    return rows


def multisets_match(left: Triple, right: Triple, z: RationalAngle, lam: RationalAngle = ZERO) -> bool:
    """Independent check: evaluate both sides and compare sorted angle lists."""
    return sorted(m.at(z, lam) for m in left) == sorted(m.at(z, lam) for m in right)


def fixed_point_witness(left: Triple, right: Triple) -> tuple[RationalAngle, int] | None:
    """
    First (z, bijection index) making the two multisets equal.

    Bijections are tried in itertools order, solutions in increasing angle.

    >>> z = EigMonomial
    >>> w = RationalAngle(1, 3)
    >>> fixed_point_witness((z(1), z(1), z(2)), (z(0, w), z(0, w * 2), z(4)))
    (RationalAngle(1/3), 1)
    """
    for idx, z in _all_solutions(left, right):
        return z, idx
    return None


def _all_solutions(left: Triple, right: Triple) -> Iterator[tuple[int, RationalAngle]]:
    for idx, perm in enumerate(all_pairings(3)):
        rows = _pair_equations(left, right, perm)
        if any(k for _, k, _ in rows):
            raise ValueError("monomials carry a free eigenvalue; use the SU(2)-factor solver")
        sols = solve_congruence_system((m, c) for m, _, c in rows)
        if sols.everything:
            yield idx, ZERO
        else:
            for z in sols:
                yield idx, z


def is_in_action_kernel(space: Space, t: IsometryTuple) -> bool:
    """
    True iff L = c·diag(z^a) and R = c·diag(z^b) for some z and some c in U(1).

    Eliminating c against the first left entry leaves congruences in z only.
    """
    a, b = exponents(space)
    th1, th2 = diagonal_angle(t.g1), diagonal_angle(t.g2)
    if th1 is None or th2 is None:
        return False
    l = (t.w1 + th1, t.w1 - th1, -(t.w1 * 2))
    r = (t.w2 + th2, t.w2 - th2, -(t.w2 * 2))
    eqs = [(a[i] - a[0], l[i] - l[0]) for i in (1, 2)]
    eqs += [(b[i] - a[0], r[i] - l[0]) for i in range(3)]
    return bool(solve_congruence_system(eqs))


def kernel_elements(space: Space, group: Iterable[IsometryTuple]) -> list[IsometryTuple]:
    return [g for g in group if is_in_action_kernel(space, g)]


def circle_has_fixed_point(params: EschParams, z0: RationalAngle) -> bool:
    """Does the defining circle element z0 fix a point of SU(3)?"""
    left = tuple(EigMonomial(0, z0 * x) for x in params.a)
    right = tuple(EigMonomial(0, z0 * x) for x in params.b)
    return multisets_match(left, right, ZERO)


# --------------------------------------------------------------------------
# certificates


@dataclasses.dataclass(frozen=True)
class FreenessCertificate:
    space: str
    group: str
    free: bool
    witness: FixedPointWitness | None = None
    descriptor: AbstractDescriptor | None = None
    side: str | None = None
    notes: dict = dataclasses.field(default_factory=dict)

    @property
    def verdict(self) -> str:
        return "Free" if self.free else "NotFree"

    def to_json(self) -> dict:
        out = {"space": self.space, "group": self.group, "verdict": self.verdict}
        if self.side is not None:
            out["side"] = self.side
        if self.witness is not None:
            out["witness"] = self.witness.to_json()
        if self.descriptor is not None:
            out["effective_group"] = self.descriptor.to_json()
        out.update(self.notes)
        return out


def block_arranged(space: Space, side: str) -> Space:
    """
    Reorder the exponents on ``side`` so that an equal pair comes first.

    Permuting a (or b) is an isometry of the space; it moves the U(2) block
    commuting with the circle into the upper-left corner.
    """
    a, b = exponents(space)
    exps = a if side == LEFT else b
    if exps[0] == exps[1]:
        return space
    for i, j in ((0, 2), (1, 2)):
        if exps[i] == exps[j]:
            k = 3 - i - j
            new = (exps[i], exps[j], exps[k])
            if side == LEFT:
                return E2Params(new) if isinstance(space, E2Params) else EschParams(new, b)
            return EschParams(a, new)
    raise NoSuchFactor(f"{space}: no SU(2) factor on the {side} side (no repeated exponent in {exps})")


def _needs_block(group: Iterable[IsometryTuple], side: str) -> bool:
    attr = "g1" if side == LEFT else "g2"
    return any(diagonal_angle(getattr(g, attr)) is None for g in group)


def action_is_free(space: Space, group: FiniteIsometryGroup, name: str = "group",
                   describe: bool = True) -> FreenessCertificate:
    """
    Free iff no element outside the action kernel has a fixed point.

    Elements are scanned in the group's canonical order; the first witness wins.
    """
    work = space
    for side in (LEFT, RIGHT):
        if _needs_block(group, side):
            try:
                work = block_arranged(work, side)
            except NoSuchFactor as exc:
                raise UnsupportedFactor(str(exc)) from None
    kernel = []
    witness = None
    for g in group:
        if is_in_action_kernel(work, g):
            kernel.append(g)
            continue
        if witness is None:
            left, right = eig_triples(work, g)
            hit = fixed_point_witness(left, right)
            if hit is not None:
                witness = FixedPointWitness(hit[0], hit[1], g)
                if not describe:
                    break
    desc = abstract_type(group, kernel) if describe else None
    return FreenessCertificate(str(space), name, witness is None, witness, desc)


def witness_is_valid(space: Space, w: FixedPointWitness, side: str | None = None) -> bool:
    """Re-substitute a witness and compare the eigenvalue multisets directly."""
    if w.free_eigen is not None:
        left, right = _factor_triples(block_arranged(space, side), side)
        perm = all_pairings(3)[w.bijection]
        ok = all(left[i].at(w.z, w.free_eigen) == right[j].at(w.z, w.free_eigen) for i, j in enumerate(perm))
        return ok and multisets_match(left, right, w.z, w.free_eigen)
    work = space
    for s in (LEFT, RIGHT):
        if _needs_block([w.element], s):
            work = block_arranged(work, s)
    left, right = eig_triples(work, w.element)
    return multisets_match(left, right, w.z) and not is_in_action_kernel(work, w.element)


# --------------------------------------------------------------------------
# whole SU(2) factors


def _factor_triples(space: Space, side: str) -> tuple[Triple, Triple]:
    a, b = exponents(space)
    host, other = (a, b) if side == LEFT else (b, a)
    lam = (1, -1, 0)
    h = tuple(EigMonomial(e, ZERO, k) for e, k in zip(host, lam))
    o = tuple(EigMonomial(e) for e in other)
    return (h, o) if side == LEFT else (o, h)


def _angles_by_denominator(limit: int = 24) -> Iterator[RationalAngle]:
    for den in range(1, limit + 1):
        for num in range(den):
            if Fraction(num, den).denominator == den:
                yield RationalAngle(num, den)


_LAMBDA_CANDIDATES = tuple(t for t in _angles_by_denominator() if t.fraction <= Fraction(1, 2))


def _solve_with_lambda(rows, nontrivial: Callable[[RationalAngle, RationalAngle], bool]):
    """
    First (z, λ) solving m·z + k·λ = c (k in {-1, 0, 1}) with nontrivial(z, λ).

    λ is eliminated through the first row that contains it; the remaining rows
    become pure z-congruences.
    """
    pi = next((i for i, r in enumerate(rows) if r[1]), None)
    if pi is None:
        sols = solve_congruence_system((m, c) for m, _, c in rows)
        zs = [ZERO] if sols.everything else list(sols)
        for z in zs:
            for lam in _LAMBDA_CANDIDATES:
                if nontrivial(z, lam):
                    return z, lam
        return None
    mp, kp, cp = rows[pi]
    if kp not in (1, -1):
        raise ValueError(f"unexpected eigenvalue exponent {kp}")
    # λ = kp·(cp - mp·z)
    reduced = [(m - k * kp * mp, c - cp * (k * kp)) for i, (m, k, c) in enumerate(rows) if i != pi]
    sols = solve_congruence_system(reduced)
    if not sols:
        return None

    def lam_at(z):
        return (cp - z * mp) * kp

    zs: Iterable[RationalAngle]
    if sols.everything:
        zs = [ZERO] if mp == 0 else _angles_by_denominator()
    else:
        zs = sols
    for z in zs:
        lam = lam_at(z)
        if nontrivial(z, lam):
            return z, lam
    return None


def so3_factor_is_free(space: Space, side: str) -> FreenessCertificate:
    """
    Freeness of the whole SU(2) (or SO(3)) factor on ``side``.

    The factor element's eigen angle λ is a second unknown.  A solution only
    counts when the torus element of angle λ on that side acts nontrivially.
    """
    work = block_arranged(space, side)
    left, right = _factor_triples(work, side)

    def nontrivial(z, lam):
        t = IsometryTuple(g1=Torus(lam)) if side == LEFT else IsometryTuple(g2=Torus(lam))
        return not is_in_action_kernel(work, t)

    for idx, perm in enumerate(all_pairings(3)):
        hit = _solve_with_lambda(_pair_equations(left, right, perm), nontrivial)
        if hit is not None:
            z, lam = hit
            el = IsometryTuple(g1=Torus(lam)) if side == LEFT else IsometryTuple(g2=Torus(lam))
            w = FixedPointWitness(z, idx, el, lam)
            return FreenessCertificate(str(space), f"SU(2)-{side}", False, w, side=side)
    # SO(3) when -id acts trivially on this side
    minus = IsometryTuple(g1=Torus(HALF)) if side == LEFT else IsometryTuple(g2=Torus(HALF))
    effective = "SO(3)" if is_in_action_kernel(work, minus) else "SU(2)"
    return FreenessCertificate(str(space), f"{effective}-{side}", True, side=side)


def available_sides(space: Space) -> list[str]:
    out = []
    for side in (LEFT, RIGHT):
        try:
            block_arranged(space, side)
        except NoSuchFactor:
            continue
        out.append(side)
    return out

"""Cohomology order, first Pontrjagin class residue and vertex orbit data of E2 spaces."""
from __future__ import annotations

import dataclasses
import enum

from .espaces import E2Params


class ZeroModulus(ArithmeticError):
    """H^4 is infinite (r = 0) so there is no residue to take."""


def h4_order(p: E2Params) -> int:
    """
    >>> h4_order(E2Params((1, 1, 5)))
    11
    """
    x, y, z = p.p
    return abs(x * y + x * z + y * z)


def pontrjagin_residue(p: E2Params) -> int:
    """
    >>> pontrjagin_residue(E2Params((1, 1, 2)))
    2
    """
    r = h4_order(p)
    if r == 0:
        raise ZeroModulus(f"H^4 of {p} has order 0")
    return 2 * sum(p.p) ** 2 % r


def vertex_lens_orders(p: E2Params) -> tuple[int, int, int]:
    """Orders |p_i + p_j| of the lens-space orbits, sorted."""
    x, y, z = p.p
    return tuple(sorted((abs(x + y), abs(x + z), abs(y + z))))


@dataclasses.dataclass(frozen=True)
class E2Invariants:
    r: int
    p1_residue: int | None
    vertex_orders: tuple[int, int, int]

    def to_json(self) -> dict:
        return {"r": self.r, "p1_residue": self.p1_residue, "vertex_orders": list(self.vertex_orders)}


def e2_invariants(p: E2Params) -> E2Invariants:
    r = h4_order(p)
    return E2Invariants(r, pontrjagin_residue(p) if r else None, vertex_lens_orders(p))


class Distinction(enum.Enum):
    BY_H4_ORDER = "ByH4Order"
    BY_PONTRJAGIN = "ByPontrjagin"
    INDISTINGUISHABLE = "Indistinguishable"


def distinguish_pair(p: E2Params, q: E2Params) -> Distinction:
    if h4_order(p) != h4_order(q):
        return Distinction.BY_H4_ORDER
    if h4_order(p) and pontrjagin_residue(p) != pontrjagin_residue(q):
        return Distinction.BY_PONTRJAGIN
    return Distinction.INDISTINGUISHABLE

"""
Isometry groups and cohomogeneity-one group diagrams as lookup data.

Only groups that are actually known are filled in; everything else carries
``full_group=None`` and an explanatory note.  Names follow a small grammar:
``×`` for products, ``⋊`` for semidirect products, ``/`` for quotients.
"""
from __future__ import annotations

import dataclasses

from .espaces import Classification, SpaceParams, classify_family


class NotCohomogeneityOne(ValueError):
    pass


@dataclasses.dataclass(frozen=True)
class IsometryDescriptor:
    identity_component: str | None
    dimension: int | None
    rank: int | None
    cohomogeneity: int | None
    full_group: str | None = None
    component_count: int | None = None
    note: str | None = None

    @property
    def open(self) -> bool:
        return self.full_group is None

    def to_json(self) -> dict:
        return {
            "identity_component": self.identity_component,
            "dimension": self.dimension,
            "rank": self.rank,
            "cohomogeneity": self.cohomogeneity,
            "full_group": self.full_group,
            "component_count": self.component_count,
            "full_group_open": self.open,
            "note": self.note,
        }


# dimension and rank of the symbolic identity components used below; Z is a
# finite central subgroup and does not change either number
GROUP_TABLE = {
    "(SU(3)×SU(2))/Z": (11, 3),
    "(SU(3)×U(1))/Z": (9, 3),
    "U(2)×SO(3)": (7, 3),
    "T²×SO(3)": (5, 3),
    "T²×SU(2)": (5, 3),
    "U(4)": (16, 4),
    "U(2)": (4, 2),
}

_CONJ = "complex conjugation gives a second component; suspected to be the full group"


def _desc(name: str, cohom: int, full=None, comps=None, note=None) -> IsometryDescriptor:
    dim, rank = GROUP_TABLE[name]
    return IsometryDescriptor(name, dim, rank, cohom, full, comps, note)


def isometry_descriptor(params: SpaceParams) -> IsometryDescriptor:
    return descriptor_for(params, classify_family(params))


def descriptor_for(params: SpaceParams, cls: Classification) -> IsometryDescriptor:
    tag = cls.family
    if tag.name == "AloffWallach" or (tag.name == "E1" and tag.p == 1):
        if tag.name == "E1" or (tag.k, tag.l) == (1, 1):
            return _desc("(SU(3)×SU(2))/Z", 0, note="homogeneous; also E1(1)")
        return _desc("(SU(3)×U(1))/Z", 0, note="homogeneous")
    if tag.name == "E1":
        return _desc("U(2)×SO(3)", 1, "(U(2)⋊Z₂)×SO(3)", 2,
                     "second component induced by complex conjugation")
    if tag.name == "E2Generic":
        p = cls.e2.p
        s = "T²×SO(3)" if all(x % 2 for x in p) else "T²×SU(2)"
        return _desc(s, 2, note=_CONJ)
    if tag.name == "TwistedFlag":
        return _desc("U(2)", 2, note="identity component only")
    if tag.name == "Bazaikin1":
        if tag.p == 1:
            return IsometryDescriptor(None, None, None, 0, note="homogeneous Berger space; group not recorded")
        return _desc("U(4)", 1, "U(4)⋊Z₂", 2, "second component induced by complex conjugation")
    if tag.name == "EschGeneric":
        return IsometryDescriptor("T³ (natural)", None, None, 4,
                                  note="only the cohomogeneity-four T³ action is recorded")
    return IsometryDescriptor(None, None, None, None, note="isometry group not recorded")


@dataclasses.dataclass(frozen=True)
class CohomOneDiagram:
    G: str
    H: str
    K_minus: str
    K_plus: str
    slope: tuple[int, int]

    def to_json(self) -> dict:
        return {"G": self.G, "H": self.H, "K_minus": self.K_minus, "K_plus": self.K_plus,
                "slope": list(self.slope)}


def e1_diagram(p: int) -> CohomOneDiagram:
    """SU(2)×SU(2) on E_p; H is generated by (-id, id) for p even, (id, -id) for p odd."""
    h = "(−id, id)" if p % 2 == 0 else "(id, −id)"
    return CohomOneDiagram("SU(2)×SU(2)", f"⟨{h}⟩ ≅ Z₂", "ΔSU(2)·H", f"S¹_({p + 1},{p})", (p + 1, p))


def b1_diagram(p: int) -> CohomOneDiagram:
    return CohomOneDiagram("SU(4)", "SU(2)·Z₂", "Sp(2)∪iSp(2)", f"SU(2)·S¹_({p + 1},{p})", (p + 1, p))


def group_diagram(params: SpaceParams) -> CohomOneDiagram:
    cls = classify_family(params)
    for tag in (cls.family,) + cls.also:
        if tag.name == "E1":
            return e1_diagram(tag.p)
        if tag.name == "Bazaikin1":
            return b1_diagram(tag.p)
    raise NotCohomogeneityOne(f"{params} is {cls.family}, not in E1 or B1")

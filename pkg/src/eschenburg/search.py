"""
Parameter sweeps and theorem-verification campaigns.

Every suite returns a :class:`Report`: a list of per-case records followed by a
summary.  Work is split into independent tasks; with ``jobs > 1`` they run in
a process pool via an order-preserving map, so output never depends on
scheduling.
"""
from __future__ import annotations

import dataclasses
import itertools
import math
import multiprocessing
import os
import zlib
from typing import Callable, Iterator, Sequence

import sympy

from . import fixed_point as fp
from .atlas import group_diagram, isometry_descriptor
from .espaces import (
    BazParams, E2Params, classify_family, e1_parameter, e2_is_free, e2_is_positively_curved,
    e2_normalize, esch_is_free, esch_is_positively_curved, baz_is_free, baz_is_positively_curved,
)
from .exact_arith import RationalAngle
from .group_catalog import (
    FiniteIsometryGroup, IsometryTuple, JCoset, MINUS_ONE, Torus, build_group, close_subgroup,
    lift_su2_group,
)
from .invariants import Distinction, distinguish_pair, h4_order, pontrjagin_residue

JOBS_ENV = "ESCHENBURG_JOBS"

SUITES = (
    "so3-classification", "theorem-b", "dirichlet-f", "order-criterion-comparison",
    "invariant-formulas", "cross-oracle", "bazaikin", "atlas",
)


class UnsupportedGroup(ValueError):
    pass


def default_jobs() -> int:
    try:
        return max(1, int(os.environ.get(JOBS_ENV, "1")))
    except ValueError:
        return 1


def pmap(fn: Callable, tasks: Sequence, jobs: int = 1) -> list:
    """Order-preserving map, optionally across worker processes."""
    if jobs <= 1 or len(tasks) < 2:
        return [fn(t) for t in tasks]
    chunk = max(1, len(tasks) // (jobs * 8))
    with multiprocessing.get_context("spawn").Pool(jobs) as pool:
        return pool.map(fn, tasks, chunksize=chunk)


# --------------------------------------------------------------------------
# enumeration


@dataclasses.dataclass(frozen=True)
class SweepConfig:
    max_abs: int
    family: str | None = None  # FamilyTag name, e.g. "E1" or "E2Generic"
    shard: tuple[int, int] = (0, 1)

    def __post_init__(self):
        idx, count = self.shard
        if count < 1 or not 0 <= idx < count:
            raise ValueError(f"bad shard {self.shard}")
        if self.max_abs < 1:
            raise ValueError("max_abs must be positive")


def shard_of(p: tuple[int, ...], count: int) -> int:
    return zlib.crc32(",".join(map(str, p)).encode()) % count


def enumerate_canonical(config: SweepConfig) -> Iterator[E2Params]:
    """
    Free, positively curved, normalized E2 triples with max |p_i| <= bound,
    in lexicographic order.

    >>> [e.p for e in enumerate_canonical(SweepConfig(1))]
    [(1, 1, 1)]
    """
    b = config.max_abs
    idx, count = config.shard
    for p in itertools.combinations_with_replacement(range(-b, b + 1), 3):
        if not any(p):
            continue
        e = E2Params(p)
        if e2_normalize(e) != e or not e2_is_free(e) or not e2_is_positively_curved(e):
            continue
        if count > 1 and shard_of(p, count) != idx:
            continue
        if config.family is not None and classify_family(e).family.name != config.family:
            continue
        yield e


def space_representative(e: E2Params) -> tuple[int, int, int]:
    """(1,1,p) for E1 members (including mirrors), else the normal form."""
    p = e1_parameter(e)
    return (1, 1, p) if p is not None else e2_normalize(e).p


# --------------------------------------------------------------------------
# order criterion


def _kernel_pure(p: int) -> set:
    minus = (IsometryTuple(g1=MINUS_ONE) if p % 2 == 0 else IsometryTuple(g2=MINUS_ONE))
    return {IsometryTuple().key(), minus.key()}


def order_criterion_free(p: int, group: FiniteIsometryGroup) -> bool:
    """
    Element-order test for pure SU(2)×SU(2) groups acting on E_p.

    For each element outside the kernel: the orders differ, it is not
    ±(-id, id), and either |g1| does not divide p|g2| or |g2| does not divide
    (p+1)|g1|.
    """
    kernel = _kernel_pure(p)
    pm = {IsometryTuple(g1=MINUS_ONE).key(), IsometryTuple(g2=MINUS_ONE).key()}
    for g in group:
        if not g.is_pure():
            raise UnsupportedGroup(f"{g} has central phases")
        if g.key() in kernel:
            continue
        o1, o2 = g.g1.order(), g.g2.order()
        if o1 == o2 or g.key() in pm:
            return False
        if (p * o2) % o1 == 0 and ((p + 1) * o1) % o2 == 0:
            return False
    return True


# --------------------------------------------------------------------------
# Dirichlet triples


def primes_congruent_one(modulus: int) -> Iterator[int]:
    n = 2
    while True:
        if n % modulus == 1 % modulus and sympy.isprime(n):
            yield n
        n += 1


def dirichlet_triples(modulus: int, count: int) -> list[tuple[int, int, int]]:
    """
    The ``count`` lexicographically smallest triples p1 < p2 < p3 of primes = 1 mod modulus.

    >>> dirichlet_triples(4, 1)
    [(5, 13, 17)]
    """
    if modulus < 1:
        raise ValueError("modulus must be positive")
    primes = list(itertools.islice(primes_congruent_one(modulus), count + 2))
    return list(itertools.islice(itertools.combinations(primes, 3), count))


def dirichlet_stream(modulus: int) -> Iterator[tuple[int, int, int]]:
    """Unbounded stream of distinct triples, ordered by their largest prime."""
    seen: list[int] = []
    for q in primes_congruent_one(modulus):
        for a, b in itertools.combinations(seen, 2):
            yield (a, b, q)
        seen.append(q)


# --------------------------------------------------------------------------
# reports


@dataclasses.dataclass
class Report:
    suite: str
    records: list[dict]
    summary: dict

    @property
    def passed(self) -> bool:
        return bool(self.summary.get("pass"))

    def lines(self) -> list[dict]:
        return self.records + [dict(self.summary, record="summary")]


@dataclasses.dataclass(frozen=True)
class ComparisonRow:
    space: str
    group: str
    product: bool
    order_free: bool
    solver_free: bool

    @property
    def agree(self) -> bool:
        return self.order_free == self.solver_free

    def to_json(self) -> dict:
        return {"space": self.space, "group": self.group, "product": self.product,
                "order_criterion": self.order_free, "solver": self.solver_free, "agree": self.agree}


@dataclasses.dataclass
class ComparisonReport:
    rows: list[ComparisonRow]

    @property
    def disagreements(self) -> list[ComparisonRow]:
        return [r for r in self.rows if not r.agree]


# --------------------------------------------------------------------------
# suite: SO(3) classification


def _so3_case(p: tuple[int, int, int]) -> dict:
    e = E2Params(p)
    sides = {}
    witnesses = {}
    for side in fp.available_sides(e):
        cert = fp.so3_factor_is_free(e, side)
        sides[side] = cert.verdict
        if cert.witness is not None:
            witnesses[side] = cert.witness
    valid = all(fp.witness_is_valid(e, w, s) for s, w in witnesses.items())
    return {"space": list(p), "sides": sides, "free": "Free" in sides.values(), "witnesses_valid": valid}


def suite_so3(bound: int = 40, jobs: int = 1) -> Report:
    tasks = [e.p for e in enumerate_canonical(SweepConfig(bound))]
    records = pmap(_so3_case, tasks, jobs)
    free_raw = [tuple(r["space"]) for r in records if r["free"]]
    free_spaces = sorted({space_representative(E2Params(p)) for p in free_raw})
    ok = free_spaces == [(1, 1, 1), (1, 1, 2)] and all(r["witnesses_valid"] for r in records)
    summary = {
        "suite": "so3-classification", "bound": bound, "spaces": len(records),
        "free_triples": [list(p) for p in free_raw], "free_spaces": [list(p) for p in free_spaces],
        "pass": ok,
    }
    return Report("so3-classification", records, summary)


# --------------------------------------------------------------------------
# suite: Theorem B


# "left-circle" is diag(e(1/q), 1, e(-1/q)) in the U(2) block: central phase
# w1 = (q+1)/2q together with the torus angle (q+1)/2q.  Pure central phases
# are kept as the other candidates.
PLACEMENTS = ("left-circle", "left-phase", "right-phase")


def _cyclic_generator(q: int, placement: str) -> IsometryTuple:
    t = RationalAngle(1, q)
    if placement == "left-phase":
        return IsometryTuple(w1=t)
    if placement == "right-phase":
        return IsometryTuple(w2=t)
    if placement == "left-circle":
        half = RationalAngle((q + 1) // 2, q) if q % 2 else RationalAngle(1, 2 * q)
        return IsometryTuple(w1=half, g1=Torus(half))
    raise ValueError(placement)


def theorem_b_group(p: int, q: int, placement: str) -> FiniteIsometryGroup:
    """Q8 on the SO(3)-effective side of E_p together with a cyclic Z_q."""
    side = "left" if p % 2 == 0 else "right"
    put = (lambda g: IsometryTuple(g1=g)) if side == "left" else (lambda g: IsometryTuple(g2=g))
    gens = [put(Torus(RationalAngle(1, 4))), put(JCoset(RationalAngle(0)))]  # i and j
    if q > 1:
        gens.append(_cyclic_generator(q, placement))
    return close_subgroup(gens)


def theorem_b_case(pq: tuple[int, int]) -> dict:
    p, q = pq
    space = E2Params((1, 1, p))
    tried = []
    chosen = None
    for placement in PLACEMENTS if q > 1 else PLACEMENTS[:1]:
        group = theorem_b_group(p, q, placement)
        name = f"Q8·Z{q}[{placement}]"
        cert = fp.action_is_free(space, group, name, describe=False)
        if cert.free:
            cert = fp.action_is_free(space, group, name)
        factors = list(cert.descriptor.invariant_factors or []) if cert.descriptor else None
        rec = {"placement": placement, "verdict": cert.verdict, "invariant_factors": factors}
        if cert.witness is not None:
            rec["witness"] = cert.witness.to_json()
            rec["witness_valid"] = fp.witness_is_valid(space, cert.witness)
        tried.append(rec)
        if cert.free and factors == [2, 2 * q]:
            chosen = placement
            break
    return {"p": p, "q": q, "space": [1, 1, p], "certified": chosen is not None,
            "placement": chosen, "attempts": tried}


def suite_theorem_b(max_p: int = 25, max_q: int = 25, jobs: int = 1) -> Report:
    tasks = [(p, q) for p in range(1, max_p + 1, 2) for q in range(1, max_q + 1, 2)
             if math.gcd(p + 1, q) == 1]
    records = pmap(theorem_b_case, tasks, jobs)
    failures = [(r["p"], r["q"]) for r in records if not r["certified"]]
    summary = {"suite": "theorem-b", "max_p": max_p, "max_q": max_q, "cases": len(records),
               "certified": len(records) - len(failures), "failures": [list(x) for x in failures],
               "failing_p": sorted({p for p, _ in failures}), "pass": not failures}
    return Report("theorem-b", records, summary)


# --------------------------------------------------------------------------
# suite: finite subgroups of SO(3) on Dirichlet triples


F_GROUPS = (("A4", "2T", 12), ("S4", "2O", 24), ("A5", "2I", 60))


def _dirichlet_case(task: tuple[str, str, int, tuple[int, int, int]]) -> dict:
    name, kind, order, triple = task
    space = E2Params(triple)
    group = lift_su2_group(build_group(kind), "right")
    cert = fp.action_is_free(space, group, kind)
    rec = {"F": name, "group": kind, "space": list(triple), "verdict": cert.verdict,
           "effective_order": cert.descriptor.order}
    if cert.witness is not None:
        rec["witness"] = cert.witness.to_json()
        rec["witness_valid"] = fp.witness_is_valid(space, cert.witness)
    rec["ok"] = cert.free and cert.descriptor.order == order
    return rec


def suite_dirichlet(count: int = 3, jobs: int = 1) -> Report:
    tasks = [(name, kind, order, t) for name, kind, order in F_GROUPS
             for t in dirichlet_triples(order, count)]
    records = pmap(_dirichlet_case, tasks, jobs)
    summary = {"suite": "dirichlet-f", "cases": len(records),
               "free": sum(r["verdict"] == "Free" for r in records),
               "pass": all(r["ok"] for r in records)}
    return Report("dirichlet-f", records, summary)


# --------------------------------------------------------------------------
# suite: order criterion vs solver


COMPARISON_KINDS = ("cyclic:2", "cyclic:3", "cyclic:4", "cyclic:5", "cyclic:6", "cyclic:8",
                    "bindihedral:2", "bindihedral:3", "bindihedral:4", "2T", "2O", "2I")


def _diagonal_groups() -> list[tuple[str, FiniteIsometryGroup]]:
    """A few non-product groups: graphs of cyclic homomorphisms."""
    out = []
    for n, k in ((3, 1), (4, 1), (4, 3), (5, 2), (6, 1), (8, 3)):
        gen = IsometryTuple(g1=Torus(RationalAngle(1, n)), g2=Torus(RationalAngle(k, n)))
        out.append((f"graph(Z{n},{k})", close_subgroup([gen])))
    return out


def comparison_groups() -> list[tuple[str, bool, FiniteIsometryGroup]]:
    out = []
    for kind in COMPARISON_KINDS:
        g = build_group(kind)
        for side in ("left", "right"):
            out.append((f"{kind}@{side}", True, lift_su2_group(g, side)))
    out += [(name, False, g) for name, g in _diagonal_groups()]
    return out


def _comparison_case(p: int) -> list[dict]:
    space = E2Params((1, 1, p))
    rows = []
    for name, product, group in comparison_groups():
        solver = fp.action_is_free(space, group, name, describe=False).free
        rows.append(ComparisonRow(str(space), name, product, order_criterion_free(p, group), solver).to_json())
    return rows


def order_comparison(max_p: int = 20, jobs: int = 1) -> ComparisonReport:
    rows = [r for chunk in pmap(_comparison_case, list(range(1, max_p + 1)), jobs) for r in chunk]
    return ComparisonReport([ComparisonRow(r["space"], r["group"], r["product"],
                                           r["order_criterion"], r["solver"]) for r in rows])


def suite_order_comparison(max_p: int = 20, jobs: int = 1) -> Report:
    report = order_comparison(max_p, jobs)
    bad = report.disagreements
    product_bad = [r for r in bad if r.product]
    summary = {"suite": "order-criterion-comparison", "max_p": max_p, "rows": len(report.rows),
               "disagreements": len(bad), "product_disagreements": len(product_bad),
               "pass": not product_bad}
    return Report("order-criterion-comparison", [r.to_json() for r in report.rows], summary)


# --------------------------------------------------------------------------
# suite: invariant formulas


def suite_invariants(max_p: int = 200, max_k: int = 99) -> Report:
    records = []
    bad = []
    for p in range(1, max_p + 1):
        e = E2Params((1, 1, p))
        r, res = h4_order(e), pontrjagin_residue(e)
        ok = r == 2 * p + 1 and res == (p + 5) % r
        records.append({"space": [1, 1, p], "r": r, "p1_residue": res, "ok": ok})
        if not ok:
            bad.append([1, 1, p])
    ks = range(5, max_k + 1, 2)
    for k in ks:
        e = E2Params((-k, 1, k - 2))
        r, res = h4_order(e), pontrjagin_residue(e)
        ok = r == (k - 1) ** 2 + 1 and res == 2
        records.append({"space": list(e.p), "r": r, "p1_residue": res, "ok": ok})
        if not ok:
            bad.append(list(e.p))
    same = [[p, k] for p in range(1, max_p + 1) for k in ks
            if distinguish_pair(E2Params((1, 1, p)), E2Params((-k, 1, k - 2))) is Distinction.INDISTINGUISHABLE]
    summary = {"suite": "invariant-formulas", "max_p": max_p, "max_k": max_k,
               "formula_failures": bad, "indistinguishable_pairs": same, "pass": not bad and not same}
    return Report("invariant-formulas", records, summary)


# --------------------------------------------------------------------------
# suites: predicate oracles, Bazaikin and atlas samples


def suite_cross_oracle(bound: int = 20) -> Report:
    free_bad, curv_bad = [], []
    n = 0
    for p in itertools.product(range(-bound, bound + 1), repeat=3):
        if not any(p):
            continue
        n += 1
        e = E2Params(p)
        es = e.as_esch()
        if e2_is_free(e) != esch_is_free(es):
            free_bad.append(list(p))
        if e2_is_positively_curved(e) != esch_is_positively_curved(es):
            curv_bad.append(list(p))
    summary = {"suite": "cross-oracle", "bound": bound, "triples": n,
               "freeness_mismatches": free_bad[:20], "curvature_mismatches": curv_bad[:20],
               "mismatch_count": len(free_bad) + len(curv_bad), "pass": not free_bad and not curv_bad}
    return Report("cross-oracle", [], summary)


def suite_bazaikin(max_p: int = 100) -> Report:
    bad = []
    for p in range(1, max_p + 1):
        b = BazParams((1, 1, 1, 1, 2 * p - 1))
        if not (baz_is_free(b) and baz_is_positively_curved(b)):
            bad.append(p)
    rejected = {str(t): not baz_is_free(BazParams(t)) for t in ((1, 1, 1, 1, 2), (1, 1, 1, 3, 3))}
    summary = {"suite": "bazaikin", "max_p": max_p, "failures": bad, "rejected": rejected,
               "pass": not bad and all(rejected.values())}
    return Report("bazaikin", [], summary)


ATLAS_SAMPLES = (((1, 1, -2), 11), ((2, 1, -3), 9), ((1, 1, 5), 7), ((1, 3, 5), 5))


def suite_atlas(max_p: int = 10) -> Report:
    records = []
    for p, dim in ATLAS_SAMPLES:
        got = isometry_descriptor(E2Params(p)).dimension
        records.append({"space": list(p), "dimension": got, "expected": dim, "ok": got == dim})
    for p in range(1, max_p + 1):
        for label, params in (("E1", E2Params((1, 1, p))), ("B1", BazParams((1, 1, 1, 1, 2 * p - 1)))):
            slope = group_diagram(params).slope
            records.append({"family": label, "p": p, "slope": list(slope),
                            "ok": slope == (p + 1, p) and math.gcd(*slope) == 1})
    summary = {"suite": "atlas", "pass": all(r["ok"] for r in records)}
    return Report("atlas", records, summary)


def verify_theorems(suite: str, jobs: int = 1, **ranges) -> Report:
    if suite == "so3-classification":
        return suite_so3(ranges.get("bound", 40), jobs)
    if suite == "theorem-b":
        return suite_theorem_b(ranges.get("max_p", 25), ranges.get("max_q", 25), jobs)
    if suite == "dirichlet-f":
        return suite_dirichlet(ranges.get("count", 3), jobs)
    if suite == "order-criterion-comparison":
        return suite_order_comparison(ranges.get("max_p", 20), jobs)
    if suite == "invariant-formulas":
        return suite_invariants(ranges.get("max_p", 200), ranges.get("max_k", 99))
    if suite == "cross-oracle":
        return suite_cross_oracle(ranges.get("bound", 20))
    if suite == "bazaikin":
        return suite_bazaikin(ranges.get("max_p", 100))
    if suite == "atlas":
        return suite_atlas(ranges.get("max_p", 10))
    raise ValueError(f"unknown suite {suite!r}; expected one of {', '.join(SUITES)}")

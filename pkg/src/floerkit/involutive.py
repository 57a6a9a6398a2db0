"""The involution ``iota = psi o eta`` and the cone pair ``Cone(1 + iota)``, ``Cone(1 - iota)``.

``eta`` identifies the complex of a diagram with the complex of its
conjugate (same generators); ``psi`` is a supplied chain map back from the
conjugate complex, standing in for the map induced by a sequence of moves.
Cone pairs are compared through computable invariants: hat homology per
grading and the homology profiles of the ``U``-truncations.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from .algebra.complexes import (
    ChainMap,
    GradedComplex,
    SHIFT_SUFFIX,
    check_chain_map,
    compose,
    mapping_cone,
    power,
    specialize_hat,
    validate_complex,
)
from .algebra.homology import homology_hat, truncated_homology
from .algebra.homotopy import homotopy_witness
from .diagrams.catalog import lens, s3, wiggle
from .diagrams.pointed import PointedDiagram, as_pointed, conjugate_diagram, diagram_complex, eta_map
from .reports import Report, StructureError


@dataclass
class IotaData:
    diagram: PointedDiagram
    psi: ChainMap
    eta: ChainMap
    iota: ChainMap


def build_iota(d, psi: ChainMap, sign_rule: str = "alpha-direction") -> IotaData:
    d = as_pointed(d)
    c = diagram_complex(d, sign_rule)
    cb = diagram_complex(conjugate_diagram(d), sign_rule)
    if psi.source != cb or psi.target != c:
        raise StructureError("psi must run from the conjugate-diagram complex to the diagram complex")
    if psi.degree != 0:
        raise StructureError("psi must have degree 0")
    rep = check_chain_map(psi)
    if not rep.ok:
        raise StructureError(f"psi is not a chain map: {rep.findings[0].message}")
    eta = eta_map(d, sign_rule)
    return IotaData(d, psi, eta, compose(psi, eta))


def psi_from_matrix(d, rows, sign_rule: str = "alpha-direction") -> ChainMap:
    """``psi`` from an integer matrix in generator-name order (rows: diagram complex)."""
    d = as_pointed(d)
    return ChainMap.from_matrix(diagram_complex(conjugate_diagram(d), sign_rule), diagram_complex(d, sign_rule), rows)


# ------------------------------------------------------------------- order

@dataclass
class OrderReport:
    strict: Optional[int]                # least k <= max with iota^k = Id
    projective: Optional[int]            # least k with iota^k = +/-Id
    homotopy: Optional[int]              # least k with iota^k homotopic to Id
    projective_homotopy: Optional[int]   # least k with iota^k homotopic to +/-Id
    witnesses: Dict[int, Tuple[int, ChainMap]]   # k -> (sign, h) with iota^k - sign*Id = dh + hd

    def describe(self) -> List[str]:
        def fmt(v):
            return "none within bound" if v is None else str(v)

        return [
            f"order: {fmt(self.strict)}",
            f"order up to sign: {fmt(self.projective)}",
            f"order up to homotopy: {fmt(self.homotopy)}",
            f"order up to sign and homotopy: {fmt(self.projective_homotopy)}",
        ]


def iota_order(iota: ChainMap, max_power: int = 4) -> Tuple[OrderReport, Report]:
    """Minimal orders of ``iota`` in each sense, with homotopy witnesses; flags a failure of iota^4 ~ +/-Id."""
    if iota.source != iota.target:
        raise StructureError("iota must be an endomorphism")
    ident = ChainMap.identity(iota.source)
    strict = proj = hom = phom = None
    witnesses: Dict[int, Tuple[int, ChainMap]] = {}
    for k in range(1, max_power + 1):
        p = power(iota, k)
        if strict is None and p == ident:
            strict = k
        if proj is None and (p == ident or p == -ident):
            proj = k
        for s in (1, -1):
            h = homotopy_witness(p, ident.scale(s))
            if h is not None:
                witnesses.setdefault(k, (s, h))
                if s == 1 and hom is None:
                    hom = k
                if phom is None:
                    phom = k
    out = OrderReport(strict, proj, hom, phom, witnesses)
    rep = Report("order of iota")
    for line in out.describe():
        rep.note(line)
    for k, (s, h) in sorted(witnesses.items()):
        rep.note(f"iota^{k} - ({s:+d}) Id = dh + hd with {len(h.m)} nonzero entries of h")
    if max_power >= 4 and 4 not in witnesses:
        rep.add("order", "iota^4 is not homotopic to +/- the identity")
    return out, rep


# -------------------------------------------------------------------- cones

@dataclass
class ConePair:
    plus: GradedComplex
    minus: GradedComplex


def build_cfi_pair(i: IotaData) -> ConePair:
    c = i.iota.source
    ident = ChainMap.identity(c)
    plus = mapping_cone(ident + i.iota)
    minus = mapping_cone(ident - i.iota)
    for name, cone in (("Cone(1 + iota)", plus), ("Cone(1 - iota)", minus)):
        rep = validate_complex(cone)
        if not rep.ok:
            raise StructureError(f"{name} is not a valid complex: {rep.findings[0].message}")
        want = sorted([n + SHIFT_SUFFIX for n in c.names] + list(c.names))
        if sorted(cone.names) != want:
            raise StructureError(f"{name} does not have the module C[-1] + C")
    return ConePair(plus, minus)


def cone_invariant(c: GradedComplex, truncation: int) -> Tuple:
    """Hat homology profile and the profiles of the truncations ``U^t``, ``t = 1..truncation``."""
    hat = homology_hat(specialize_hat(c)).profile()
    towers = tuple(truncated_homology(c, t).profile() for t in range(1, truncation + 1))
    return (hat, towers)


@dataclass
class ConeVerdict:
    equal: bool
    left: Tuple[Tuple, Tuple]
    right: Tuple[Tuple, Tuple]


def compare_cone_pairs(a: ConePair, b: ConePair, truncation: int = 2) -> ConeVerdict:
    """Equal iff the unordered pairs of cone invariants agree (an invariant-level comparison)."""
    if truncation < 1:
        raise ValueError("truncation must be at least 1")
    ia = (cone_invariant(a.plus, truncation), cone_invariant(a.minus, truncation))
    ib = (cone_invariant(b.plus, truncation), cone_invariant(b.minus, truncation))
    return ConeVerdict(sorted(ia) == sorted(ib), ia, ib)


def describe_cone(c: GradedComplex) -> List[str]:
    return homology_hat(specialize_hat(c)).lines() or ["0"]


# ---------------------------------------------------------------- fixtures

def iota_fixtures() -> Dict[str, IotaData]:
    """Named ``(diagram, psi)`` fixtures with rank small enough to inspect by hand."""
    out = {}
    S3 = PointedDiagram([s3()])
    out["s3+"] = build_iota(S3, psi_from_matrix(S3, [[1]]))
    out["s3-"] = build_iota(S3, psi_from_matrix(S3, [[-1]]))
    W = PointedDiagram([wiggle(1)])
    out["wiggle-diag"] = build_iota(W, psi_from_matrix(W, [[1, 0], [0, -1]]))
    W2 = PointedDiagram([wiggle(2)])
    swap4 = [[0, 0, 1, 0], [0, 0, 0, 1], [1, 0, 0, 0], [0, 1, 0, 0]]
    out["wiggle2-swap"] = build_iota(W2, psi_from_matrix(W2, swap4))
    L2 = PointedDiagram([lens(2)])
    out["lens2-swap"] = build_iota(L2, psi_from_matrix(L2, [[0, 1], [1, 0]]))
    out["lens2-rotation"] = build_iota(L2, psi_from_matrix(L2, [[0, -1], [1, 0]]))
    return out

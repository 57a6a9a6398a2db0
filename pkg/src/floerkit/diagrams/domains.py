"""Domains on a torus diagram: connecting domains, Maslov index, periodic domains.

A domain is an integer vector over the regions.  A domain ``D`` connects
``x`` to ``y`` when its boundary restricted to alpha has boundary
``y - x`` and its boundary restricted to beta has boundary ``x - y``.  The
Maslov index uses the combinatorial formula ``mu(D) = e(D) + n_x(D) +
n_y(D)`` (Euler measure plus average corner multiplicities), and relative
gradings follow from ``gr(x) - gr(y) = mu(D) - 2 n_z(D)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Dict, List, Optional, Sequence, Tuple

from ..algebra.intlinalg import integer_kernel, solve_integer
from ..reports import Report, StructureError
from .torus import TorusDiagram, TorusGeometry, geometry


@dataclass(frozen=True)
class DomainVector:
    coefficients: Tuple[int, ...]     # one per region, in region order
    n_z: int

    def __add__(self, other: "DomainVector") -> "DomainVector":
        return DomainVector(tuple(a + b for a, b in zip(self.coefficients, other.coefficients)), self.n_z + other.n_z)

    def __neg__(self) -> "DomainVector":
        return DomainVector(tuple(-a for a in self.coefficients), -self.n_z)

    def scale(self, k: int) -> "DomainVector":
        return DomainVector(tuple(k * a for a in self.coefficients), k * self.n_z)

    def is_zero(self) -> bool:
        return not any(self.coefficients)


def _boundary_rows(g: TorusGeometry) -> Tuple[List[List[int]], List[List[int]]]:
    """Rows indexed by generator: the 0-chain boundaries of the alpha and beta parts."""
    gens = g.generators
    gi = {x: k for k, x in enumerate(gens)}
    R = len(g.regions)
    a_rows = [[0] * R for _ in gens]
    b_rows = [[0] * R for _ in gens]
    for r, reg in enumerate(g.regions):
        for j, c in reg.alpha_boundary.items():
            s, e = g.alpha_arc_ends(j)
            a_rows[gi[e]][r] += c
            a_rows[gi[s]][r] -= c
        for i, c in reg.beta_boundary.items():
            s, e = g.beta_arc_ends(i)
            b_rows[gi[e]][r] += c
            b_rows[gi[s]][r] -= c
    return a_rows, b_rows


def domain_from(g: TorusGeometry, coeffs: Sequence[int]) -> DomainVector:
    c = tuple(int(v) for v in coeffs)
    return DomainVector(c, c[g.z_region])


def connecting_domain(d: TorusDiagram, x: str, y: str) -> Optional[DomainVector]:
    """Some integer domain from ``x`` to ``y``, or ``None`` if there is none."""
    g = geometry(d)
    a_rows, b_rows = _boundary_rows(g)
    gens = g.generators
    rhs_a = [(1 if n == y else 0) - (1 if n == x else 0) for n in gens]
    rhs_b = [-v for v in rhs_a]
    sol = solve_integer(a_rows + b_rows, rhs_a + rhs_b, ncols=len(g.regions))
    return None if sol is None else domain_from(g, sol)


def connects(d: TorusDiagram, dom: DomainVector, x: str, y: str) -> bool:
    g = geometry(d)
    a_rows, b_rows = _boundary_rows(g)
    gens = g.generators
    want = [(1 if n == y else 0) - (1 if n == x else 0) for n in gens]
    got_a = [sum(r * c for r, c in zip(row, dom.coefficients)) for row in a_rows]
    got_b = [sum(r * c for r, c in zip(row, dom.coefficients)) for row in b_rows]
    return got_a == want and got_b == [-v for v in want]


def maslov_index(d: TorusDiagram, dom: DomainVector, x: str, y: str) -> Fraction:
    g = geometry(d)
    e = sum((c * reg.euler_measure for c, reg in zip(dom.coefficients, g.regions)), Fraction(0))
    nx = sum((Fraction(c * reg.corners.get(x, 0), 4) for c, reg in zip(dom.coefficients, g.regions)), Fraction(0))
    ny = sum((Fraction(c * reg.corners.get(y, 0), 4) for c, reg in zip(dom.coefficients, g.regions)), Fraction(0))
    return e + nx + ny


def spinc_partition(d: TorusDiagram) -> List[List[str]]:
    """Generators grouped by the existence of a connecting integer domain."""
    g = geometry(d)
    classes: List[List[str]] = []
    for x in g.generators:
        for cls in classes:
            if connecting_domain(d, cls[0], x) is not None:
                cls.append(x)
                break
        else:
            classes.append([x])
    return classes


def spinc_labels(d: TorusDiagram) -> Dict[str, str]:
    """Component label per generator: ``s<k>`` with ``k`` the class relative to the first generator.

    ``k`` is the homology class of the loop from the first generator to
    ``x`` along alpha and back along beta (along beta first for a reversed
    orientation, which negates the class).
    """
    g = geometry(d)
    ref = g.generators[0]
    first = "alpha" if d.orientation == 1 else "beta"
    return {x: f"s{g.epsilon(ref, x, first)}" for x in g.generators}


def relative_gradings(d: TorusDiagram) -> Dict[str, int]:
    """Gradings from connecting domains, pinned to minimum 0 in each class.

    Integer relative gradings exist only for torsion classes, where every
    periodic domain has index 0; other classes raise :class:`StructureError`.
    """
    out: Dict[str, int] = {}
    periodic = periodic_domains(d)
    for cls in spinc_partition(d):
        ref = cls[0]
        bad = [p.coefficients for p in periodic if maslov_index(d, p, ref, ref)]
        if bad:
            raise StructureError(f"Spin^c class of {ref} is not torsion (periodic domain {list(bad[0])} has nonzero index); "
                                 "relative gradings are only cyclic")
        raw = {ref: Fraction(0)}
        for y in cls[1:]:
            dom = connecting_domain(d, ref, y)
            raw[y] = -(maslov_index(d, dom, ref, y) - 2 * dom.n_z)
        for y, v in raw.items():
            if v.denominator != 1:
                raise StructureError(f"non-integral relative grading for {y}")
        low = min(raw.values())
        for y, v in raw.items():
            out[y] = int(v - low)
    return out


def periodic_domains(d: TorusDiagram) -> List[DomainVector]:
    """Basis of periodic domains with ``n_z = 0``."""
    g = geometry(d)
    a_rows, b_rows = _boundary_rows(g)
    R = len(g.regions)
    zrow = [1 if r == g.z_region else 0 for r in range(R)]
    rows = a_rows + b_rows + [zrow]
    return [domain_from(g, v) for v in integer_kernel(rows, ncols=R)]


# ------------------------------------------------------------- admissibility

@dataclass
class AdmissibilityVerdict:
    component: str
    admissible: bool
    counterexample: Optional[Tuple[int, ...]]
    checked: int
    rank: int

    def describe(self) -> str:
        if self.rank == 0:
            return f"{self.component}: admissible (no nonzero periodic domains)"
        if self.admissible:
            return f"{self.component}: admissible within bound ({self.checked} lattice vectors checked)"
        return f"{self.component}: counterexample {list(self.counterexample)}"


def check_lattice_admissibility(basis: Sequence[Sequence[int]], pairing: Optional[Sequence[int]], bound: int,
                                component: str = "s0") -> AdmissibilityVerdict:
    """Strong admissibility on an explicit lattice of periodic domains.

    For every nonzero combination of the basis with coefficients in
    ``[-bound, bound]`` whose pairing ``2n`` is nonnegative, some region
    coefficient must exceed ``n``.  ``pairing`` gives the value on each
    basis vector (an odd total pairing never occurs for a genuine c_1 and
    is rejected).
    """
    basis = [list(b) for b in basis]
    if not basis:
        return AdmissibilityVerdict(component, True, None, 0, 0)
    if pairing is None:
        raise StructureError("a pairing is required for a lattice of positive rank")
    if len(pairing) != len(basis):
        raise StructureError("pairing has the wrong length")
    checked = 0
    width = len(basis[0])
    for coefs in product(range(-bound, bound + 1), repeat=len(basis)):
        if not any(coefs):
            continue
        vec = [sum(c * b[i] for c, b in zip(coefs, basis)) for i in range(width)]
        if not any(vec):
            continue
        checked += 1
        two_n = sum(c * p for c, p in zip(coefs, pairing))
        if two_n < 0:
            continue
        if two_n % 2:
            raise StructureError("pairing values must be even on periodic domains")
        n = two_n // 2
        if max(vec) <= n:
            return AdmissibilityVerdict(component, False, tuple(vec), checked, len(basis))
    return AdmissibilityVerdict(component, True, None, checked, len(basis))


def admissibility_report(verdicts: Sequence[AdmissibilityVerdict]) -> Report:
    rep = Report("strong admissibility")
    for v in verdicts:
        rep.note(v.describe())
        if not v.admissible:
            rep.add("admissibility", f"component {v.component}: periodic domain {list(v.counterexample)} has no coefficient above n",
                    v.component, v.counterexample)
    return rep


# ------------------------------------------------------------ bigons, pairing

def bigon_domain(d: TorusDiagram, b) -> DomainVector:
    """Region multiplicities of a bigon: lattice translates of each sample point inside it."""
    from .torus import point_in_polygon

    g = geometry(d)
    poly = b.polygon
    xs = [p[0] for p in poly]
    ys = [p[1] for p in poly]
    coeffs = []
    for reg in g.regions:
        su, sw = reg.sample
        cnt = 0
        for i in range(int(min(xs) - su) - 1, int(max(xs) - su) + 2):
            for j in range(int(min(ys) - sw) - 1, int(max(ys) - sw) + 2):
                if point_in_polygon((su + i, sw + j), poly):
                    cnt += 1
        coeffs.append(cnt)
    return domain_from(g, coeffs)


def c1_pairing(d: TorusDiagram, dom: DomainVector, x: str) -> int:
    """``<c_1(s_z(x)), H(P)> = e(P) + 2 n_x(P)`` for a periodic domain ``P``."""
    g = geometry(d)
    e = sum((c * reg.euler_measure for c, reg in zip(dom.coefficients, g.regions)), Fraction(0))
    nx = sum((Fraction(c * reg.corners.get(x, 0), 4) for c, reg in zip(dom.coefficients, g.regions)), Fraction(0))
    val = e + 2 * nx
    if val.denominator != 1:
        raise StructureError("non-integral first Chern class pairing")
    return int(val)

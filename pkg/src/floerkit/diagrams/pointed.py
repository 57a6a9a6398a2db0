"""Pointed diagrams built from torus and genus-two pieces by connect sum.

The connect sum is taken at the basepoints, so the regions containing the
basepoints merge into one region and every other region is unchanged.
Generators of a sum are tuples of piece generators, named by joining the
piece names with ``|``; the complex of a sum is the tensor product of the
piece complexes.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple, Union

from ..algebra.complexes import (
    ChainMap,
    Generator,
    GradedComplex,
    pin_gradings,
    require_chain_map,
    tensor_product,
    validate_complex,
)
from ..reports import Report, StructureError
from . import domains as dom
from .genus2 import GenusTwoFixture, conjugate_fixture
from .torus import Region, TorusDiagram, conjugate_torus, geometry, torus

Piece = Union[TorusDiagram, GenusTwoFixture]
SEP = "|"
SIGN_RULES = ("alpha-direction", "beta-direction")


@dataclass(frozen=True)
class PointedDiagram:
    pieces: Tuple[Piece, ...]

    def __init__(self, pieces: Sequence[Piece]):
        ps = tuple(pieces)
        if not ps:
            raise StructureError("a pointed diagram needs at least one piece")
        for p in ps:
            if not isinstance(p, (TorusDiagram, GenusTwoFixture)):
                raise StructureError(f"not a diagram piece: {p!r}")
        object.__setattr__(self, "pieces", ps)

    @property
    def genus(self) -> int:
        return sum(p.genus for p in self.pieces)

    def key(self) -> tuple:
        """Normalization key: the piece keys in order (offsets erased)."""
        return tuple(p.key() for p in self.pieces)

    def describe(self) -> str:
        return " # ".join(_piece_label(p) for p in self.pieces)


def _piece_label(p: Piece) -> str:
    if isinstance(p, GenusTwoFixture):
        return p.name
    a, b = p.alpha, p.beta
    tag = f"torus a={a.direction} b={b.direction}"
    if a.fingers or b.fingers:
        tag += f" fingers={len(a.fingers) + len(b.fingers)}"
    if p.orientation == -1:
        tag += " (reversed)"
    return tag


def as_pointed(d) -> PointedDiagram:
    if isinstance(d, PointedDiagram):
        return d
    return PointedDiagram([d])


# ------------------------------------------------------------- generators

@dataclass(frozen=True)
class Intersection:
    name: str
    coordinates: Tuple[object, ...]    # per piece: torus point (x, y) or fixture label


def piece_generators(p: Piece) -> List[str]:
    if isinstance(p, GenusTwoFixture):
        return p.generators()
    return list(geometry(p).generators)


def _piece_coords(p: Piece) -> Dict[str, object]:
    if isinstance(p, GenusTwoFixture):
        return {n: n for n in p.generators()}
    return dict(geometry(p).gen_coords)


def intersection_points(d) -> List[Intersection]:
    """Generators of the diagram with their coordinates on each piece."""
    d = as_pointed(d)
    out = [((), ())]
    for p in d.pieces:
        coords = _piece_coords(p)
        out = [(names + (n,), cs + (coords[n],)) for names, cs in out for n in piece_generators(p)]
    return [Intersection(SEP.join(names), cs) for names, cs in out]


# ------------------------------------------------------------ differentials

def bigon_differential(t: TorusDiagram, sign_rule: str = "alpha-direction") -> GradedComplex:
    """Complex of a torus piece: bigons weighted by ``sign * U^{n_z}``.

    Gradings come from connecting domains and are pinned to minimum 0 per
    Spin^c class; component labels are ``s<k>`` (see
    :func:`domains.spinc_labels`).
    """
    if not isinstance(t, TorusDiagram):
        raise StructureError("bigon differentials are only computed for torus pieces")
    if sign_rule not in SIGN_RULES:
        raise ValueError(f"unknown sign rule {sign_rule!r}; expected one of {SIGN_RULES}")
    g = geometry(t)
    labels = dom.spinc_labels(t)
    gr = dom.relative_gradings(t)
    gens = [Generator(n, gr[n], labels[n]) for n in g.generators]
    d: Dict[Tuple[str, str], list] = {}
    for b in g.bigons():
        s = b.sign if sign_rule == "alpha-direction" else b.beta_sign
        d.setdefault((b.target, b.source), []).append((s, b.n_z))
    return GradedComplex(gens, d)


def piece_complex(p: Piece, sign_rule: str = "alpha-direction") -> GradedComplex:
    if isinstance(p, GenusTwoFixture):
        return p.complex()
    return bigon_differential(p, sign_rule)


def diagram_complex(d, sign_rule: str = "alpha-direction") -> GradedComplex:
    """Tensor product of the piece complexes, gradings pinned per component."""
    d = as_pointed(d)
    c = piece_complex(d.pieces[0], sign_rule)
    for p in d.pieces[1:]:
        c = tensor_product(c, piece_complex(p, sign_rule), SEP)
    return pin_gradings(c)


# ---------------------------------------------------------------- regions

@dataclass
class RegionDecomposition:
    regions: List[Region]
    adjacency: List[Tuple[str, str, str]]     # (region, region, "alpha"/"beta" arc label)
    basepoint_region: str

    def kinds(self) -> Dict[str, str]:
        return {r.name: r.kind for r in self.regions}


def region_decomposition(t: TorusDiagram) -> RegionDecomposition:
    if not isinstance(t, TorusDiagram):
        raise StructureError("region decompositions are computed for torus pieces")
    g = geometry(t)
    adj = []
    for label, attr in (("alpha", "alpha_boundary"), ("beta", "beta_boundary")):
        owners: Dict[int, List[str]] = {}
        for r in g.regions:
            for arc, c in getattr(r, attr).items():
                owners.setdefault(arc, []).extend([r.name] * abs(c))
        for arc in sorted(owners):
            names = owners[arc]
            if len(names) == 1:          # an annulus bounded on both sides by the same arc
                names = names * 2
            adj.append((names[0], names[1], f"{label}{arc}"))
    return RegionDecomposition(g.regions, adj, g.regions[g.z_region].name)


# --------------------------------------------------------------- Spin^c data

def piece_spinc(p: Piece) -> Dict[str, str]:
    if isinstance(p, GenusTwoFixture):
        return {n: "s0" for n in p.generators()}
    return dom.spinc_labels(p)


def spinc_partition(d) -> Dict[str, List[str]]:
    """Component label -> sorted generator names.

    Two generators of a sum are connected by a domain exactly when their
    entries are connected piece by piece, so labels are joined with ``|``.
    """
    d = as_pointed(d)
    per = [piece_spinc(p) for p in d.pieces]
    out: Dict[str, List[str]] = {}
    for inter in intersection_points(d):
        names = inter.name.split(SEP) if len(d.pieces) > 1 else [inter.name]
        label = SEP.join(lab[n] for lab, n in zip(per, names))
        out.setdefault(label, []).append(inter.name)
    return {k: sorted(v) for k, v in sorted(out.items())}


@dataclass
class PeriodicLattice:
    regions: Tuple[str, ...]
    basis: List[Tuple[int, ...]]
    piece_of: List[int]                # which piece each basis vector lives on

    @property
    def rank(self) -> int:
        return len(self.basis)


def _piece_lattice(p: Piece):
    if isinstance(p, GenusTwoFixture):
        regions, basis, _ = p.periodic_lattice()
        return list(regions), [tuple(b) for b in basis], None
    g = geometry(p)
    names = [r.name for r in g.regions]
    per = dom.periodic_domains(p)
    return names, [v.coefficients for v in per], g.z_region


def periodic_domains(d) -> PeriodicLattice:
    """Periodic domains with ``n_z = 0`` of the sum, over the merged region list."""
    d = as_pointed(d)
    regions = ["z"]
    blocks = []
    for k, p in enumerate(d.pieces):
        names, basis, zi = _piece_lattice(p)
        idx = []
        for i, n in enumerate(names):
            if i == zi:
                idx.append(0)
            else:
                idx.append(len(regions))
                regions.append(f"p{k}:{n}")
        blocks.append((k, idx, basis))
    out, owner = [], []
    for k, idx, basis in blocks:
        for v in basis:
            full = [0] * len(regions)
            for i, c in zip(idx, v):
                full[i] += c
            out.append(tuple(full))
            owner.append(k)
    return PeriodicLattice(tuple(regions), out, owner)


def _piece_pairing(p: Piece, x: str) -> List[int]:
    if isinstance(p, GenusTwoFixture):
        return list(p.periodic_lattice()[2])
    return [dom.c1_pairing(p, v, x) for v in dom.periodic_domains(p)]


def check_admissibility(d, bound: int = 3, pairing: Optional[Dict[str, Sequence[int]]] = None) -> List[dom.AdmissibilityVerdict]:
    """Strong admissibility per Spin^c class on lattice vectors with coefficients in ``[-bound, bound]``.

    The first Chern class pairing is evaluated from the diagram on torus
    pieces and taken from the fixture tables on genus-two pieces;
    ``pairing`` overrides it per component label.
    """
    d = as_pointed(d)
    lat = periodic_domains(d)
    verdicts = []
    for label, gens in spinc_partition(d).items():
        if pairing is not None and label in pairing:
            pv = list(pairing[label])
        elif lat.rank:
            x = gens[0].split(SEP) if len(d.pieces) > 1 else [gens[0]]
            pv = []
            for p, xn in zip(d.pieces, x):
                pv += _piece_pairing(p, xn)
        else:
            pv = []
        verdicts.append(dom.check_lattice_admissibility(lat.basis, pv, bound, label))
    return verdicts


# ------------------------------------------------- stabilization, conjugation

STABILIZER = torus((1, 0), (0, 1), basepoint=("1/2", "1/2"), alpha_offset="1/4", beta_offset="1/4", prefix="c")


def stabilize_diagram(d, site: Optional[int] = None) -> Tuple[PointedDiagram, Dict[str, str]]:
    """Connect sum with the standard sphere piece, inserted at piece position ``site``.

    Returns the new diagram and the generator bijection ``x -> x x c``.
    """
    d = as_pointed(d)
    n = len(d.pieces)
    site = n if site is None else site
    if not 0 <= site <= n:
        raise StructureError(f"stabilization site {site} outside 0..{n}")
    new = PointedDiagram(d.pieces[:site] + (STABILIZER,) + d.pieces[site:])
    c = piece_generators(STABILIZER)[0]
    bij = {}
    for inter in intersection_points(d):
        parts = inter.name.split(SEP) if n > 1 else [inter.name]
        bij[inter.name] = SEP.join(parts[:site] + [c] + parts[site:])
    return new, bij


def destabilize_diagram(d, site: int) -> Tuple[PointedDiagram, Dict[str, str]]:
    d = as_pointed(d)
    if not (0 <= site < len(d.pieces)) or d.pieces[site].key() != STABILIZER.key():
        raise StructureError(f"piece {site} is not a standard sphere piece")
    if len(d.pieces) == 1:
        raise StructureError("cannot destabilize a single piece")
    base = PointedDiagram(d.pieces[:site] + d.pieces[site + 1:])
    again, bij = stabilize_diagram(base, site)
    if again.key() != d.key():
        raise StructureError("internal error: destabilization does not invert stabilization")
    return base, {v: k for k, v in bij.items()}


def conjugate_piece(p: Piece) -> Piece:
    return conjugate_fixture(p) if isinstance(p, GenusTwoFixture) else conjugate_torus(p)


def conjugate_diagram(d) -> PointedDiagram:
    """Orientation reversed and the two curve families swapped, basepoint fixed."""
    return PointedDiagram([conjugate_piece(p) for p in as_pointed(d).pieces])


def eta_map(d, sign_rule: str = "alpha-direction") -> ChainMap:
    """The identification of generators from the complex of ``d`` to that of its conjugate."""
    c = diagram_complex(d, sign_rule)
    cb = diagram_complex(conjugate_diagram(d), sign_rule)
    if set(c.names) != set(cb.names):
        raise StructureError("internal error: conjugation changed the generator set")
    for n in c.names:
        if c.grading(n) != cb.grading(n):
            raise StructureError(f"internal error: conjugation changed the grading of {n}")
    f = ChainMap.from_correspondence(c, cb, {n: n for n in c.names})
    require_chain_map(f)
    return f


def stabilization_map(d, site: Optional[int] = None, sign_rule: str = "alpha-direction") -> ChainMap:
    """The chain isomorphism ``x -> x x c`` between the complexes."""
    new, bij = stabilize_diagram(d, site)
    return ChainMap.from_correspondence(diagram_complex(d, sign_rule), diagram_complex(new, sign_rule), bij)


def diagram_report(d, bound: int = 3) -> Report:
    """Complex validity and strong admissibility (lattice coefficients up to ``bound``)."""
    d = as_pointed(d)
    rep = Report(f"diagram {d.describe()}")
    c = diagram_complex(d)
    rep.extend(validate_complex(c))
    rep.note(f"genus {d.genus}; generators {len(c)}; Spin^c classes {len(spinc_partition(d))}")
    rep.extend(dom.admissibility_report(check_admissibility(d, bound)))
    return rep

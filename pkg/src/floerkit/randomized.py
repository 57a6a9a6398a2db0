"""Seeded random constructions of valid complexes and chain maps.

Complexes are direct sums of small pieces (single generators, ``x -> c U^k y``
arrows and tensor squares of arrows), scrambled by random graded changes of
basis.  Endomorphisms are built piece-wise from isomorphisms between equal
pieces and then perturbed by null-homotopic maps, so they are always chain
maps.  Every helper takes an explicit ``random.Random``.
"""

from __future__ import annotations

import os
import random
from typing import Dict, Iterable, List, Optional, Tuple

from .algebra.complexes import ChainMap, Generator, GradedComplex, compose, mat_add, mat_mul, tensor_product
from .algebra.upoly import ONE, UPoly, ZERO


def seed_from_env(default: int = 0) -> int:
    """Seed from ``FLOER_SEED`` when set."""
    raw = os.environ.get("FLOER_SEED")
    return int(raw) if raw not in (None, "") else default


def rng_from_env(offset: int = 0) -> random.Random:
    return random.Random(seed_from_env() * 1_000_003 + offset)


# piece templates: (kind, params)
def _piece(template, prefix: str, base: int, comp: str) -> GradedComplex:
    kind = template[0]
    if kind == "point":
        return GradedComplex([Generator(f"{prefix}a", base, comp)])
    if kind == "arrow":
        _, c, k = template
        x, y = Generator(f"{prefix}a", base + 1 - 2 * k, comp), Generator(f"{prefix}b", base, comp)
        return GradedComplex([x, y], {(y.name, x.name): UPoly.monomial(c, k)})
    if kind == "square":
        _, (c1, k1), (c2, k2) = template
        a1 = _piece(("arrow", c1, k1), "p", 0, comp)
        a2 = _piece(("arrow", c2, k2), "q", 0, comp)
        t = tensor_product(a1, a2, sep="")
        mapping = {n: f"{prefix}{n}" for n in t.names}
        t = t.rename(mapping)
        return t.with_generators(Generator(g.name, g.grading + base, g.component) for g in t.generators)
    raise ValueError(kind)


def _random_template(rng: random.Random, max_u: int, max_coeff: int):
    r = rng.random()
    coef = lambda: rng.choice([1, -1] * 3 + [c * s for c in range(2, max_coeff + 1) for s in (1, -1)])
    if r < 0.3:
        return ("point",)
    if r < 0.85:
        return ("arrow", coef(), rng.randint(0, max_u))
    return ("square", (coef(), rng.randint(0, max_u)), (coef(), rng.randint(0, max_u)))


class PieceComplex:
    """A direct sum of template pieces, remembering the decomposition."""

    def __init__(self, pieces: List[Tuple[tuple, int, str]]):
        self.pieces = pieces
        gens, d = [], {}
        self.blocks: List[GradedComplex] = []
        for i, (tpl, base, comp) in enumerate(pieces):
            p = _piece(tpl, f"g{i:02d}", base, comp)
            self.blocks.append(p)
            gens.extend(p.generators)
            d.update(p.d)
        self.complex = GradedComplex(gens, d)

    def piece_iso(self, i: int, j: int) -> Dict[str, str]:
        """Name bijection between two pieces built from the same template."""
        a, b = self.blocks[i], self.blocks[j]
        return dict(zip(a.names, b.names))

    def same_shape(self, i: int, j: int) -> bool:
        (ti, bi, _), (tj, bj, _) = self.pieces[i], self.pieces[j]
        return ti == tj and bi == bj


def random_piece_complex(rng: random.Random, n_pieces: Optional[int] = None, max_u: int = 2, max_coeff: int = 3,
                         components: Tuple[str, ...] = ("s0",), palette: int = 3) -> PieceComplex:
    n = n_pieces if n_pieces is not None else rng.randint(1, 4)
    pal = [(_random_template(rng, max_u, max_coeff), rng.randint(-2, 2), rng.choice(components)) for _ in range(palette)]
    return PieceComplex([rng.choice(pal) for _ in range(n)])


def random_complex(rng: random.Random, n_pieces: Optional[int] = None, scramble: int = 6, **kw) -> GradedComplex:
    pc = random_piece_complex(rng, n_pieces, **kw)
    c2, _, _ = random_basis_change(rng, pc.complex, scramble)
    return c2


def _elementary(rng: random.Random, c: GradedComplex, max_coeff: int = 2):
    gens = c.generators
    pairs = []
    for gi in gens:
        for gj in gens:
            if gi.name == gj.name or gi.component != gj.component:
                continue
            diff = gj.grading - gi.grading
            if diff >= 0 and diff % 2 == 0:
                pairs.append((gi.name, gj.name, diff // 2))
    if not pairs:
        return None
    i, j, k = rng.choice(pairs)
    lam = rng.choice([v for v in range(-max_coeff, max_coeff + 1) if v])
    return i, j, UPoly.monomial(lam, k)


def random_basis_change(rng: random.Random, c: GradedComplex, steps: int = 6):
    """Return ``(c2, phi, phi_inv)`` where ``phi: c -> c2`` is a chain isomorphism.

    ``c2`` has the same generators and the conjugated differential.  Each step
    replaces the basis vector ``e_i`` by ``e_i + lam U^k e_j``.
    """
    ident = {(n, n): ONE for n in c.names}
    E_total = dict(ident)      # new coordinates -> old coordinates
    Einv_total = dict(ident)   # old -> new
    for _ in range(steps):
        el = _elementary(rng, c)
        if el is None:
            break
        i, j, p = el
        E = dict(ident)
        E[(j, i)] = p
        Einv = dict(ident)
        Einv[(j, i)] = -p
        E_total = mat_mul(E_total, E)
        Einv_total = mat_mul(Einv, Einv_total)
    d2 = mat_mul(Einv_total, mat_mul(c.d, E_total))
    c2 = GradedComplex(c.generators, d2)
    return c2, ChainMap(c, c2, Einv_total), ChainMap(c2, c, E_total)


def random_homotopy(rng: random.Random, source: GradedComplex, target: GradedComplex, degree: int = 1,
                    density: float = 0.4, max_coeff: int = 2,
                    allowed: Optional[Iterable[Tuple[str, str]]] = None) -> ChainMap:
    """Random graded map respecting the component decomposition.

    Entries run only between ``(source component, target component)`` pairs
    in ``allowed`` (default: equal labels), so ``null_homotopic`` of the
    result never links components that the perturbed map keeps apart.
    """
    pairs = set(allowed) if allowed is not None else None

    def linked(a: str, b: str) -> bool:
        return a == b if pairs is None else (a, b) in pairs

    ent = {}
    for gx in source.generators:
        for gy in target.generators:
            if not linked(gx.component, gy.component):
                continue
            diff = gy.grading - gx.grading - degree
            if diff >= 0 and diff % 2 == 0 and rng.random() < density:
                c = rng.randint(-max_coeff, max_coeff)
                if c:
                    ent[(gy.name, gx.name)] = UPoly.monomial(c, diff // 2)
    return ChainMap(source, target, ent, degree)


def null_homotopic(h: ChainMap) -> ChainMap:
    """``d h + h d`` for an odd-degree ``h`` of degree 1 (a degree-0 chain map)."""
    m = mat_add(mat_mul(h.target.d, h.m), mat_mul(h.m, h.source.d))
    return ChainMap(h.source, h.target, m, h.degree - 1)


def random_piece_endomorphism(rng: random.Random, pc: PieceComplex, scalars=(-2, -1, 0, 1, 2)) -> ChainMap:
    """Block map sending each piece to an equal-shaped piece times a scalar."""
    ent = {}
    for i in range(len(pc.pieces)):
        choices = [j for j in range(len(pc.pieces)) if pc.same_shape(i, j)]
        j = rng.choice(choices)
        s = rng.choice(scalars)
        if s:
            for a, b in pc.piece_iso(i, j).items():
                ent[(b, a)] = ent.get((b, a), ZERO) + UPoly.const(s)
    return ChainMap(pc.complex, pc.complex, ent)


def random_endomorphism_setup(rng: random.Random, n_pieces: Optional[int] = None, perturb: bool = True, **kw):
    """Random complex ``C`` with a random chain endomorphism.

    Returns ``(C, f)``; ``f`` is natural on pieces, conjugated by a random
    basis change and (optionally) perturbed by a null-homotopic map.
    """
    pc = random_piece_complex(rng, n_pieces, **kw)
    f0 = random_piece_endomorphism(rng, pc)
    c2, phi, phi_inv = random_basis_change(rng, pc.complex)
    f = compose(phi, compose(f0, phi_inv))
    if perturb:
        f = f + null_homotopic(random_homotopy(rng, c2, c2))
    return c2, f


def random_chain_map(rng: random.Random, n_pieces: Optional[int] = None, **kw):
    """Random degree-0 chain map between two (generally different) complexes."""
    pc = random_piece_complex(rng, n_pieces, **kw)
    f0 = random_piece_endomorphism(rng, pc)
    a, _, phi_a_inv = random_basis_change(rng, pc.complex)
    b, phi_b, _ = random_basis_change(rng, pc.complex)
    f = compose(phi_b, compose(f0, phi_a_inv))
    return f + null_homotopic(random_homotopy(rng, a, b))

"""Standard diagrams and random generators of torus diagrams."""

from __future__ import annotations

import random
from fractions import Fraction
from math import gcd
from typing import Dict, List, Tuple

from ..reports import StructureError
from .genus2 import fixture
from .pointed import PointedDiagram
from .torus import TorusDiagram, apply_sl2, geometry, torus


def s3() -> TorusDiagram:
    return torus((1, 0), (0, 1), basepoint=("1/3", "1/5"))


def lens(p: int) -> TorusDiagram:
    """The genus-one diagram of L(p, 1): alpha = (1, 0), beta = (1, p)."""
    if p < 1:
        raise ValueError("p must be positive")
    return torus((1, 0), (1, p), basepoint=("1/7", "1/11"))


def wiggle(fingers: int = 1) -> TorusDiagram:
    """S^1 x S^2: beta a parallel copy of alpha pushed across it by ``fingers`` fingers."""
    if fingers < 1:
        raise ValueError("at least one finger is needed")
    pos = tuple(Fraction(2 * k + 1, 2 * fingers) for k in range(fingers))
    return torus((1, 0), (1, 0), basepoint=("1/3", "3/4"), beta_offset="1/2", fingers=pos)


def catalog() -> Dict[str, PointedDiagram]:
    out = {"s3": PointedDiagram([s3()]), "wiggle": PointedDiagram([wiggle(1)]), "wiggle2": PointedDiagram([wiggle(2)])}
    for p in range(1, 8):
        out[f"lens{p}"] = PointedDiagram([lens(p)])
    out["double_stabilizer"] = PointedDiagram([fixture("double_stabilizer")])
    out["handleswap_alpha"] = PointedDiagram([fixture("handleswap_alpha")])
    out["handleswap_beta"] = PointedDiagram([fixture("handleswap_beta")])
    return out


# ----------------------------------------------------------------- random

def _rand_q(rng: random.Random, den: int = 97) -> Fraction:
    return Fraction(rng.randrange(1, den), den)


def random_sl2(rng: random.Random, steps: int = 3) -> Tuple[int, int, int, int]:
    m = (1, 0, 0, 1)
    for _ in range(steps):
        k = rng.choice([-2, -1, 1, 2])
        e = (1, k, 0, 1) if rng.random() < 0.5 else (1, 0, k, 1)
        a, b, c, d = m
        p, q, r, s = e
        m = (p * a + q * c, p * b + q * d, r * a + s * c, r * b + s * d)
    return m


def _with_region_basepoint(d: TorusDiagram, region_kind: str) -> TorusDiagram:
    """Move the basepoint to the sample point of a region of the given kind."""
    g = geometry(d)
    for reg in g.regions:
        if reg.kind == region_kind:
            z = g.from_frame(reg.sample)
            return TorusDiagram(d.alpha, d.beta, (z[0] % 1, z[1] % 1), d.orientation, d.prefix)
    raise StructureError(f"no {region_kind} region")


def random_wiggle(rng: random.Random, max_fingers: int = 3, twist: bool = True) -> TorusDiagram:
    """A parallel pair with random fingers, basepoint in the annulus (the torsion class)."""
    n = rng.randint(1, max_fingers)
    pos = set()
    while len(pos) < n:
        pos.add(Fraction(rng.randrange(0, 48), 48))
    off = _rand_q(rng)
    shape = torus((1, 0), (1, 0), basepoint=("1/3", "1/7"), alpha_offset=0, beta_offset=off, fingers=sorted(pos))
    if twist:
        shape = apply_sl2(shape, random_sl2(rng))
    try:
        geometry(shape)
    except StructureError:
        shape = TorusDiagram(shape.alpha, shape.beta, (Fraction(1, 101), Fraction(1, 103)), shape.orientation)
    return _with_region_basepoint(shape, "annulus")


def random_geodesic(rng: random.Random, max_det: int = 7) -> TorusDiagram:
    """Two random transverse primitive directions with ``|det| <= max_det`` and random offsets."""
    while True:
        a = (rng.randint(-3, 3), rng.randint(-3, 3))
        b = (rng.randint(-3, 3), rng.randint(-3, 3))
        if gcd(*a) != 1 or gcd(*b) != 1:
            continue
        det = a[0] * b[1] - a[1] * b[0]
        if det == 0 or abs(det) > max_det:
            continue
        d = torus(a, b, basepoint=(_rand_q(rng, 89), _rand_q(rng, 83)), alpha_offset=_rand_q(rng), beta_offset=_rand_q(rng))
        try:
            geometry(d)
        except StructureError:
            continue
        return d


def random_torus(rng: random.Random) -> TorusDiagram:
    return random_wiggle(rng) if rng.random() < 0.5 else random_geodesic(rng)


def names() -> List[str]:
    return sorted(catalog())

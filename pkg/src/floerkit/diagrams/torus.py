"""Genus-one pointed diagrams with exact rational geometry.

A curve on the torus ``R^2 / Z^2`` is the image of the lines
``det(direction, v) = offset + m`` (``m`` an integer), optionally with
fingers pushed across the other curve.  All computation happens in a
*frame*: an ``SL(2, Z)`` change of coordinates (plus a vertical
translation) in which the straight curve is the family of horizontal lines
``w = m``.  The torus cut along that curve is the cylinder
``S^1 x [0, 1]`` and the other curve becomes a family of disjoint arcs with
ends on the two boundary circles; regions are found by walking faces of
that cylinder.

Bigons are found in the universal cover: for each generator the lift of
the second curve through it is intersected with the horizontal line
through it, and every pair of crossings bounding an embedded disk with two
convex corners is recorded with its basepoint multiplicity.

Sign convention.  A bigon from ``x`` to ``y`` gets sign ``+1`` when its arc
on the alpha curve of the positively oriented presentation runs from ``x``
to ``y`` along that curve's orientation, and ``-1`` otherwise.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import floor, gcd
from typing import Dict, List, Sequence, Tuple

from ..reports import StructureError

Vec = Tuple[Fraction, Fraction]


def _q(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return Fraction(x)
    if isinstance(x, float):
        return Fraction(x).limit_denominator(10 ** 9)
    return Fraction(x)


def _frac(x: Fraction) -> Fraction:
    return x - floor(x)


def _cross(a: Vec, b: Vec) -> Fraction:
    return a[0] * b[1] - a[1] * b[0]


def _sub(a: Vec, b: Vec) -> Vec:
    return (a[0] - b[0], a[1] - b[1])


def _add(a: Vec, b: Vec) -> Vec:
    return (a[0] + b[0], a[1] + b[1])


def _egcd(a: int, b: int) -> Tuple[int, int, int]:
    if b == 0:
        return (a, 1, 0)
    g, s, t = _egcd(b, a % b)
    return (g, t, s - (a // b) * t)


def signed_area(poly: Sequence[Vec]) -> Fraction:
    n = len(poly)
    return sum((_cross(poly[i], poly[(i + 1) % n]) for i in range(n)), Fraction(0)) / 2


def point_in_polygon(pt: Vec, poly: Sequence[Vec]) -> bool:
    """Even-odd test; ``pt`` must not lie on the boundary."""
    x, y = pt
    inside = False
    n = len(poly)
    for i in range(n):
        (x1, y1), (x2, y2) = poly[i], poly[(i + 1) % n]
        if (y1 > y) != (y2 > y):
            xi = x1 + (y - y1) * (x2 - x1) / (y2 - y1)
            if xi > x:
                inside = not inside
    return inside


# ------------------------------------------------------------------ data

@dataclass(frozen=True)
class Curve:
    """The curve ``det(direction, v) = offset (mod 1)``, possibly with fingers.

    ``fingers`` are positions (fractions of the other curve's length, in
    the frame) where the curve is pushed across the other curve; each
    finger adds two intersection points.
    """

    direction: Tuple[int, int]
    offset: Fraction = Fraction(0)
    fingers: Tuple[Fraction, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "direction", (int(self.direction[0]), int(self.direction[1])))
        object.__setattr__(self, "offset", _q(self.offset))
        object.__setattr__(self, "fingers", tuple(sorted(_frac(_q(f)) for f in self.fingers)))


@dataclass(frozen=True)
class TorusDiagram:
    """A pointed genus-one diagram.

    ``orientation`` is ``+1`` for the standard orientation of the torus and
    ``-1`` for its reverse.  Fingers are carried by the beta curve of the
    positively oriented presentation, which is ``beta`` when
    ``orientation = +1`` and ``alpha`` when ``orientation = -1``.
    """

    alpha: Curve
    beta: Curve
    basepoint: Vec
    orientation: int = 1
    prefix: str = "x"             # generator names: prefix + index (just prefix if there is one)

    def __post_init__(self):
        object.__setattr__(self, "basepoint", (_q(self.basepoint[0]), _q(self.basepoint[1])))

    @property
    def positive_curves(self) -> Tuple[Curve, Curve]:
        """``(alpha, beta)`` of the positively oriented presentation."""
        return (self.alpha, self.beta) if self.orientation == 1 else (self.beta, self.alpha)

    @property
    def is_wiggle(self) -> bool:
        return bool(self.positive_curves[1].fingers)

    @property
    def genus(self) -> int:
        return 1

    def key(self) -> tuple:
        """Isotopy proxy: curve directions and finger counts, offsets erased."""
        a, b = self.alpha, self.beta
        return ("torus", a.direction, len(a.fingers), b.direction, len(b.fingers), self.orientation)


def torus(alpha, beta, basepoint=("1/2", "1/2"), alpha_offset=0, beta_offset="1/2", fingers=(), prefix="x") -> TorusDiagram:
    return TorusDiagram(Curve(tuple(alpha), alpha_offset), Curve(tuple(beta), beta_offset, tuple(fingers)), basepoint,
                        1, prefix)


def conjugate_torus(d: TorusDiagram) -> TorusDiagram:
    """Reverse the orientation and swap the roles of the two curves."""
    return TorusDiagram(d.beta, d.alpha, d.basepoint, -d.orientation, d.prefix)


def apply_sl2(d: TorusDiagram, m: Tuple[int, int, int, int]) -> TorusDiagram:
    """Image of ``d`` under the linear torus diffeomorphism ``[[a, b], [c, e]]``.

    A curve ``det(u, v) = t`` maps to ``det(M u, v) = det(M) t``.
    """
    a, b, c, e = m
    det = a * e - b * c
    if det not in (1, -1):
        raise StructureError(f"matrix {m} is not in GL(2, Z)")

    def img(cv: Curve) -> Curve:
        p, q = cv.direction
        return Curve((a * p + b * q, c * p + e * q), cv.offset * det, cv.fingers)

    z = d.basepoint
    zb = (_frac(a * z[0] + b * z[1]), _frac(c * z[0] + e * z[1]))
    return TorusDiagram(img(d.alpha), img(d.beta), zb, d.orientation * det, d.prefix)


# ---------------------------------------------------------------- geometry

@dataclass
class Region:
    name: str
    kind: str                     # "disk" or "annulus"
    chi: int
    corners: Dict[str, int]       # generator -> number of corners at it
    alpha_boundary: Dict[int, int]
    beta_boundary: Dict[int, int]
    sample: Vec                   # interior point in frame coordinates

    @property
    def corner_count(self) -> int:
        return sum(self.corners.values())

    @property
    def euler_measure(self) -> Fraction:
        return Fraction(self.chi) - Fraction(self.corner_count, 4)


@dataclass
class Bigon:
    source: str
    target: str
    sign: int
    n_z: int
    polygon: Tuple[Vec, ...]
    beta_sign: int = 1            # +1 when the beta arc from target to source runs along beta

    def describe(self) -> str:
        return f"{self.source} -> {self.target} sign {self.sign:+d} n_z {self.n_z}"


class TorusGeometry:
    """All derived combinatorics of one torus diagram (frame coordinates)."""

    RAY_SLOPES = (Fraction(1, 7919), Fraction(-1, 6007), Fraction(1, 104729), Fraction(3, 1009))

    def __init__(self, d: TorusDiagram):
        check_torus(d)
        self.diagram = d
        ca, cb = d.positive_curves
        self._frame(ca, cb)
        self._beta_path(ca, cb)
        self._crossings()
        self._cylinder()
        self._walk_faces()
        self._locate_basepoint()

    # frame --------------------------------------------------------------
    def _frame(self, ca: Curve, cb: Curve) -> None:
        p, q = ca.direction
        g, s, t = _egcd(p, q)
        if g < 0:
            g, s, t = -g, -s, -t
        x, y = -t, s                           # p*y - q*x = 1
        A = [[y, -x], [-q, p]]                 # A @ (p, q) = (1, 0)
        r, sb = (A[0][0] * cb.direction[0] + A[0][1] * cb.direction[1],
                 A[1][0] * cb.direction[0] + A[1][1] * cb.direction[1])
        if sb != 0:
            k = -round(Fraction(r, sb))
            A = [[A[0][0] + k * A[1][0], A[0][1] + k * A[1][1]], A[1]]
            r = r + k * sb
        self.A = A
        self.Ainv = [[A[1][1], -A[0][1]], [-A[1][0], A[0][0]]]
        self.a0 = ca.offset
        self.b_frame = (r, sb)

    def to_frame(self, v: Vec) -> Vec:
        A = self.A
        return (A[0][0] * v[0] + A[0][1] * v[1], A[1][0] * v[0] + A[1][1] * v[1] - self.a0)

    def from_frame(self, f: Vec) -> Vec:
        M = self.Ainv
        u, w = f[0], f[1] + self.a0
        return (M[0][0] * u + M[0][1] * w, M[1][0] * u + M[1][1] * w)

    # beta path ----------------------------------------------------------
    def _beta_path(self, ca: Curve, cb: Curve) -> None:
        r, s = self.b_frame
        if not cb.fingers:
            c = cb.offset - r * self.a0
            half = Fraction(1, 2)
            p0 = ((r * half - c) / s, half)
            self.path = [p0, (p0[0] + r, p0[1] + s)]
            self.period = (Fraction(r), Fraction(s))
            self.finger_data = ()
            return
        eps = 1 if r == 1 else -1
        cw = _frac(eps * cb.offset - self.a0)
        if cw == 0:
            raise StructureError("a wiggled curve must be disjoint from the other curve before fingering")
        fs = list(cb.fingers)
        gaps = [fs[i + 1] - fs[i] for i in range(len(fs) - 1)] + [fs[0] + 1 - fs[-1]]
        h = min(Fraction(1, 8), min(gaps) / 3)
        depth = min(cw, 1 - cw) / 2
        last, first = fs[-1], fs[0] + 1
        start = (last + first) / 2 - 1 if (last + first) / 2 >= 1 else (last + first) / 2
        lifted = sorted(f if f > start else f + 1 for f in fs)
        pts: List[Vec] = [(start, cw)]
        for f in lifted:
            pts += [(f - h, cw), (f - h / 2, -depth), (f + h / 2, -depth), (f + h, cw)]
        pts.append((start + 1, cw))
        if eps == -1:
            pts.reverse()
        self.path = pts
        self.period = (Fraction(eps), Fraction(0))
        self.finger_data = tuple((f, h, depth) for f in lifted)

    def path_segments(self):
        return list(zip(self.path[:-1], self.path[1:]))

    # crossings ------------------------------------------------------------
    def _crossings(self) -> None:
        out = []
        for si, (P, Q) in enumerate(self.path_segments()):
            if P[1] == Q[1]:
                continue
            lo, hi = sorted((P[1], Q[1]))
            first = floor(lo) + 1 if lo != floor(lo) else int(lo)
            m = first
            found = []
            while m <= hi:
                tau = (m - P[1]) / (Q[1] - P[1])
                if tau in (0, 1):
                    raise StructureError("curve vertex lies on the other curve")
                found.append((tau, (P[0] + tau * (Q[0] - P[0]), Fraction(m))))
                m += 1
            found.sort()
            out.extend((si, tau, pt) for tau, pt in found)
        if not out:
            raise StructureError("curves do not intersect")
        self.cross = out
        n = len(out)
        # generators: distinct points of the torus
        frame_pts = [(_frac(pt[0]), Fraction(0)) for _, _, pt in out]
        if len(set(frame_pts)) != n:
            raise StructureError("curves are not transverse (repeated intersection point)")
        orig = [tuple(_frac(c) for c in self.from_frame(fp)) for fp in frame_pts]
        order = sorted(range(n), key=lambda i: orig[i])
        width = len(str(n - 1))
        pre = self.diagram.prefix
        self.cross_gen = [""] * n
        for rank, i in enumerate(order):
            self.cross_gen[i] = pre if n == 1 else f"{pre}{rank:0{width}d}"
        self.gen_u = {self.cross_gen[i]: frame_pts[i][0] for i in range(n)}
        self.gen_coords = {self.cross_gen[i]: orig[i] for i in range(n)}
        self.generators = sorted(self.cross_gen)

    # cylinder -----------------------------------------------------------
    def crossing_point(self, g: int) -> Vec:
        n = len(self.cross)
        k, j = divmod(g, n)
        pt = self.cross[j][2]
        return (pt[0] + k * self.period[0], pt[1] + k * self.period[1])

    def _crossing_key(self, g: int):
        n = len(self.cross)
        k, j = divmod(g, n)
        si, tau, _ = self.cross[j]
        return (k, si, tau)

    def polyline_between(self, g1: int, g2: int) -> List[Vec]:
        """Points of the beta path from crossing ``g1`` to crossing ``g2 > g1``."""
        L = len(self.path) - 1
        k1, s1, _ = self._crossing_key(g1)
        k2, s2, _ = self._crossing_key(g2)
        pts = [self.crossing_point(g1)]
        # path vertices strictly after (k1, s1) and up to (k2, s2)
        k, v = k1, s1 + 1
        while (k, v) <= (k2, s2):
            if v == L:
                k, v = k + 1, 0
                continue
            P = self.path[v]
            pts.append((P[0] + k * self.period[0], P[1] + k * self.period[1]))
            v += 1
        pts.append(self.crossing_point(g2))
        return pts

    def _cylinder(self) -> None:
        n = len(self.cross)
        self.arcs: List[List[Vec]] = []
        self.arc_ends: Dict[Tuple[str, str], Tuple[int, str]] = {}
        self.arc_gen: List[Tuple[str, str]] = []
        for i in range(n):
            poly = self.polyline_between(i, i + 1)
            mid = ((poly[0][0] + poly[1][0]) / 2, (poly[0][1] + poly[1][1]) / 2)
            m = floor(mid[1])
            shift_u = -floor(poly[0][0])
            poly = [(p[0] + shift_u, p[1] - m) for p in poly]
            self.arcs.append(poly)
            ends = []
            for which, pt in (("start", poly[0]), ("end", poly[-1])):
                side = "B" if pt[1] == 0 else "T"
                if pt[1] not in (0, 1):
                    raise StructureError("internal error: arc does not end on the cut curve")
                gname = self._gen_at(_frac(pt[0]))
                if (side, gname) in self.arc_ends:
                    raise StructureError("internal error: two arcs end at the same side of a crossing")
                self.arc_ends[(side, gname)] = (i, which)
                ends.append(gname)
            self.arc_gen.append((ends[0], ends[1]))
        self.order_u = sorted(self.generators, key=lambda g: self.gen_u[g])

    def _gen_at(self, u: Fraction) -> str:
        for g, gu in self.gen_u.items():
            if gu == u:
                return g
        raise StructureError("internal error: unmatched crossing")

    def alpha_arc_ends(self, j: int) -> Tuple[str, str]:
        """Alpha arc ``j`` runs from ``order_u[j]`` to the next generator in +u order."""
        n = len(self.order_u)
        return self.order_u[j], self.order_u[(j + 1) % n]

    def beta_arc_ends(self, i: int) -> Tuple[str, str]:
        return self.arc_gen[i]

    # faces --------------------------------------------------------------
    def _walk_faces(self) -> None:
        n = len(self.order_u)
        pos = {g: k for k, g in enumerate(self.order_u)}
        used = set()
        walks = []
        for start in [("B", g) for g in self.order_u] + [("T", g) for g in self.order_u]:
            if start in used:
                continue
            w = {"alpha": {}, "beta": {}, "corners": {}, "du": Fraction(0), "segments": [], "arcs": []}
            seg = start
            while seg not in used:
                used.add(seg)
                w["segments"].append(seg)
                side, v = seg
                k = pos[v]
                if side == "B":
                    nxt = self.order_u[(k + 1) % n]
                    j = k
                    w["alpha"][j] = w["alpha"].get(j, 0) + 1
                    du = _frac(self.gen_u[nxt] - self.gen_u[v]) or Fraction(1)
                    w["du"] += du
                else:
                    nxt = self.order_u[(k - 1) % n]
                    j = (k - 1) % n
                    w["alpha"][j] = w["alpha"].get(j, 0) - 1
                    du = _frac(self.gen_u[v] - self.gen_u[nxt]) or Fraction(1)
                    w["du"] -= du
                w["corners"][nxt] = w["corners"].get(nxt, 0) + 1
                arc, which = self.arc_ends[(side, nxt)]
                poly = self.arcs[arc]
                if which == "start":
                    w["beta"][arc] = w["beta"].get(arc, 0) + 1
                    w["du"] += poly[-1][0] - poly[0][0]
                    end_pt = poly[-1]
                    w["arcs"].append((arc, 1))
                else:
                    w["beta"][arc] = w["beta"].get(arc, 0) - 1
                    w["du"] += poly[0][0] - poly[-1][0]
                    end_pt = poly[0]
                    w["arcs"].append((arc, -1))
                side2 = "B" if end_pt[1] == 0 else "T"
                g2 = self._gen_at(_frac(end_pt[0]))
                w["corners"][g2] = w["corners"].get(g2, 0) + 1
                seg = (side2, g2)
            if seg != start:
                raise StructureError("internal error: face walk did not close")
            walks.append(w)
        disks = [w for w in walks if w["du"] == 0]
        winding = [w for w in walks if w["du"] != 0]
        groups = [[w] for w in disks]
        if winding:
            groups.append(winding)
        self.regions: List[Region] = []
        self._arc_side: Dict[Tuple[int, int], int] = {}
        self._seg_region: Dict[Tuple[str, str], int] = {}
        for idx, grp in enumerate(groups):
            alpha, beta, corners = {}, {}, {}
            for w in grp:
                for dct, src in ((alpha, w["alpha"]), (beta, w["beta"]), (corners, w["corners"])):
                    for key, val in src.items():
                        dct[key] = dct.get(key, 0) + val
                for arc_dir in w["arcs"]:
                    self._arc_side[arc_dir] = idx
                for seg in w["segments"]:
                    self._seg_region[seg] = idx
            kind = "disk" if len(grp) == 1 and grp[0]["du"] == 0 else "annulus"
            reg = Region(f"R{idx}", kind, 1 if kind == "disk" else 0, corners,
                         {k: v for k, v in alpha.items() if v}, {k: v for k, v in beta.items() if v},
                         self._sample_for(grp[0]["segments"][0]))
            self.regions.append(reg)
        if sum(r.chi for r in self.regions) != len(self.generators):
            raise StructureError("internal error: region Euler characteristics do not add up")
        for i, reg in enumerate(self.regions):
            if self.locate(reg.sample) != i:
                raise StructureError("internal error: region sample point located elsewhere")

    def _arc_translates(self):
        for ai, poly in enumerate(self.arcs):
            for k in (-2, -1, 0, 1, 2):
                yield ai, [(p[0] + k, p[1]) for p in poly]

    def _sample_for(self, seg) -> Vec:
        side, v = seg
        n = len(self.order_u)
        k = self.order_u.index(v)
        if side == "B":
            nxt = self.order_u[(k + 1) % n]
            lo = self.gen_u[v]
            hi = lo + (_frac(self.gen_u[nxt] - lo) or 1)
        else:
            nxt = self.order_u[(k - 1) % n]
            lo = self.gen_u[nxt]
            hi = lo + (_frac(self.gen_u[v] - lo) or 1)
        um = (lo + hi) / 2
        best = Fraction(1) if side == "B" else Fraction(0)
        for _, poly in self._arc_translates():
            for P, Q in zip(poly[:-1], poly[1:]):
                if P[0] == Q[0] or not (min(P[0], Q[0]) <= um <= max(P[0], Q[0])):
                    continue
                w = P[1] + (um - P[0]) * (Q[1] - P[1]) / (Q[0] - P[0])
                if side == "B" and 0 < w < best:
                    best = w
                if side == "T" and best < w < 1:
                    best = w
        wm = best / 2 if side == "B" else (best + 1) / 2
        return (_frac(um), wm)

    def locate(self, pt: Vec) -> int:
        """Index of the region containing a frame point (``0 < w < 1`` after reduction)."""
        u, w = _frac(pt[0]), _frac(pt[1])
        if w == 0:
            raise StructureError("point lies on the alpha curve")
        for eta in self.RAY_SLOPES:
            res = self._cast(u, w, eta)
            if res is not None:
                return res
        raise StructureError("could not locate point (degenerate position)")

    def _cast(self, u, w, eta):
        best = None
        for ai, poly in self._arc_translates():
            for P, Q in zip(poly[:-1], poly[1:]):
                d = (Q[0] - P[0], Q[1] - P[1])
                den = _cross((eta, Fraction(-1)), d)
                if den == 0:
                    continue
                rel = (P[0] - u, P[1] - w)
                s = _cross(rel, d) / den
                tau = _cross(rel, (eta, Fraction(-1))) / den
                if s < 0 or tau < 0 or tau > 1:
                    continue
                if s == 0:
                    raise StructureError("point lies on the beta curve")
                if tau in (0, 1):
                    return None
                if best is None or s < best[0]:
                    best = (s, ai, d, (P[0] + tau * d[0], P[1] + tau * d[1]))
        if best is None:
            ub = _frac(u + eta * w)
            for g in self.order_u:
                if self.gen_u[g] == ub:
                    return None
            below = [g for g in self.order_u if self.gen_u[g] < ub]
            v = below[-1] if below else self.order_u[-1]
            return self._seg_region[("B", v)]
        _, ai, d, hit = best
        side = _cross(d, (u - hit[0], w - hit[1]))
        return self._arc_side[(ai, 1 if side > 0 else -1)]

    def _locate_basepoint(self) -> None:
        z = self.to_frame(self.diagram.basepoint)
        self.z_frame = (_frac(z[0]), _frac(z[1]))
        if self.z_frame[1] == 0:
            raise StructureError("basepoint lies on the alpha curve")
        if self._on_beta(self.z_frame):
            raise StructureError("basepoint lies on the beta curve")
        self.z_region = self.locate(self.z_frame)

    def _on_beta(self, pt: Vec) -> bool:
        for _, poly in self._arc_translates():
            for P, Q in zip(poly[:-1], poly[1:]):
                rel = (pt[0] - P[0], pt[1] - P[1])
                d = (Q[0] - P[0], Q[1] - P[1])
                if _cross(d, rel) == 0:
                    t = (rel[0] * d[0] + rel[1] * d[1]) / (d[0] * d[0] + d[1] * d[1])
                    if 0 <= t <= 1:
                        return True
        return False

    # bigons -------------------------------------------------------------
    def bigons(self, window: int = 2) -> List[Bigon]:
        n = len(self.cross)
        out = []
        for i in range(n):
            x = self.cross_gen[i]
            Px = self.crossing_point(i)
            T = (-Fraction(floor(Px[0])), -Px[1])

            def lifted(g):
                p = self.crossing_point(g)
                return (p[0] + T[0], p[1] + T[1])

            xt = lifted(i)
            cands = []
            for k in range(-window, window + 1):
                for j in range(n):
                    g = k * n + j
                    pt = lifted(g)
                    if pt[1] == 0:
                        cands.append((g, pt))
            for g, yt in cands:
                if g == i:
                    continue
                lo_g, hi_g = sorted((g, i))
                lo_u, hi_u = sorted((xt[0], yt[0]))
                if any(lo_g < g2 < hi_g and lo_u < p2[0] < hi_u for g2, p2 in cands):
                    continue
                if g > i:
                    beta_back = list(reversed(self.polyline_between(i, g)))
                else:
                    beta_back = self.polyline_between(g, i)
                beta_back = [(p[0] + T[0], p[1] + T[1]) for p in beta_back]
                poly = [xt] + beta_back[:-1]          # alpha x->y, then beta y->x
                if signed_area(poly) <= 0:
                    continue
                inc_x = _sub(xt, beta_back[-2])
                out_x = _sub(yt, xt)
                inc_y = out_x
                out_y = _sub(beta_back[1], yt)
                if _cross(inc_x, out_x) <= 0 or _cross(inc_y, out_y) <= 0:
                    continue
                y = self.cross_gen[g % n]
                sign = 1 if yt[0] > xt[0] else -1
                out.append(Bigon(x, y, sign, self._count_z(poly), tuple(poly), 1 if g < i else -1))
        out.sort(key=lambda b: (b.source, b.target, b.sign, b.n_z, b.polygon))
        return out

    def _count_z(self, poly) -> int:
        xs = [p[0] for p in poly]
        ys = [p[1] for p in poly]
        zu, zw = self.z_frame
        cnt = 0
        for i in range(floor(min(xs) - zu), floor(max(xs) - zu) + 2):
            for j in range(floor(min(ys) - zw), floor(max(ys) - zw) + 2):
                if point_in_polygon((zu + i, zw + j), poly):
                    cnt += 1
        return cnt

    # homology classes -----------------------------------------------------
    def epsilon(self, x: str, y: str, first: str = "alpha") -> int:
        """Class of the loop x -> y along one curve and back along the other.

        The value lives in ``Z^2 / <alpha, beta>`` which is ``Z/|s|`` for a
        geodesic pair (``s`` the intersection number) and ``Z`` otherwise;
        it is returned as the second frame coordinate, reduced mod ``|s|``.
        """
        ix = self.cross_gen.index(x)
        iy = self.cross_gen.index(y)
        s = int(self.period[1])
        xt = (self.gen_u[x], Fraction(0))
        if first == "alpha":
            yt = (self.gen_u[y], Fraction(0))
            P = self.crossing_point(iy)
            T = (yt[0] - P[0], yt[1] - P[1])
            reach = self._search_lift(iy, ix, T)
            j = reach[1]
        else:
            P = self.crossing_point(ix)
            T = (xt[0] - P[0], xt[1] - P[1])
            reach = self._search_lift(ix, iy, T)
            j = reach[1]
        j = int(j)
        return j % abs(s) if s else j

    def _search_lift(self, i_from: int, i_to: int, T: Vec) -> Vec:
        n = len(self.cross)
        for steps in range(0, n * 2 + 2):
            for g in (i_from + steps, i_from - steps):
                if g % n == i_to:
                    p = self.crossing_point(g)
                    return (p[0] + T[0], p[1] + T[1])
        raise StructureError("internal error: lift search failed")


def check_torus(d: TorusDiagram) -> None:
    """Raise :class:`StructureError` for malformed or non-transverse data."""
    if d.orientation not in (1, -1):
        raise StructureError("orientation must be +1 or -1")
    ca, cb = d.positive_curves
    for c in (ca, cb):
        p, q = c.direction
        if (p, q) == (0, 0) or gcd(p, q) != 1:
            raise StructureError(f"curve direction {c.direction} is not primitive")
    if ca.fingers:
        raise StructureError("fingers must be carried by the beta curve of the positive presentation")
    det = ca.direction[0] * cb.direction[1] - ca.direction[1] * cb.direction[0]
    if cb.fingers:
        if det != 0:
            raise StructureError("fingers are only supported on a curve parallel to the other curve")
        if len(set(cb.fingers)) != len(cb.fingers):
            raise StructureError("finger positions must be distinct")
    elif det == 0:
        raise StructureError("curves are parallel: not transverse (add fingers to wiggle)")


@lru_cache(maxsize=256)
def geometry(d: TorusDiagram) -> TorusGeometry:
    return TorusGeometry(d)

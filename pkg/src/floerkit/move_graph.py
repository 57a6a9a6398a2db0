"""The move graph: isotopy-diagram vertices joined by typed Heegaard moves.

Vertices carry a representative :class:`PointedDiagram`; two vertices are
the same isotopy diagram exactly when their normalization keys agree.
Edges have one of the kinds ``alpha_equiv``, ``beta_equiv``, ``stab``,
``destab`` and ``diffeo``.  A stabilization records the piece position
(``site``) where the sphere piece is inserted; a diffeomorphism records a
per-piece *action* (``id``, ``sl2:a,b,c,d`` on a torus piece, or the
``handleswap`` relabeling of a genus-two piece), so that equality of
diffeomorphisms and extension across a stabilization are decidable.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .diagrams.genus2 import GenusTwoFixture
from .diagrams.pointed import (
    SEP,
    PointedDiagram,
    intersection_points,
    piece_generators,
    stabilize_diagram,
)
from .diagrams.torus import TorusDiagram, apply_sl2, geometry
from .reports import Report, StructureError

KINDS = ("alpha_equiv", "beta_equiv", "stab", "destab", "diffeo")
ALPHA_SYSTEMS = ("alpha0", "alpha0'")
BETA_SYSTEMS = ("beta0", "beta0'")
_SWAP = {"alpha0": "alpha0'", "alpha0'": "alpha0", "beta0": "beta0'", "beta0'": "beta0"}


# --------------------------------------------------------- diffeo actions

def parse_op(op: str) -> Tuple[str, Tuple[int, ...]]:
    if op == "id":
        return ("id", ())
    if op == "handleswap":
        return ("handleswap", ())
    if op.startswith("sl2:"):
        vals = tuple(int(v) for v in op[4:].split(","))
        if len(vals) != 4:
            raise StructureError(f"bad sl2 action {op!r}")
        a, b, c, d = vals
        if a * d - b * c != 1:
            raise StructureError(f"diffeomorphism {op!r} is not orientation preserving (det must be 1)")
        if vals == (1, 0, 0, 1):
            return ("id", ())
        return ("sl2", vals)
    raise StructureError(f"unknown piece action {op!r}")


def format_op(kind: str, vals: Tuple[int, ...]) -> str:
    if kind == "sl2":
        return "sl2:" + ",".join(str(v) for v in vals)
    return kind


def normalize_op(op: str) -> str:
    return format_op(*parse_op(op))


def compose_ops(first: str, second: str) -> str:
    """The piece action of ``second`` after ``first``."""
    k1, v1 = parse_op(first)
    k2, v2 = parse_op(second)
    if k1 == "id":
        return format_op(k2, v2)
    if k2 == "id":
        return format_op(k1, v1)
    if k1 == k2 == "handleswap":
        return "id"
    if k1 == k2 == "sl2":
        a, b, c, d = v2
        p, q, r, s = v1
        return normalize_op(format_op("sl2", (a * p + b * r, a * q + b * s, c * p + d * r, c * q + d * s)))
    raise StructureError(f"cannot compose piece actions {first!r} and {second!r}")


def compose_actions(first: Sequence[str], second: Sequence[str]) -> Tuple[str, ...]:
    if len(first) != len(second):
        raise StructureError("diffeomorphism actions have different piece counts")
    return tuple(compose_ops(a, b) for a, b in zip(first, second))


def apply_op(piece, op: str):
    kind, vals = parse_op(op)
    if kind == "id":
        return piece
    if kind == "sl2":
        if not isinstance(piece, TorusDiagram):
            raise StructureError("sl2 actions apply to torus pieces only")
        return apply_sl2(piece, vals)
    if not isinstance(piece, GenusTwoFixture):
        raise StructureError("the handleswap relabeling applies to genus-two pieces only")
    if piece.is_theta:
        raise StructureError("the handleswap image of a same-kind genus-two piece has no transcribed table")
    return GenusTwoFixture(_SWAP[piece.first], _SWAP[piece.second], piece.orientation)


def apply_action(d: PointedDiagram, action: Sequence[str]) -> PointedDiagram:
    if len(action) != len(d.pieces):
        raise StructureError(f"action has {len(action)} entries for {len(d.pieces)} pieces")
    return PointedDiagram([apply_op(p, op) for p, op in zip(d.pieces, action)])


def _op_correspondence(piece, op: str) -> Dict[str, str]:
    kind, vals = parse_op(op)
    gens = piece_generators(piece)
    if kind == "id":
        return {g: g for g in gens}
    image = apply_op(piece, op)
    if kind == "sl2":
        a, b, c, d = vals
        src = geometry(piece).gen_coords
        tgt = {v: k for k, v in geometry(image).gen_coords.items()}
        out = {}
        for g, (x, y) in src.items():
            pt = ((a * x + b * y) % 1, (c * x + d * y) % 1)
            if pt not in tgt:
                raise StructureError("internal error: diffeomorphism does not carry intersection points")
            out[g] = tgt[pt]
        return out
    return {gens[0]: piece_generators(image)[0]}


def diffeo_correspondence(d: PointedDiagram, action: Sequence[str]) -> Dict[str, str]:
    """Generator map induced by a diffeomorphism action (names of the sum)."""
    per = [_op_correspondence(p, op) for p, op in zip(d.pieces, action)]
    out = {}
    for inter in intersection_points(d):
        parts = inter.name.split(SEP) if len(d.pieces) > 1 else [inter.name]
        out[inter.name] = SEP.join(m[x] for m, x in zip(per, parts))
    return out


def identity_action(d: PointedDiagram) -> Tuple[str, ...]:
    return ("id",) * len(d.pieces)


# ----------------------------------------------------------------- graph

@dataclass(frozen=True)
class Edge:
    id: str
    source: str
    target: str
    kind: str
    site: Optional[int] = None                 # stab / destab: piece position of the sphere piece
    action: Optional[Tuple[str, ...]] = None   # diffeo: per-piece actions
    label: str = ""
    isotopic_to_identity: bool = False

    def describe(self) -> str:
        extra = ""
        if self.kind in ("stab", "destab"):
            extra = f" @{self.site}"
        elif self.kind == "diffeo":
            extra = f" [{self.label or ','.join(self.action)}]"
        return f"{self.id}: {self.source} -{self.kind}{extra}-> {self.target}"


@dataclass
class MoveGraph:
    vertices: Dict[str, PointedDiagram] = field(default_factory=dict)
    edges: Dict[str, Edge] = field(default_factory=dict)

    # construction ----------------------------------------------------
    def add_vertex(self, name: str, d: PointedDiagram) -> str:
        if name in self.vertices:
            raise StructureError(f"duplicate vertex {name!r}")
        for other, od in self.vertices.items():
            if od.key() == d.key():
                raise StructureError(f"vertices {other!r} and {name!r} are the same isotopy diagram")
        self.vertices[name] = d
        return name

    def add_edge(self, e: Edge) -> Edge:
        if e.id in self.edges:
            raise StructureError(f"duplicate edge id {e.id!r}")
        if e.kind not in KINDS:
            raise StructureError(f"unknown edge kind {e.kind!r}")
        for v in (e.source, e.target):
            if v not in self.vertices:
                raise StructureError(f"edge {e.id} references unknown vertex {v!r}")
        if e.kind in ("alpha_equiv", "beta_equiv"):
            for o in self.edges.values():
                if o.kind == e.kind and (o.source, o.target) == (e.source, e.target):
                    raise StructureError(f"second {e.kind} edge from {e.source} to {e.target}")
        if e.kind == "diffeo":
            if e.action is None:
                raise StructureError(f"diffeo edge {e.id} has no action")
            e = Edge(e.id, e.source, e.target, e.kind, None, tuple(normalize_op(o) for o in e.action),
                     e.label, e.isotopic_to_identity)
        self.edges[e.id] = e
        return e

    def add(self, eid: str, source: str, target: str, kind: str, **kw) -> Edge:
        return self.add_edge(Edge(eid, source, target, kind, **kw))

    # queries -----------------------------------------------------------
    def out_edges(self, v: str) -> List[Edge]:
        return sorted((e for e in self.edges.values() if e.source == v), key=lambda e: e.id)

    def edges_of(self, *kinds: str) -> List[Edge]:
        return sorted((e for e in self.edges.values() if e.kind in kinds), key=lambda e: e.id)

    def edge(self, eid: str) -> Edge:
        return self.edges[eid]

    def inverse_destab(self, e: Edge) -> Optional[Edge]:
        want = "destab" if e.kind == "stab" else "stab"
        for o in self.edges_of(want):
            if o.source == e.target and o.target == e.source and o.site == e.site:
                return o
        return None

    # validation ---------------------------------------------------------
    def validate(self) -> Report:
        rep = Report("move graph")
        for e in sorted(self.edges.values(), key=lambda e: e.id):
            src, tgt = self.vertices[e.source], self.vertices[e.target]
            problem = _check_edge(e, src, tgt)
            if problem:
                rep.add("edge", f"{e.describe()}: {problem}", e.id)
            if e.kind in ("stab", "destab") and self.inverse_destab(e) is None:
                rep.add("inverse", f"{e.describe()} has no inverse {'destab' if e.kind == 'stab' else 'stab'} edge", e.id)
            if e.isotopic_to_identity and (e.kind != "diffeo" or e.source != e.target):
                rep.add("edge", f"{e.describe()}: only diffeomorphism loops can be isotopic to the identity", e.id)
        rep.note(f"vertices: {len(self.vertices)}; edges: {len(self.edges)}")
        return rep


def _changed_piece(src: PointedDiagram, tgt: PointedDiagram) -> Optional[int]:
    if len(src.pieces) != len(tgt.pieces):
        return None
    diff = [i for i, (a, b) in enumerate(zip(src.pieces, tgt.pieces)) if a.key() != b.key()]
    return diff[0] if len(diff) == 1 else None


def equivalence_piece(kind: str, src: PointedDiagram, tgt: PointedDiagram) -> Tuple[Optional[int], str]:
    """Piece index modified by a strong alpha/beta-equivalence, or ``(None, reason)``."""
    i = _changed_piece(src, tgt)
    if i is None:
        return None, "diagrams must differ in exactly one piece"
    a, b = src.pieces[i], tgt.pieces[i]
    if isinstance(a, GenusTwoFixture) and isinstance(b, GenusTwoFixture):
        if a.orientation != b.orientation:
            return None, "orientation changed"
        systems = ALPHA_SYSTEMS if kind == "alpha_equiv" else BETA_SYSTEMS
        a_first, a_second = a.first, a.second
        b_first, b_second = b.first, b.second
        if kind == "alpha_equiv":
            ok = a_second == b_second and a_first in systems and b_first in systems
        else:
            ok = a_first == b_first and a_second in systems and b_second in systems
        return (i, "") if ok else (None, f"piece {i} does not change only its {kind[:-6]} curves")
    if isinstance(a, TorusDiagram) and isinstance(b, TorusDiagram):
        fixed = (a.beta, b.beta) if kind == "alpha_equiv" else (a.alpha, b.alpha)
        if fixed[0] == fixed[1] and a.orientation == b.orientation:
            return i, ""
        return None, f"piece {i} changes curves other than its {kind[:-6]} curve"
    return None, "piece types differ"


def _check_edge(e: Edge, src: PointedDiagram, tgt: PointedDiagram) -> str:
    try:
        if e.kind in ("alpha_equiv", "beta_equiv"):
            i, why = equivalence_piece(e.kind, src, tgt)
            return why
        if e.kind == "stab":
            if stabilize_diagram(src, e.site)[0].key() != tgt.key():
                return f"target is not the stabilization of the source at site {e.site}"
            return ""
        if e.kind == "destab":
            if stabilize_diagram(tgt, e.site)[0].key() != src.key():
                return f"source is not the stabilization of the target at site {e.site}"
            return ""
        if apply_action(src, e.action).key() != tgt.key():
            return "the action does not carry the source to the target"
        return ""
    except StructureError as exc:
        return str(exc)


def edge_correspondence(g: MoveGraph, e: Edge) -> Dict[str, str]:
    """The generator correspondence an edge induces (the natural map on names)."""
    src, tgt = g.vertices[e.source], g.vertices[e.target]
    if e.kind == "stab":
        return stabilize_diagram(src, e.site)[1]
    if e.kind == "destab":
        return {v: k for k, v in stabilize_diagram(tgt, e.site)[1].items()}
    if e.kind == "diffeo":
        return diffeo_correspondence(src, e.action)
    i, why = equivalence_piece(e.kind, src, tgt)
    if i is None:
        raise StructureError(why)
    a, b = piece_generators(src.pieces[i]), piece_generators(tgt.pieces[i])
    if len(a) != 1 or len(b) != 1:
        raise StructureError(f"no natural correspondence for {e.describe()}: only single-generator pieces are supported")
    out = {}
    for inter in intersection_points(src):
        parts = inter.name.split(SEP) if len(src.pieces) > 1 else [inter.name]
        parts[i] = b[0]
        out[inter.name] = SEP.join(parts)
    return out


# -------------------------------------------------------------- rectangles

@dataclass(frozen=True)
class Rectangle:
    """``e: H1 -> H2``, ``f: H1 -> H3``, ``g: H2 -> H4``, ``h: H3 -> H4``."""

    e: str
    f: str
    g: str
    h: str

    def edge_ids(self) -> Tuple[str, str, str, str]:
        return (self.e, self.f, self.g, self.h)


@dataclass
class Classification:
    type: Optional[int]
    evidence: List[str]

    def describe(self) -> str:
        head = f"type {self.type}" if self.type else "not distinguished"
        return head + ("; " + "; ".join(self.evidence) if self.evidence else "")


def _shape_ok(g: MoveGraph, r: Rectangle) -> Optional[str]:
    e, f, gg, h = (g.edges[x] for x in r.edge_ids())
    if e.source != f.source:
        return "e and f do not share their source"
    if gg.source != e.target or h.source != f.target:
        return "g must start at the end of e and h at the end of f"
    if gg.target != h.target:
        return "g and h do not share their target"
    return None


def _site_map(site: int, inserted: int) -> int:
    """Position of an old site after a sphere piece is inserted at ``inserted``."""
    return site + 1 if site > inserted else site


def classify_rectangle(g: MoveGraph, r: Rectangle) -> Classification:
    ev: List[str] = []
    bad = _shape_ok(g, r)
    if bad:
        return Classification(None, [bad])
    e, f, gg, h = (g.edges[x] for x in r.edge_ids())
    kinds = (e.kind, f.kind, gg.kind, h.kind)
    equiv = ("alpha_equiv", "beta_equiv")

    # case 1
    if e.kind == h.kind == "alpha_equiv" and f.kind == gg.kind == "beta_equiv":
        return Classification(1, ["e, h strong alpha-equivalences", "f, g strong beta-equivalences"])
    # case 2
    if e.kind == h.kind and e.kind in equiv and f.kind == gg.kind == "stab":
        ev = [f"e, h both {e.kind}", "f, g stabilizations"]
        if f.site == gg.site:
            ev.append(f"f and g stabilize at the same site {f.site}")
            return Classification(2, ev)
        return Classification(None, ev + ["f and g stabilize at different sites"])
    # case 3
    if e.kind == h.kind and e.kind in equiv and f.kind == gg.kind == "diffeo":
        ev = [f"e, h both {e.kind}", "f, g diffeomorphisms"]
        if f.action == gg.action:
            return Classification(3, ev + [f"f = g (action {','.join(f.action)})"])
        return Classification(None, ev + ["f and g are different diffeomorphisms"])
    # case 4
    if kinds == ("stab",) * 4:
        ev = ["all four arrows stabilizations"]
        s1, s2 = e.site, f.site
        if s1 == s2:
            return Classification(None, ev + [f"e and f use the same disk (site {s1})"])
        want_g, want_h = _site_map(s2, s1), _site_map(s1, s2)
        if gg.site == want_g and h.site == want_h:
            ev.append(f"disjoint disks at sites {s1} and {s2}; g repeats f's disk (site {want_g}), h repeats e's (site {want_h})")
            return Classification(4, ev)
        return Classification(None, ev + ["g and h do not repeat the disks of f and e"])
    # case 5
    if e.kind == h.kind == "stab" and f.kind == gg.kind == "diffeo":
        ev = ["e, h stabilizations", "f, g diffeomorphisms"]
        if e.site != h.site:
            return Classification(None, ev + ["e and h stabilize at different sites"])
        fa, ga = list(f.action), list(gg.action)
        ext = fa[:e.site] + [normalize_op("id")] + fa[e.site:]
        if ga == ext:
            ev.append(f"g extends f by the identity on the new sphere piece at site {e.site}")
            return Classification(5, ev)
        return Classification(None, ev + ["g is not an extension of f"])
    return Classification(None, [f"edge kinds {kinds} match no case"])


def find_rectangles(g: MoveGraph) -> List[Tuple[Rectangle, Classification]]:
    """All distinguished rectangles, each square counted once."""
    out = []
    seen = set()
    edges = sorted(g.edges.values(), key=lambda e: e.id)
    by_source: Dict[str, List[Edge]] = {}
    for e in edges:
        by_source.setdefault(e.source, []).append(e)
    for e in edges:
        for f in by_source.get(e.source, ()):
            if f.id == e.id:
                continue
            for gg in by_source.get(e.target, ()):
                for h in by_source.get(f.target, ()):
                    if h.target != gg.target or len({e.id, f.id, gg.id, h.id}) < 4:
                        continue
                    key = frozenset((e.id, f.id, gg.id, h.id))
                    if key in seen:
                        continue
                    r = Rectangle(e.id, f.id, gg.id, h.id)
                    c = classify_rectangle(g, r)
                    if c.type is not None:
                        seen.add(key)
                        out.append((r, c))
    return out


# ------------------------------------------------------------- handleswaps

@dataclass(frozen=True)
class Triangle:
    """``e: H1 -> H2``, ``f: H2 -> H3``, ``g: H3 -> H1``."""

    e: str
    f: str
    g: str


HANDLESWAP_CYCLE = (("alpha0", "beta0"), ("alpha0'", "beta0"), ("alpha0'", "beta0'"))


def verify_handleswap(gr: MoveGraph, t: Triangle) -> Tuple[bool, List[str]]:
    ev: List[str] = []
    e, f, g = (gr.edges[x] for x in (t.e, t.f, t.g))
    if not (e.target == f.source and f.target == g.source and g.target == e.source):
        return False, ["edges do not form an oriented triangle"]
    if (e.kind, f.kind, g.kind) != ("alpha_equiv", "beta_equiv", "diffeo"):
        return False, [f"edge kinds {(e.kind, f.kind, g.kind)} are not (alpha_equiv, beta_equiv, diffeo)"]
    ev.append("e strong alpha-equivalence, f strong beta-equivalence, g diffeomorphism")
    H = [gr.vertices[v] for v in (e.source, f.source, g.source)]
    n = len(H[0].pieces)
    if any(len(h.pieces) != n for h in H):
        return False, ev + ["the three diagrams have different piece counts"]
    slots = [i for i, p in enumerate(H[0].pieces) if isinstance(p, GenusTwoFixture)]
    for i in slots:
        pairs = tuple((h.pieces[i].positive_pair if h.pieces[i].orientation == 1 else None) for h in H)
        if pairs != HANDLESWAP_CYCLE:
            continue
        rest = [tuple(p.key() for k, p in enumerate(h.pieces) if k != i) for h in H]
        if not (rest[0] == rest[1] == rest[2]):
            return False, ev + ["the diagrams differ away from the genus-two summand"]
        ev.append(f"genus-two summand at piece {i} runs through the standard cycle {HANDLESWAP_CYCLE}")
        want = tuple("handleswap" if k == i else "id" for k in range(n))
        if g.action != want:
            return False, ev + [f"g acts by {g.action}, expected the handleswap relabeling {want}"]
        ev.append("g is the handleswap relabeling on the summand and the identity elsewhere")
        return True, ev
    return False, ev + ["no genus-two summand runs through the standard handleswap cycle"]


def find_handleswaps(gr: MoveGraph) -> List[Tuple[Triangle, List[str]]]:
    out = []
    for e in gr.edges_of("alpha_equiv"):
        for f in gr.out_edges(e.target):
            if f.kind != "beta_equiv":
                continue
            for g in gr.out_edges(f.target):
                if g.kind == "diffeo" and g.target == e.source:
                    t = Triangle(e.id, f.id, g.id)
                    ok, ev = verify_handleswap(gr, t)
                    if ok:
                        out.append((t, ev))
    return out


# ------------------------------------------------------------------- paths

Path = Tuple[str, ...]       # edge ids


def find_oriented_path(gr: MoveGraph, a: str, b: str, max_len: Optional[int] = None) -> Optional[Path]:
    """A shortest path along edge orientations (BFS, edges tried in id order)."""
    for v in (a, b):
        if v not in gr.vertices:
            raise StructureError(f"unknown vertex {v!r}")
    if a == b:
        return ()
    prev: Dict[str, Tuple[str, str]] = {}
    seen = {a}
    q = deque([(a, 0)])
    while q:
        v, dist = q.popleft()
        if max_len is not None and dist >= max_len:
            continue
        for e in gr.out_edges(v):
            if e.target in seen:
                continue
            seen.add(e.target)
            prev[e.target] = (v, e.id)
            if e.target == b:
                path = []
                w = b
                while w != a:
                    w, eid = prev[w]
                    path.append(eid)
                return tuple(reversed(path))
            q.append((e.target, dist + 1))
    return None


def enumerate_paths(gr: MoveGraph, a: str, b: str, max_len: int, kinds: Optional[Iterable[str]] = None) -> List[Path]:
    """All simple oriented paths from ``a`` to ``b`` with 1..max_len edges, in deterministic order.

    No vertex repeats, except that ``a == b`` yields the simple cycles
    through ``a``.
    """
    allowed = set(kinds) if kinds is not None else None
    out: List[Path] = []

    def walk(v: str, visited: set, path: List[str]):
        if len(path) == max_len:
            return
        for e in gr.out_edges(v):
            if allowed is not None and e.kind not in allowed:
                continue
            if e.target == b:
                out.append(tuple(path + [e.id]))
                continue
            if e.target in visited:
                continue
            visited.add(e.target)
            walk(e.target, visited, path + [e.id])
            visited.discard(e.target)

    walk(a, {a}, [])
    out.sort(key=lambda p: (len(p), p))
    return out


def enumerate_words(gr: MoveGraph, kinds: Iterable[str], max_len: int) -> List[Path]:
    """All composable edge sequences (vertices may repeat) of 1..max_len edges of the given kinds."""
    allowed = set(kinds)
    edges = [e for e in sorted(gr.edges.values(), key=lambda e: e.id) if e.kind in allowed]
    by_source: Dict[str, List[Edge]] = {}
    for e in edges:
        by_source.setdefault(e.source, []).append(e)
    out: List[Path] = []
    frontier = [(e.target, (e.id,)) for e in edges]
    out.extend(p for _, p in frontier)
    for _ in range(max_len - 1):
        nxt = []
        for v, p in frontier:
            for e in by_source.get(v, ()):
                nxt.append((e.target, p + (e.id,)))
        out.extend(p for _, p in nxt)
        frontier = nxt
    return out


def path_endpoints(gr: MoveGraph, path: Path) -> Tuple[str, str]:
    return gr.edges[path[0]].source, gr.edges[path[-1]].target


def connected_component(gr: MoveGraph, v: str) -> List[str]:
    """Vertices joined to ``v`` by edges in either direction."""
    adj: Dict[str, set] = {u: set() for u in gr.vertices}
    for e in gr.edges.values():
        adj[e.source].add(e.target)
        adj[e.target].add(e.source)
    seen = {v}
    stack = [v]
    while stack:
        u = stack.pop()
        for w in adj[u]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return sorted(seen)

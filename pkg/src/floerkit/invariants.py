"""Weak and strong Heegaard-invariant checks on a move graph.

A :class:`GraphFunctor` assigns a complex to each vertex and a chain map to
each edge.  :func:`check_weak` asks every edge image to be invertible;
:func:`check_strong` checks the four axioms (functoriality, commutativity
of distinguished rectangles, continuity, handleswap invariance);
:func:`path_independence` compares composites along all simple oriented
paths; :func:`assemble_system` turns a path-independent functor on one
component into a transitive system.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from .algebra.complexes import ChainMap, GradedComplex, SignClass, compose
from .algebra.homotopy import inverse_in_mode, is_identity, maps_agree, normalize_mode
from .diagrams.pointed import diagram_complex
from .move_graph import (
    MoveGraph,
    Path,
    compose_actions,
    edge_correspondence,
    enumerate_paths,
    enumerate_words,
    find_handleswaps,
    find_oriented_path,
    find_rectangles,
    path_endpoints,
)
from .reports import Report, StructureError
from .systems import DirectedIndex, TransSystem

AXIOMS = ("functoriality", "commutativity", "continuity", "handleswap")


@dataclass
class GraphFunctor:
    graph: MoveGraph
    objects: Dict[str, GradedComplex]
    morphisms: Dict[str, ChainMap]
    mode: str = "strict"

    def __post_init__(self):
        self.mode = normalize_mode(self.mode)
        self.morphisms = {k: (v.representative if isinstance(v, SignClass) else v) for k, v in self.morphisms.items()}

    def check_structure(self) -> None:
        for v in self.graph.vertices:
            if v not in self.objects:
                raise StructureError(f"vertex {v!r} has no object")
        for eid, e in self.graph.edges.items():
            if eid not in self.morphisms:
                raise StructureError(f"edge {eid!r} has no morphism")
            f = self.morphisms[eid]
            if f.source != self.objects[e.source] or f.target != self.objects[e.target]:
                raise StructureError(f"morphism of edge {eid!r} does not run between the objects of its endpoints")
            if f.degree != 0:
                raise StructureError(f"morphism of edge {eid!r} has degree {f.degree}")
        for eid in self.morphisms:
            if eid not in self.graph.edges:
                raise StructureError(f"morphism assigned to unknown edge {eid!r}")

    def image(self, path: Sequence[str], start: Optional[str] = None) -> ChainMap:
        """Composite image of an edge path (the identity on ``start`` for an empty path)."""
        if not path:
            if start is None:
                raise StructureError("an empty path needs a start vertex")
            return ChainMap.identity(self.objects[start])
        out = self.morphisms[path[0]]
        for eid in path[1:]:
            out = compose(self.morphisms[eid], out)
        return out

    def with_mode(self, mode: str) -> "GraphFunctor":
        return GraphFunctor(self.graph, self.objects, self.morphisms, mode)


def _arrow(gr: MoveGraph, path: Sequence[str]) -> str:
    return " . ".join(reversed(list(path)))


# ------------------------------------------------------------------- weak

def check_weak(F: GraphFunctor) -> Report:
    F.check_structure()
    rep = Report(f"weak Heegaard invariant ({F.mode})")
    for eid in sorted(F.graph.edges):
        if inverse_in_mode(F.morphisms[eid], F.mode) is None:
            rep.add("isomorphism", f"F({eid}) is not an isomorphism", eid)
    rep.note(f"edges checked: {len(F.graph.edges)}")
    return rep


# ----------------------------------------------------------------- strong

def _functoriality(F: GraphFunctor, rep: Report, word_len: int) -> int:
    gr = F.graph
    checked = 0
    for kind in ("alpha_equiv", "beta_equiv", "diffeo"):
        groups: Dict[tuple, List[Path]] = {}
        for w in enumerate_words(gr, (kind,), word_len):
            a, b = path_endpoints(gr, w)
            key = (a, b)
            if kind == "diffeo":
                act = gr.edges[w[0]].action
                for eid in w[1:]:
                    act = compose_actions(act, gr.edges[eid].action)
                key = (a, b, act)
            groups.setdefault(key, []).append(w)
        for key, words in sorted(groups.items()):
            a, b = key[0], key[1]
            ref = F.image(words[0])
            if a == b and (kind != "diffeo" or all(op == "id" for op in key[2])):
                for w in words:
                    checked += 1
                    if not is_identity(F.image(w), F.mode):
                        rep.add("axiom1", f"{kind} loop {_arrow(gr, w)} at {a} is not the identity", *w)
                continue
            for w in words[1:]:
                checked += 1
                if not maps_agree(F.image(w), ref, F.mode):
                    rep.add("axiom1", f"{kind} words {_arrow(gr, w)} and {_arrow(gr, words[0])} from {a} to {b} differ",
                            *sorted(set(w) | set(words[0])))
    for e in gr.edges_of("stab"):
        inv = gr.inverse_destab(e)
        if inv is None:
            rep.add("axiom1", f"stabilization {e.id} has no destabilization inverse", e.id)
            continue
        checked += 2
        if not is_identity(F.image((e.id, inv.id)), F.mode):
            rep.add("axiom1", f"{inv.id} . {e.id} is not the identity", e.id, inv.id)
        if not is_identity(F.image((inv.id, e.id)), F.mode):
            rep.add("axiom1", f"{e.id} . {inv.id} is not the identity", e.id, inv.id)
    return checked


def check_strong(F: GraphFunctor, word_len: int = 4) -> Report:
    """Per-axiom report; findings are tagged ``axiom1`` .. ``axiom4`` and carry the witness edges."""
    F.check_structure()
    gr = F.graph
    rep = Report(f"strong Heegaard invariant ({F.mode})")
    n1 = _functoriality(F, rep, word_len)
    rects = find_rectangles(gr)
    for r, c in rects:
        lhs = F.image((r.e, r.g))
        rhs = F.image((r.f, r.h))
        if not maps_agree(lhs, rhs, F.mode):
            rep.add("axiom2", f"type-{c.type} rectangle (e={r.e}, f={r.f}, g={r.g}, h={r.h}): F(g)F(e) != F(h)F(f)",
                    *r.edge_ids())
    loops = [e for e in gr.edges_of("diffeo") if e.isotopic_to_identity and e.source == e.target]
    for e in loops:
        if not is_identity(F.morphisms[e.id], F.mode):
            rep.add("axiom3", f"diffeomorphism {e.id} is isotopic to the identity but F({e.id}) is not the identity", e.id)
    swaps = find_handleswaps(gr)
    for t, _ in swaps:
        if not is_identity(F.image((t.e, t.f, t.g)), F.mode):
            rep.add("axiom4", f"handleswap (e={t.e}, f={t.f}, g={t.g}): F(g)F(f)F(e) != Id", t.e, t.f, t.g)
    types = sorted({c.type for _, c in rects})
    rep.note(f"axiom 1: {n1} comparisons (words up to length {word_len})")
    rep.note(f"axiom 2: {len(rects)} distinguished rectangles, types {types}")
    rep.note(f"axiom 3: {len(loops)} diffeomorphism loops isotopic to the identity")
    rep.note(f"axiom 4: {len(swaps)} simple handleswaps")
    return rep


def axiom_summary(rep: Report) -> Dict[str, bool]:
    """Pass/fail per axiom of a :func:`check_strong` report."""
    bad = {f.kind for f in rep.findings}
    return {name: f"axiom{k}" not in bad for k, name in enumerate(AXIOMS, 1)}


# -------------------------------------------------------- path independence

@dataclass
class PathComparison:
    start: str
    end: str
    paths: int
    discrepancies: List[Tuple[Path, Path]] = field(default_factory=list)


def compare_paths(F: GraphFunctor, a: str, b: str, max_len: int = 6) -> PathComparison:
    paths = enumerate_paths(F.graph, a, b, max_len)
    out = PathComparison(a, b, len(paths))
    if a == b:
        for p in paths:
            if not is_identity(F.image(p), F.mode):
                out.discrepancies.append((p, ()))
        return out
    if not paths:
        return out
    ref = F.image(paths[0])
    for p in paths[1:]:
        if not maps_agree(F.image(p), ref, F.mode):
            out.discrepancies.append((p, paths[0]))
    return out


def _record(rep: Report, F: GraphFunctor, cmp: PathComparison) -> None:
    for p, q in cmp.discrepancies:
        if not q:
            rep.add("loop", f"loop {_arrow(F.graph, p)} at {cmp.start} is not the identity", *p)
        else:
            rep.add("paths", f"paths {_arrow(F.graph, p)} and {_arrow(F.graph, q)} from {cmp.start} to {cmp.end} differ",
                    *p, *q)


def path_independence(F: GraphFunctor, a: str, b: str, max_len: int = 6) -> Report:
    F.check_structure()
    rep = Report(f"path independence {a} -> {b} ({F.mode}, length <= {max_len})")
    cmp = compare_paths(F, a, b, max_len)
    _record(rep, F, cmp)
    rep.note(f"simple paths: {cmp.paths}")
    if cmp.discrepancies:
        rep.note("discrepancies mean the functor is not strong or the graph has a loop not generated by its rectangles and handleswaps")
    return rep


def path_independence_all(F: GraphFunctor, max_len: int = 6, vertices: Optional[Iterable[str]] = None) -> Report:
    """Path independence over every ordered pair of the given vertices (default: all)."""
    F.check_structure()
    vs = sorted(vertices) if vertices is not None else sorted(F.graph.vertices)
    rep = Report(f"path independence ({F.mode}, length <= {max_len})")
    pairs = paths = 0
    for a in vs:
        for b in vs:
            cmp = compare_paths(F, a, b, max_len)
            if cmp.paths:
                pairs += 1
                paths += cmp.paths
            _record(rep, F, cmp)
    rep.note(f"vertex pairs with paths: {pairs}; simple paths compared: {paths}")
    if rep.findings:
        rep.note("discrepancies mean the functor is not strong or the graph has a loop not generated by its rectangles and handleswaps")
    return rep


# ------------------------------------------------------------------ system

def assemble_system(F: GraphFunctor, component: Iterable[str], mode: Optional[str] = None) -> TransSystem:
    """Transitive system over ``component`` ordered by name, with ``f[i, j]`` the image of a shortest path."""
    F.check_structure()
    names = sorted(set(component))
    for v in names:
        if v not in F.graph.vertices:
            raise StructureError(f"unknown vertex {v!r}")
    maps = {}
    for i, a in enumerate(names):
        for b in names[i:]:
            p = find_oriented_path(F.graph, a, b)
            if p is None:
                raise StructureError(f"component is not connected: no oriented path from {a} to {b}")
            maps[(a, b)] = F.image(p, start=a)
    return TransSystem(DirectedIndex.total_order(names), {v: F.objects[v] for v in names}, maps, mode or F.mode)


# --------------------------------------------------------- natural functors

def natural_functor(gr: MoveGraph, signs: Optional[Mapping[str, int]] = None, mode: str = "strict",
                    sign_rule: str = "alpha-direction") -> GraphFunctor:
    """Objects are diagram complexes; each edge maps by its generator correspondence times a sign."""
    signs = signs or {}
    objects = {v: diagram_complex(d, sign_rule) for v, d in gr.vertices.items()}
    morphisms = {}
    for eid in sorted(gr.edges):
        e = gr.edges[eid]
        corr = edge_correspondence(gr, e)
        s = signs.get(eid, 1)
        morphisms[eid] = ChainMap.from_correspondence(objects[e.source], objects[e.target],
                                                      {x: (y, s) for x, y in corr.items()})
    return GraphFunctor(gr, objects, morphisms, mode)

"""JSON file formats for complexes, chain maps, diagrams, graphs, functors, systems and jobs.

Any nested object may be replaced by a string, read as a path relative to
the directory of the file that mentions it.  All loaders raise
:class:`SchemaError` on malformed input.
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple

from .algebra.complexes import ChainMap, Generator, GradedComplex
from .algebra.upoly import UPoly
from .diagrams.catalog import catalog
from .diagrams.genus2 import GenusTwoFixture, fixture_to_json, parse_fixture
from .diagrams.pointed import PointedDiagram, as_pointed, diagram_complex
from .diagrams.torus import Curve, TorusDiagram
from .invariants import GraphFunctor, natural_functor
from .move_graph import Edge, MoveGraph
from .reports import StructureError
from .systems import DirectedIndex, TransSystem


class SchemaError(ValueError):
    """Input does not match the expected file format."""


def read_json(path) -> Tuple[Any, Path]:
    p = Path(path)
    try:
        text = p.read_text()
    except OSError as exc:
        raise SchemaError(f"cannot read {p}: {exc.strerror}") from None
    try:
        return json.loads(text), p.parent
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{p}: invalid JSON ({exc.msg} at line {exc.lineno})") from None


def _resolve(obj, base: Path) -> Tuple[Any, Path]:
    if isinstance(obj, str) and (obj.endswith(".json") or "/" in obj):
        return read_json(base / obj)
    return obj, base


def _need(obj: dict, key: str, what: str):
    if not isinstance(obj, dict):
        raise SchemaError(f"{what} must be an object")
    if key not in obj:
        raise SchemaError(f"{what} is missing the field {key!r}")
    return obj[key]


def _int(v, what: str) -> int:
    if isinstance(v, bool) or not isinstance(v, int):
        raise SchemaError(f"{what} must be an integer")
    return v


def _poly(v, what: str) -> UPoly:
    if isinstance(v, int) and not isinstance(v, bool):
        return UPoly.const(v)
    if isinstance(v, list) and all(isinstance(t, list) and len(t) == 2 for t in v):
        try:
            return UPoly([(_int(c, what), _int(e, what)) for c, e in v])
        except ValueError as exc:
            raise SchemaError(f"{what}: {exc}") from None
    raise SchemaError(f"{what} must be an integer or a list of [coefficient, U-power] pairs")


def _poly_json(p: UPoly):
    t = p.to_json()
    return t[0][0] if len(t) == 1 and t[0][1] == 0 else t


def _q(v, what: str) -> Fraction:
    try:
        return Fraction(str(v))
    except (ValueError, ZeroDivisionError):
        raise SchemaError(f"{what} must be a rational number") from None


# --------------------------------------------------------------- complexes

def complex_from_json(obj, base: Path = Path(".")) -> GradedComplex:
    obj, base = _resolve(obj, base)
    if isinstance(obj, dict) and "diagram" in obj and "generators" not in obj:
        return diagram_complex(diagram_from_json(obj["diagram"], base), obj.get("sign_rule", "alpha-direction"))
    gens = []
    for g in _need(obj, "generators", "complex"):
        gens.append(Generator(str(_need(g, "name", "generator")), _int(_need(g, "grading", "generator"), "grading"),
                              str(g.get("component", "s0"))))
    d = {}
    for k, ent in enumerate(obj.get("differential", [])):
        key = (str(_need(ent, "to", "differential entry")), str(_need(ent, "from", "differential entry")))
        d[key] = d.get(key, UPoly()) + _poly(_need(ent, "coeff", "differential entry"), f"differential entry {k}")
    try:
        return GradedComplex(gens, d)
    except StructureError as exc:
        raise SchemaError(str(exc)) from None


def complex_to_json(c: GradedComplex) -> dict:
    return {
        "generators": [{"name": g.name, "grading": g.grading, "component": g.component} for g in c.generators],
        "differential": [{"from": x, "to": y, "coeff": _poly_json(p)} for (y, x), p in sorted(c.d.items(), key=lambda kv: (kv[0][1], kv[0][0]))],
    }


def load_complex(path) -> GradedComplex:
    return complex_from_json(*read_json(path))


# -------------------------------------------------------------------- maps

def map_entries_from_json(obj, source: GradedComplex, target: GradedComplex, what: str = "map") -> ChainMap:
    degree = _int(obj.get("degree", 0), "degree") if isinstance(obj, dict) else 0
    try:
        if isinstance(obj, dict) and "matrix" in obj:
            if degree:
                raise SchemaError("a matrix map has degree 0")
            return ChainMap.from_matrix(source, target, obj["matrix"])
        if isinstance(obj, dict) and "correspondence" in obj:
            ent = {}
            for x, v in obj["correspondence"].items():
                ent[x] = (v, 1) if isinstance(v, str) else (str(v[0]), _int(v[1], "sign"))
            return ChainMap.from_correspondence(source, target, ent)
        ent = {}
        for k, e in enumerate(_need(obj, "entries", what)):
            key = (str(_need(e, "to", "map entry")), str(_need(e, "from", "map entry")))
            ent[key] = ent.get(key, UPoly()) + _poly(_need(e, "coeff", "map entry"), f"{what} entry {k}")
        return ChainMap(source, target, ent, degree)
    except StructureError as exc:
        raise SchemaError(f"{what}: {exc}") from None


def map_from_json(obj, base: Path = Path("."), source: Optional[GradedComplex] = None,
                  target: Optional[GradedComplex] = None) -> ChainMap:
    obj, base = _resolve(obj, base)
    if source is None:
        source = complex_from_json(_need(obj, "source", "chain map"), base)
    if target is None:
        target = complex_from_json(_need(obj, "target", "chain map"), base) if "target" in obj else source
    return map_entries_from_json(obj, source, target)


def map_to_json(f: ChainMap, with_complexes: bool = True) -> dict:
    out: Dict[str, Any] = {}
    if with_complexes:
        out["source"] = complex_to_json(f.source)
        out["target"] = complex_to_json(f.target)
    out["degree"] = f.degree
    out["entries"] = [{"from": x, "to": y, "coeff": _poly_json(p)} for (y, x), p in sorted(f.m.items(), key=lambda kv: (kv[0][1], kv[0][0]))]
    return out


def load_map(path) -> ChainMap:
    return map_from_json(*read_json(path))


# ---------------------------------------------------------------- diagrams

def _torus_from_json(t: dict) -> TorusDiagram:
    try:
        alpha = Curve(tuple(_need(t, "alpha", "torus piece")), _q(t.get("alpha_offset", 0), "alpha_offset"),
                      tuple(_q(f, "finger") for f in t.get("alpha_fingers", ())))
        beta = Curve(tuple(_need(t, "beta", "torus piece")), _q(t.get("beta_offset", "1/2"), "beta_offset"),
                     tuple(_q(f, "finger") for f in t.get("fingers", ())))
        z = t.get("basepoint", ["1/2", "1/2"])
        return TorusDiagram(alpha, beta, (_q(z[0], "basepoint"), _q(z[1], "basepoint")), _int(t.get("orientation", 1), "orientation"),
                            str(t.get("prefix", "x")))
    except (TypeError, IndexError) as exc:
        raise SchemaError(f"malformed torus piece: {exc}") from None


def _piece_from_json(p) -> List[object]:
    if isinstance(p, str):
        cat = catalog()
        if p not in cat:
            raise SchemaError(f"unknown catalog diagram {p!r}")
        return list(cat[p].pieces)
    if not isinstance(p, dict):
        raise SchemaError("a piece must be a catalog name or an object")
    if "torus" in p:
        return [_torus_from_json(p["torus"])]
    if "fixture" in p:
        try:
            return [parse_fixture(p["fixture"])]
        except (StructureError, KeyError, TypeError, ValueError) as exc:
            raise SchemaError(f"malformed fixture piece: {exc}") from None
    if "catalog" in p:
        return _piece_from_json(p["catalog"])
    raise SchemaError("a piece needs one of the fields 'torus', 'fixture' or 'catalog'")


def diagram_from_json(obj, base: Path = Path(".")) -> PointedDiagram:
    if isinstance(obj, str) and obj in catalog():
        return catalog()[obj]
    obj, base = _resolve(obj, base)
    if isinstance(obj, str):
        return PointedDiagram(_piece_from_json(obj))
    pieces: List[object] = []
    for p in _need(obj, "pieces", "diagram"):
        pieces.extend(_piece_from_json(p))
    try:
        d = PointedDiagram(pieces)
    except StructureError as exc:
        raise SchemaError(str(exc)) from None
    return d


def _piece_to_json(p) -> dict:
    if isinstance(p, GenusTwoFixture):
        return fixture_to_json(p)
    return {"torus": {
        "alpha": list(p.alpha.direction), "beta": list(p.beta.direction),
        "alpha_offset": str(p.alpha.offset), "beta_offset": str(p.beta.offset),
        "alpha_fingers": [str(f) for f in p.alpha.fingers], "fingers": [str(f) for f in p.beta.fingers],
        "basepoint": [str(v) for v in p.basepoint], "orientation": p.orientation, "prefix": p.prefix,
    }}


def diagram_to_json(d) -> dict:
    return {"pieces": [_piece_to_json(p) for p in as_pointed(d).pieces]}


def load_diagram(path) -> PointedDiagram:
    return diagram_from_json(*read_json(path))


# ------------------------------------------------------------------ graphs

def graph_from_json(obj, base: Path = Path(".")) -> MoveGraph:
    obj, base = _resolve(obj, base)
    gr = MoveGraph()
    verts = _need(obj, "vertices", "graph")
    if not isinstance(verts, dict):
        raise SchemaError("graph vertices must map names to diagrams")
    try:
        for name in sorted(verts):
            gr.add_vertex(name, diagram_from_json(verts[name], base))
        for k, e in enumerate(_need(obj, "edges", "graph")):
            action = e.get("action")
            gr.add_edge(Edge(
                str(e.get("id", f"e{k}")), str(_need(e, "from", "edge")), str(_need(e, "to", "edge")),
                str(_need(e, "kind", "edge")),
                site=None if e.get("site") is None else _int(e["site"], "site"),
                action=None if action is None else tuple(str(a) for a in action),
                label=str(e.get("label", "")),
                isotopic_to_identity=bool(e.get("isotopic_to_identity", False)),
            ))
    except StructureError as exc:
        raise SchemaError(str(exc)) from None
    return gr


def graph_to_json(gr: MoveGraph) -> dict:
    edges = []
    for eid in sorted(gr.edges):
        e = gr.edges[eid]
        ent: Dict[str, Any] = {"id": e.id, "from": e.source, "to": e.target, "kind": e.kind}
        if e.site is not None:
            ent["site"] = e.site
        if e.action is not None:
            ent["action"] = list(e.action)
        if e.label:
            ent["label"] = e.label
        if e.isotopic_to_identity:
            ent["isotopic_to_identity"] = True
        edges.append(ent)
    return {"vertices": {v: diagram_to_json(d) for v, d in sorted(gr.vertices.items())}, "edges": edges}


def load_graph(path) -> MoveGraph:
    return graph_from_json(*read_json(path))


# ---------------------------------------------------------------- functors

def functor_from_json(obj, base: Path = Path("."), mode: Optional[str] = None) -> GraphFunctor:
    """``graph``, ``mode`` and either explicit ``objects``/``morphisms`` or ``"natural"`` with optional ``signs``."""
    obj, base = _resolve(obj, base)
    gr = graph_from_json(_need(obj, "graph", "functor"), base)
    m = mode or obj.get("mode", "strict")
    try:
        if obj.get("natural", False) or "morphisms" not in obj:
            signs = {str(k): _int(v, "sign") for k, v in obj.get("signs", {}).items()}
            F = natural_functor(gr, signs=signs, mode=m)
            if "morphisms" not in obj:
                return F
            objects = F.objects
        else:
            objects = {v: complex_from_json(c, base) for v, c in _need(obj, "objects", "functor").items()}
        mors = {}
        for eid, raw in obj["morphisms"].items():
            if eid not in gr.edges:
                raise SchemaError(f"morphism for unknown edge {eid!r}")
            e = gr.edges[eid]
            raw, b2 = _resolve(raw, base)
            mors[eid] = map_entries_from_json(raw, objects[e.source], objects[e.target], f"morphism {eid}")
        F = GraphFunctor(gr, objects, mors, m)
        F.check_structure()
    except (StructureError, KeyError) as exc:
        raise SchemaError(f"functor: {exc}") from None
    except ValueError as exc:
        raise SchemaError(f"functor: {exc}") from None
    return F


def functor_to_json(F: GraphFunctor) -> dict:
    return {
        "graph": graph_to_json(F.graph),
        "mode": F.mode,
        "objects": {v: complex_to_json(c) for v, c in sorted(F.objects.items())},
        "morphisms": {eid: map_to_json(f, with_complexes=False) for eid, f in sorted(F.morphisms.items())},
    }


def load_functor(path, mode: Optional[str] = None) -> GraphFunctor:
    obj, base = read_json(path)
    return functor_from_json(obj, base, mode)


# ----------------------------------------------------------------- systems

def system_from_json(obj, base: Path = Path("."), mode: Optional[str] = None) -> TransSystem:
    obj, base = _resolve(obj, base)
    idx = _need(obj, "index", "system")
    els = [str(e) for e in _need(idx, "elements", "index")]
    rel = idx.get("relation", "total")
    try:
        index = DirectedIndex.total_order(els) if rel == "total" else DirectedIndex(els, [tuple(r) for r in rel])
        objects = {k: complex_from_json(v, base) for k, v in _need(obj, "objects", "system").items()}
        maps = {}
        for k, ent in enumerate(_need(obj, "maps", "system")):
            i, j = str(_need(ent, "from", "system map")), str(_need(ent, "to", "system map"))
            if i not in objects or j not in objects:
                raise SchemaError(f"system map {k} runs between unknown indices")
            maps[(i, j)] = map_entries_from_json(ent, objects[i], objects[j], f"system map ({i}, {j})")
        for e in els:
            if (e, e) in index.relation and (e, e) not in maps and e in objects:
                maps[(e, e)] = ChainMap.identity(objects[e])
        s = TransSystem(index, objects, maps, mode or obj.get("mode", "strict"))
        s.check_structure()
    except StructureError as exc:
        raise SchemaError(f"system: {exc}") from None
    except ValueError as exc:
        raise SchemaError(f"system: {exc}") from None
    return s


def system_to_json(s: TransSystem) -> dict:
    return {
        "mode": s.mode,
        "index": {"elements": list(s.index.elements), "relation": [list(p) for p in sorted(s.index.relation)]},
        "objects": {k: complex_to_json(v) for k, v in sorted(s.objects.items())},
        "maps": [dict(map_to_json(f, with_complexes=False), **{"from": i, "to": j}) for (i, j), f in sorted(s.maps.items())],
    }


def load_system(path, mode: Optional[str] = None) -> TransSystem:
    obj, base = read_json(path)
    return system_from_json(obj, base, mode)


# ----------------------------------------------------------- involutive job

def involutive_job_from_json(obj, base: Path = Path(".")):
    """``(diagram, psi, truncation)``; ``psi`` runs from the conjugate complex to the diagram complex."""
    from .diagrams.pointed import conjugate_diagram

    obj, base = _resolve(obj, base)
    d = diagram_from_json(_need(obj, "diagram", "involutive job"), base)
    rule = obj.get("sign_rule", "alpha-direction")
    c = diagram_complex(d, rule)
    cb = diagram_complex(conjugate_diagram(d), rule)
    raw, b2 = _resolve(_need(obj, "psi", "involutive job"), base)
    psi = map_entries_from_json(raw, cb, c, "psi")
    return d, psi, _int(obj.get("truncation", 2), "truncation")


def dump_json(obj, path) -> None:
    Path(path).write_text(json.dumps(obj, indent=2, sort_keys=True) + "\n")

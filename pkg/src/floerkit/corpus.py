"""Fixture move graphs and functors used by the tests, demos and CLI.

The main graph lives over ``L(2,1) # (genus-two piece)``: a torus piece
``T`` (or its shear ``T'``), a genus-two piece cycling through the four
single-point systems, and optional sphere pieces.  It contains a
distinguished rectangle of each of the five types, the standard simple
handleswap and a diffeomorphism loop isotopic to the identity.
"""

from __future__ import annotations

from typing import Dict, List, Optional

from .algebra.complexes import ChainMap
from .diagrams.catalog import lens, s3, wiggle
from .diagrams.genus2 import GenusTwoFixture
from .diagrams.pointed import PointedDiagram, stabilize_diagram
from .diagrams.torus import apply_sl2
from .invariants import GraphFunctor, natural_functor
from .move_graph import MoveGraph
from .randomized import null_homotopic, random_homotopy

SHEAR = (1, 1, 0, 1)
SHEAR_INV = (1, -1, 0, 1)


def _sl2(m) -> str:
    return "sl2:" + ",".join(str(v) for v in m)


def _g(first: str, second: str) -> GenusTwoFixture:
    return GenusTwoFixture(first, second)


def _stab_pair(gr: MoveGraph, name: str, src: str, tgt: str, site: int) -> None:
    gr.add(f"s_{name}", src, tgt, "stab", site=site)
    gr.add(f"d_{name}", tgt, src, "destab", site=site)


def _both(gr: MoveGraph, name: str, a: str, b: str, kind: str) -> None:
    gr.add(f"{name}", a, b, kind)
    gr.add(f"{name}_r", b, a, kind)


def fixture_graph() -> MoveGraph:
    T = lens(2)
    Tp = apply_sl2(T, SHEAR)
    G1, G2, G3, G4 = _g("alpha0", "beta0"), _g("alpha0'", "beta0"), _g("alpha0'", "beta0'"), _g("alpha0", "beta0'")
    gr = MoveGraph()
    V = {
        "V1": [T, G1], "V2": [T, G2], "V3": [T, G3], "V4": [T, G4],
        "W1": [Tp, G1], "W2": [Tp, G2],
    }
    for name, pieces in V.items():
        gr.add_vertex(name, PointedDiagram(pieces))
    gr.add_vertex("V1s", stabilize_diagram(gr.vertices["V1"], 2)[0])
    gr.add_vertex("V2s", stabilize_diagram(gr.vertices["V2"], 2)[0])
    gr.add_vertex("W1s", stabilize_diagram(gr.vertices["W1"], 2)[0])
    gr.add_vertex("V1a", stabilize_diagram(gr.vertices["V1"], 0)[0])
    gr.add_vertex("V1as", stabilize_diagram(gr.vertices["V1a"], 3)[0])

    _both(gr, "a12", "V1", "V2", "alpha_equiv")
    _both(gr, "a43", "V4", "V3", "alpha_equiv")
    _both(gr, "a12s", "V1s", "V2s", "alpha_equiv")
    _both(gr, "a12w", "W1", "W2", "alpha_equiv")
    _both(gr, "b23", "V2", "V3", "beta_equiv")
    _both(gr, "b14", "V1", "V4", "beta_equiv")

    _stab_pair(gr, "V1_V1s", "V1", "V1s", 2)
    _stab_pair(gr, "V2_V2s", "V2", "V2s", 2)
    _stab_pair(gr, "W1_W1s", "W1", "W1s", 2)
    _stab_pair(gr, "V1_V1a", "V1", "V1a", 0)
    _stab_pair(gr, "V1a_V1as", "V1a", "V1as", 3)
    _stab_pair(gr, "V1s_V1as", "V1s", "V1as", 0)

    hs = ("id", "handleswap")
    gr.add("g_hs", "V3", "V1", "diffeo", action=hs, label="handleswap")
    gr.add("g_hs_r", "V1", "V3", "diffeo", action=hs, label="handleswap")
    for src, tgt in (("V1", "W1"), ("V2", "W2")):
        gr.add(f"t_{src}", src, tgt, "diffeo", action=(_sl2(SHEAR), "id"), label="shear")
        gr.add(f"t_{src}_r", tgt, src, "diffeo", action=(_sl2(SHEAR_INV), "id"), label="shear inverse")
    gr.add("t_V1s", "V1s", "W1s", "diffeo", action=(_sl2(SHEAR), "id", "id"), label="shear")
    gr.add("t_V1s_r", "W1s", "V1s", "diffeo", action=(_sl2(SHEAR_INV), "id", "id"), label="shear inverse")
    gr.add("loop_V1", "V1", "V1", "diffeo", action=("id", "id"), label="identity", isotopic_to_identity=True)
    return gr


EXPECTED_RECTANGLES = {
    1: ("a12", "b14", "b23", "a43"),
    2: ("a12", "s_V1_V1s", "s_V2_V2s", "a12s"),
    3: ("a12", "t_V1", "t_V2", "a12w"),
    4: ("s_V1_V1a", "s_V1_V1s", "s_V1a_V1as", "s_V1s_V1as"),
    5: ("s_V1_V1s", "t_V1", "t_V1s", "s_W1_W1s"),
}
HANDLESWAP = ("a12", "b23", "g_hs")


def strong_functor(mode: str = "strict") -> GraphFunctor:
    return natural_functor(fixture_graph(), mode=mode)


def projective_functor(mode: str = "sign") -> GraphFunctor:
    """The handleswap diffeomorphism (both directions) mapped with a minus sign.

    Every axiom holds strictly except the handleswap, whose composite is
    ``-Id``; in sign mode all four axioms hold.
    """
    return natural_functor(fixture_graph(), signs={"g_hs": -1, "g_hs_r": -1}, mode=mode)


def mutated_functor(edge: str = "b23", mode: str = "strict") -> GraphFunctor:
    """A single edge image negated."""
    return natural_functor(fixture_graph(), signs={edge: -1}, mode=mode)


def handleswap_triangle() -> MoveGraph:
    """The bare triangle ``H1 -> H2 -> H3 -> H1`` on the genus-two piece, with the inverse diffeomorphism."""
    gr = MoveGraph()
    gr.add_vertex("H1", PointedDiagram([_g("alpha0", "beta0")]))
    gr.add_vertex("H2", PointedDiagram([_g("alpha0'", "beta0")]))
    gr.add_vertex("H3", PointedDiagram([_g("alpha0'", "beta0'")]))
    gr.add("e", "H1", "H2", "alpha_equiv")
    gr.add("f", "H2", "H3", "beta_equiv")
    gr.add("g", "H3", "H1", "diffeo", action=("handleswap",), label="handleswap")
    gr.add("g_r", "H1", "H3", "diffeo", action=("handleswap",), label="handleswap")
    return gr


def stabilization_chain(base: PointedDiagram, prefix: str, depth: int = 2) -> MoveGraph:
    """``base``, then stabilized ``depth`` times at the end of the piece list."""
    gr = MoveGraph()
    names = [prefix] + [f"{prefix}+S{k}" for k in range(1, depth + 1)]
    gr.add_vertex(names[0], base)
    d = base
    for k in range(depth):
        site = len(d.pieces)
        d = stabilize_diagram(d, site)[0]
        gr.add_vertex(names[k + 1], d)
        _stab_pair(gr, f"{k}", names[k], names[k + 1], site)
    return gr


def s3_component() -> MoveGraph:
    """The three-sphere: genus one, once and twice stabilized."""
    return stabilization_chain(PointedDiagram([s3()]), "S3")


def wiggle_component() -> MoveGraph:
    """``S^1 x S^2`` from the two-finger wiggle, once and twice stabilized."""
    return stabilization_chain(PointedDiagram([wiggle(2)]), "W")


def perturbed_functor(F: GraphFunctor, rng, edges: Optional[List[str]] = None, mode: str = "sign-homotopy") -> GraphFunctor:
    """Add a random null-homotopic map to the chosen (default: every) edge image."""
    mor = dict(F.morphisms)
    for eid in sorted(edges if edges is not None else F.graph.edges):
        f = mor[eid]
        linked = {(f.source.component(x), f.target.component(y)) for y, x in f.m}
        h = random_homotopy(rng, f.source, f.target, allowed=linked)
        mor[eid] = f + null_homotopic(h)
    return GraphFunctor(F.graph, F.objects, mor, mode)


# ------------------------------------------------------------ fixture files

def fixture_files() -> Dict[str, dict]:
    """File name -> JSON content for the checked-in ``fixtures/`` directory."""
    from .algebra.complexes import Generator, GradedComplex
    from .diagrams.genus2 import fixture
    from .io import complex_to_json, diagram_to_json, graph_to_json, map_to_json
    from .involutive import iota_fixtures

    out: Dict[str, dict] = {}
    out["genus2_handleswap_complex.json"] = complex_to_json(fixture("handleswap_alpha").complex())
    bad = GradedComplex([Generator("x", 2), Generator("y", 1), Generator("w", 0)], {("y", "x"): 1, ("w", "y"): 1})
    out["d2_violation.json"] = complex_to_json(bad)
    out["fixture_graph.json"] = graph_to_json(fixture_graph())
    out["handleswap_triangle.json"] = graph_to_json(handleswap_triangle())
    out["s3_component.json"] = graph_to_json(s3_component())
    out["strong_functor.json"] = {"graph": "fixture_graph.json", "mode": "strict", "natural": True}
    out["projective_functor.json"] = {"graph": "fixture_graph.json", "mode": "strict", "natural": True,
                                      "signs": {"g_hs": -1, "g_hs_r": -1}}
    out["mutated_functor.json"] = {"graph": "fixture_graph.json", "mode": "strict", "natural": True, "signs": {"b23": -1}}
    out["s3_functor.json"] = {"graph": "s3_component.json", "mode": "sign-homotopy", "natural": True}
    for name, data in sorted(iota_fixtures().items()):
        out[f"involutive_{name}.json"] = {
            "diagram": diagram_to_json(data.diagram),
            "psi": map_to_json(data.psi, with_complexes=False),
            "truncation": 2,
        }
    W = diagram_complex_of("wiggle2")
    ident = ChainMap.identity(W)
    out["cone_identity_wiggle2.json"] = map_to_json(ident)
    return out


def diagram_complex_of(name: str):
    from .diagrams.catalog import catalog
    from .diagrams.pointed import diagram_complex

    return diagram_complex(catalog()[name])


def write_fixture_files(directory) -> List[str]:
    import json
    from pathlib import Path

    d = Path(directory)
    d.mkdir(parents=True, exist_ok=True)
    written = []
    for name, content in sorted(fixture_files().items()):
        (d / name).write_text(json.dumps(content, indent=2, sort_keys=True) + "\n")
        written.append(name)
    return written

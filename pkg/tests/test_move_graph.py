"""Move graphs: edge semantics, distinguished rectangles, handleswaps and paths."""

from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from floerkit.corpus import EXPECTED_RECTANGLES, HANDLESWAP, fixture_graph, handleswap_triangle, s3_component
from floerkit.diagrams.catalog import lens, s3
from floerkit.diagrams.genus2 import GenusTwoFixture, fixture
from floerkit.diagrams.pointed import PointedDiagram
from floerkit.diagrams.torus import apply_sl2
from floerkit.move_graph import (
    MoveGraph,
    Rectangle,
    Triangle,
    apply_op,
    classify_rectangle,
    compose_actions,
    compose_ops,
    connected_component,
    diffeo_correspondence,
    edge_correspondence,
    enumerate_paths,
    enumerate_words,
    find_handleswaps,
    find_oriented_path,
    find_rectangles,
    normalize_op,
    path_endpoints,
    verify_handleswap,
)
from floerkit.reports import StructureError

SHEAR = "sl2:1,1,0,1"


@pytest.fixture(scope="module")
def graph():
    return fixture_graph()


def test_fixture_graph_validates(graph):
    rep = graph.validate()
    assert rep.ok, rep.to_text()
    assert (len(graph.vertices), len(graph.edges)) == (11, 33)


# ----------------------------------------------------------------- actions

def test_action_algebra():
    assert normalize_op("sl2:1,0,0,1") == "id"
    assert compose_ops(SHEAR, "sl2:1,-1,0,1") == "id"
    assert compose_ops("handleswap", "handleswap") == "id"
    assert compose_ops(SHEAR, SHEAR) == "sl2:1,2,0,1"
    assert compose_actions((SHEAR, "id"), ("id", "handleswap")) == (SHEAR, "handleswap")
    with pytest.raises(StructureError):
        compose_ops(SHEAR, "handleswap")
    with pytest.raises(StructureError):
        normalize_op("sl2:0,1,1,0")            # orientation reversing
    with pytest.raises(StructureError):
        normalize_op("flip")


def test_handleswap_relabels_systems():
    g = apply_op(GenusTwoFixture("alpha0'", "beta0'"), "handleswap")
    assert (g.first, g.second) == ("alpha0", "beta0")
    with pytest.raises(StructureError, match="no transcribed table"):
        apply_op(fixture("handleswap_alpha"), "handleswap")
    with pytest.raises(StructureError):
        apply_op(s3(), "handleswap")
    with pytest.raises(StructureError):
        apply_op(fixture("handleswap_alpha"), SHEAR)


def test_diffeo_correspondence_is_bijective():
    d = PointedDiagram([lens(3)])
    corr = diffeo_correspondence(d, (SHEAR,))
    assert sorted(corr) == sorted(set(corr.values())) == ["x0", "x1", "x2"]


def test_edge_correspondences(graph):
    for eid in sorted(graph.edges):
        e = graph.edges[eid]
        corr = edge_correspondence(graph, e)
        assert len(set(corr.values())) == len(corr)


# ------------------------------------------------------------- validation

def test_edge_semantics_are_checked():
    gr = MoveGraph()
    gr.add_vertex("A", PointedDiagram([lens(2), GenusTwoFixture("alpha0", "beta0")]))
    gr.add_vertex("B", PointedDiagram([lens(2), GenusTwoFixture("alpha0", "beta0'")]))
    gr.add_vertex("C", PointedDiagram([apply_sl2(lens(2), (1, 1, 0, 1)), GenusTwoFixture("alpha0", "beta0")]))
    gr.add("wrong_kind", "A", "B", "alpha_equiv")        # changes beta, not alpha
    gr.add("ok_beta", "A", "B", "beta_equiv")
    gr.add("bad_action", "A", "C", "diffeo", action=("id", "id"))
    gr.add("not_loop", "A", "B", "diffeo", action=("id", "id"), isotopic_to_identity=True)
    gr.add("lonely_stab", "A", "B", "stab", site=0)
    rep = gr.validate()
    flagged = {w for f in rep.findings for w in f.witness}
    assert {"wrong_kind", "bad_action", "not_loop", "lonely_stab"} <= flagged
    assert "ok_beta" not in flagged


def test_construction_errors():
    gr = MoveGraph()
    gr.add_vertex("A", PointedDiagram([lens(2)]))
    with pytest.raises(StructureError):
        gr.add_vertex("A", PointedDiagram([lens(3)]))
    with pytest.raises(StructureError):
        gr.add_vertex("B", PointedDiagram([lens(2)]))     # same isotopy diagram
    gr.add_vertex("B", PointedDiagram([lens(3)]))
    gr.add("e", "A", "B", "alpha_equiv")
    with pytest.raises(StructureError):
        gr.add("e2", "A", "B", "alpha_equiv")
    with pytest.raises(StructureError):
        gr.add("e", "B", "A", "beta_equiv")
    with pytest.raises(StructureError):
        gr.add("x", "A", "Z", "beta_equiv")
    with pytest.raises(StructureError):
        gr.add("y", "A", "B", "teleport")
    with pytest.raises(StructureError):
        gr.add("z", "A", "B", "diffeo")


# -------------------------------------------------------------- rectangles

@pytest.mark.parametrize("t", sorted(EXPECTED_RECTANGLES))
def test_expected_rectangles(graph, t):
    c = classify_rectangle(graph, Rectangle(*EXPECTED_RECTANGLES[t]))
    assert c.type == t, c.describe()
    assert c.evidence


def test_all_types_found(graph):
    rects = find_rectangles(graph)
    assert sorted(c.type for _, c in rects) == [1, 1, 1, 1, 2, 2, 3, 3, 3, 3, 4, 5, 5]
    keys = [frozenset(r.edge_ids()) for r, _ in rects]
    assert len(keys) == len(set(keys))
    for t, ids in EXPECTED_RECTANGLES.items():
        assert frozenset(ids) in keys


def test_rectangle_shape_errors(graph):
    c = classify_rectangle(graph, Rectangle("t_V1", "a12w", "a12", "t_V2"))
    assert c.type is None and "source" in c.evidence[0]


def test_four_diffeomorphisms_are_not_distinguished():
    gr = MoveGraph()
    T = lens(2)
    for k in range(4):
        gr.add_vertex(f"D{k}", PointedDiagram([apply_sl2(T, (1, k, 0, 1))]))
    gr.add("e", "D0", "D1", "diffeo", action=(SHEAR,))
    gr.add("f", "D0", "D2", "diffeo", action=("sl2:1,2,0,1",))
    gr.add("g", "D1", "D3", "diffeo", action=("sl2:1,2,0,1",))
    gr.add("h", "D2", "D3", "diffeo", action=(SHEAR,))
    assert gr.validate().ok
    c = classify_rectangle(gr, Rectangle("e", "f", "g", "h"))
    assert c.type is None and "match no case" in c.evidence[0]
    assert find_rectangles(gr) == []


def test_type_three_needs_equal_diffeomorphisms(graph):
    gr = fixture_graph()
    gr.add("t_V2_bis", "V2", "W2", "diffeo", action=("sl2:1,1,0,1", "id"))
    c = classify_rectangle(gr, Rectangle("a12", "t_V1", "t_V2_bis", "a12w"))
    assert c.type == 3
    gr2 = MoveGraph()
    A = PointedDiagram([lens(1)])
    gr2.add_vertex("A", A)
    gr2.add_vertex("B", PointedDiagram([apply_sl2(lens(1), (1, 0, 1, 1))]))
    gr2.add_vertex("A2", PointedDiagram([lens(3)]))
    gr2.add_vertex("B2", PointedDiagram([apply_sl2(lens(3), (1, 0, 1, 1))]))
    gr2.add("e", "A", "A2", "beta_equiv")
    gr2.add("f", "A", "B", "diffeo", action=("sl2:1,0,1,1",))
    gr2.add("g", "A2", "B2", "diffeo", action=("sl2:1,0,2,1",))
    gr2.add("h", "B", "B2", "beta_equiv")
    c = classify_rectangle(gr2, Rectangle("e", "f", "g", "h"))
    assert c.type is None and "different diffeomorphisms" in c.evidence[-1]


def test_type_four_site_bookkeeping(graph):
    gr = fixture_graph()
    gr.add("s_wrong", "V1s", "V1as", "stab", site=1)
    c = classify_rectangle(gr, Rectangle("s_V1_V1a", "s_V1_V1s", "s_V1a_V1as", "s_wrong"))
    assert c.type is None


# ------------------------------------------------------------- handleswaps

def test_fixture_handleswap(graph):
    ok, ev = verify_handleswap(graph, Triangle(*HANDLESWAP))
    assert ok and len(ev) == 3
    assert [t for t, _ in find_handleswaps(graph)] == [Triangle(*HANDLESWAP)]


def test_bare_handleswap_triangle():
    gr = handleswap_triangle()
    assert gr.validate().ok
    assert [(t.e, t.f, t.g) for t, _ in find_handleswaps(gr)] == [("e", "f", "g")]


def test_handleswap_negatives():
    gr = handleswap_triangle()
    ok, ev = verify_handleswap(gr, Triangle("f", "e", "g"))
    assert not ok and "triangle" in ev[0]
    # beta first, then alpha: a valid oriented triangle with the wrong kinds
    gr2 = MoveGraph()
    gr2.add_vertex("H1", PointedDiagram([GenusTwoFixture("alpha0", "beta0")]))
    gr2.add_vertex("H2", PointedDiagram([GenusTwoFixture("alpha0", "beta0'")]))
    gr2.add_vertex("H3", PointedDiagram([GenusTwoFixture("alpha0'", "beta0'")]))
    gr2.add("e", "H1", "H2", "beta_equiv")
    gr2.add("f", "H2", "H3", "alpha_equiv")
    gr2.add("g", "H3", "H1", "diffeo", action=("handleswap",))
    assert gr2.validate().ok
    ok, ev = verify_handleswap(gr2, Triangle("e", "f", "g"))
    assert not ok and "kinds" in ev[0]
    assert find_handleswaps(gr2) == []


def test_handleswap_needs_relabeling():
    gr = fixture_graph()
    gr.add("g_plain", "V3", "V1", "diffeo", action=("id", "handleswap"))
    assert verify_handleswap(gr, Triangle("a12", "b23", "g_plain"))[0]
    gr2 = MoveGraph()
    extra = [s3(), lens(2)]
    for name, (a, b) in zip(("H1", "H2", "H3"), (("alpha0", "beta0"), ("alpha0'", "beta0"), ("alpha0'", "beta0'"))):
        pieces = [GenusTwoFixture(a, b), extra[0] if name != "H2" else extra[1]]
        gr2.add_vertex(name, PointedDiagram(pieces))
    gr2.add("e", "H1", "H2", "alpha_equiv")
    gr2.add("f", "H2", "H3", "beta_equiv")
    gr2.add("g", "H3", "H1", "diffeo", action=("handleswap", "id"))
    ok, ev = verify_handleswap(gr2, Triangle("e", "f", "g"))
    assert not ok and "differ away" in ev[-1]


# ------------------------------------------------------------------- paths

def test_triangle_paths():
    gr = handleswap_triangle()
    assert enumerate_paths(gr, "H1", "H3", 2) == [("g_r",), ("e", "f")]
    assert enumerate_paths(gr, "H1", "H1", 3) == [("g_r", "g"), ("e", "f", "g")]
    assert find_oriented_path(gr, "H1", "H3") == ("g_r",)
    assert find_oriented_path(gr, "H2", "H1") == ("f", "g")
    assert find_oriented_path(gr, "H1", "H1") == ()
    assert find_oriented_path(gr, "H2", "H1", max_len=1) is None


def test_words_and_components(graph):
    words = enumerate_words(graph, ("alpha_equiv",), 2)
    assert all(path_endpoints(graph, w)[0] == graph.edges[w[0]].source for w in words)
    assert ("a12", "a12_r") in words
    assert connected_component(graph, "V1") == sorted(graph.vertices)
    assert connected_component(s3_component(), "S3") == ["S3", "S3+S1", "S3+S2"]


def _random_graph(n, arcs):
    gr = MoveGraph()
    for k in range(n):
        gr.add_vertex(f"v{k}", PointedDiagram([lens(k + 1)]))
    for i, (a, b) in enumerate(arcs):
        gr.add(f"e{i}", f"v{a % n}", f"v{b % n}", "diffeo", action=("id",))
    return gr


def _brute_paths(gr, a, b, max_len):
    out = []
    ids = sorted(gr.edges)
    for L in range(1, max_len + 1):
        for seq in product(ids, repeat=L):
            es = [gr.edges[x] for x in seq]
            if es[0].source != a or es[-1].target != b:
                continue
            if any(es[i].target != es[i + 1].source for i in range(L - 1)):
                continue
            verts = [a] + [e.target for e in es]
            inner = verts[1:-1]
            if len(set(verts[:-1])) != L or (a != b and b in verts[:-1]) or (a == b and a in inner):
                continue
            out.append(seq)
    return sorted(out, key=lambda p: (len(p), p))


@settings(max_examples=60)
@given(st.integers(min_value=2, max_value=4),
       st.lists(st.tuples(st.integers(0, 3), st.integers(0, 3)), min_size=1, max_size=7),
       st.integers(1, 4))
def test_paths_match_brute_force(n, arcs, max_len):
    gr = _random_graph(n, arcs)
    for a in gr.vertices:
        for b in gr.vertices:
            got = enumerate_paths(gr, a, b, max_len)
            assert got == _brute_paths(gr, a, b, max_len)
            short = find_oriented_path(gr, a, b)
            if a != b:
                if got:
                    assert short is not None and len(short) == len(got[0])
                    assert short in got
                elif max_len >= n:
                    assert short is None

"""Weak and strong invariant checks, path independence and system assembly."""

import pytest
from hypothesis import given, settings, strategies as st

from floerkit.corpus import (
    HANDLESWAP,
    fixture_graph,
    mutated_functor,
    perturbed_functor,
    projective_functor,
    s3_component,
    strong_functor,
    wiggle_component,
)
from floerkit.invariants import (
    AXIOMS,
    GraphFunctor,
    assemble_system,
    axiom_summary,
    check_strong,
    check_weak,
    compare_paths,
    natural_functor,
    path_independence,
    path_independence_all,
)
from floerkit.diagrams.catalog import lens
from floerkit.diagrams.pointed import PointedDiagram
from floerkit.diagrams.torus import apply_sl2
from floerkit.move_graph import MoveGraph, connected_component
from floerkit.reports import StructureError
from floerkit.systems import validate_system

MODES = ("strict", "sign", "sign-homotopy")


@pytest.fixture(scope="module")
def strong():
    return strong_functor()


@pytest.fixture(scope="module")
def projective():
    return projective_functor("strict")


def _kinds(rep):
    return {f.kind for f in rep.findings}


def test_strong_functor_passes_everything(strong):
    assert check_weak(strong).ok
    rep = check_strong(strong)
    assert rep.ok, rep.to_text()
    assert axiom_summary(rep) == {a: True for a in AXIOMS}
    pi = path_independence_all(strong, max_len=6)
    assert pi.ok
    assert any("simple paths compared: 1401" in n for n in pi.notes)


def test_projective_functor_fails_only_handleswap_strictly(projective):
    rep = check_strong(projective)
    assert axiom_summary(rep) == {"functoriality": True, "commutativity": True, "continuity": True, "handleswap": False}
    (f,) = rep.findings
    assert f.kind == "axiom4" and tuple(f.witness) == HANDLESWAP


def test_projective_functor_passes_up_to_sign(projective):
    F = projective.with_mode("sign")
    assert check_strong(F).ok
    assert path_independence_all(F, max_len=4).ok
    assert not path_independence_all(projective, max_len=4).ok


def test_mutated_edge_breaks_its_rectangle():
    F = mutated_functor("b23")
    assert check_weak(F).ok
    rep = check_strong(F)
    bad = [f for f in rep.findings if f.kind == "axiom2"]
    assert bad and all("b23" in f.witness for f in bad)
    assert any("type-1" in f.message for f in bad)
    assert not axiom_summary(rep)["commutativity"]
    pi = path_independence(F, "V1", "V3", max_len=4)
    assert "paths" in _kinds(pi)


def test_doubling_an_edge_fails_weak(strong):
    mor = dict(strong.morphisms)
    mor["a12"] = mor["a12"].scale(2)
    F = GraphFunctor(strong.graph, strong.objects, mor, "sign-homotopy")
    rep = check_weak(F)
    assert [tuple(f.witness) for f in rep.findings] == [("a12",)]


def test_negated_isotopic_loop_fails_continuity():
    F = natural_functor(fixture_graph(), signs={"loop_V1": -1})
    rep = check_strong(F)
    assert "axiom3" in _kinds(rep)
    assert not axiom_summary(rep)["continuity"]
    assert check_strong(F.with_mode("sign")).ok


def test_destabilization_inverse_checked():
    F = natural_functor(s3_component(), signs={"d_0": 2})
    rep = check_strong(F, word_len=2)
    assert "axiom1" in _kinds(rep)
    assert any(set(f.witness) == {"s_0", "d_0"} for f in rep.findings)


def test_structure_errors(strong):
    objs = dict(strong.objects)
    del objs["V1"]
    with pytest.raises(StructureError):
        check_weak(GraphFunctor(strong.graph, objs, strong.morphisms))
    mor = dict(strong.morphisms)
    del mor["a12"]
    with pytest.raises(StructureError):
        check_weak(GraphFunctor(strong.graph, strong.objects, mor))
    mor = dict(strong.morphisms)
    mor["a12"] = mor["a43"]
    with pytest.raises(StructureError):
        check_weak(GraphFunctor(strong.graph, strong.objects, mor))
    with pytest.raises(StructureError):
        strong.image(())


def test_compare_paths_loops(strong):
    cmp = compare_paths(strong, "V1", "V1", max_len=3)
    assert cmp.paths > 0 and not cmp.discrepancies


# --------------------------------------------------------- mode monotone

@settings(max_examples=10)
@given(st.sampled_from(["a12", "b23", "g_hs", "t_V1", "s_V1_V1s", "loop_V1"]), st.sampled_from([-1, 2]))
def test_mode_monotone(edge, s):
    F = natural_functor(fixture_graph(), signs={edge: s})
    verdicts = [check_weak(F.with_mode(m)).ok and check_strong(F.with_mode(m), word_len=2).ok for m in MODES]
    assert verdicts == sorted(verdicts)      # a pass in a finer mode persists in coarser ones


# ---------------------------------------------------------------- systems

def test_s3_system():
    F = natural_functor(s3_component(), mode="sign-homotopy")
    comp = connected_component(F.graph, "S3")
    s = assemble_system(F, comp)
    assert validate_system(s).ok
    assert sorted(s.objects) == ["S3", "S3+S1", "S3+S2"]
    with pytest.raises(StructureError):
        assemble_system(F, ["S3", "nowhere"])


def test_perturbed_wiggle_functor(rng):
    base = natural_functor(wiggle_component())
    F = perturbed_functor(base, rng)
    changed = [e for e in sorted(F.morphisms) if F.morphisms[e] != base.morphisms[e]]
    assert check_weak(F).ok
    assert check_strong(F).ok
    assert path_independence_all(F, max_len=4).ok
    s = assemble_system(F, connected_component(F.graph, "W"))
    assert validate_system(s).ok
    assert changed
    assert not check_strong(F.with_mode("strict")).ok


def test_unreachable_vertex_is_rejected():
    gr = MoveGraph()
    gr.add_vertex("A", PointedDiagram([lens(2)]))
    gr.add_vertex("B", PointedDiagram([apply_sl2(lens(2), (1, 1, 0, 1))]))
    gr.add("back", "B", "A", "diffeo", action=("sl2:1,-1,0,1",))
    F = natural_functor(gr)
    assert check_strong(F).ok
    with pytest.raises(StructureError, match="no oriented path"):
        assemble_system(F, ["A", "B"])

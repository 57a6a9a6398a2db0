"""Homology over Z and Z[U], checked against sympy on the hat flavor."""

import random

import pytest
from hypothesis import given, settings, strategies as st

from floerkit.algebra import (
    ChainMap,
    FlavorError,
    Generator,
    GradedComplex,
    U,
    compose,
    homology_hat,
    homology_minus,
    reduce_complex,
    specialize_hat,
    truncated_homology,
    validate_complex,
)
from floerkit.algebra.homotopy import null_homotopic_part
from floerkit.randomized import random_complex
from oracles import oracle_hat


@given(st.integers(0, 10**6))
@settings(max_examples=40)
def test_hat_homology_matches_sympy(s):
    c = specialize_hat(random_complex(random.Random(s)))
    c = GradedComplex([Generator(g.name, g.grading, "s0") for g in c.generators], c.d)
    assert homology_hat(c).by_grading() == oracle_hat(c)


def test_known_hat_examples():
    two = GradedComplex([Generator("x", 1), Generator("y", 0)], {("y", "x"): 2})
    h = homology_hat(two)
    assert h.free_rank() == 0 and h.torsion() == [2]
    assert h.summary() == "free rank 0, torsion Z/2"
    unit = GradedComplex([Generator("x", 1), Generator("y", 0)], {("y", "x"): -1})
    assert homology_hat(unit).is_zero()


def test_hat_requires_u_free_complex():
    c = GradedComplex([Generator("x", 1), Generator("y", 2)], {("y", "x"): U})
    with pytest.raises(FlavorError):
        homology_hat(c)
    assert homology_hat(specialize_hat(c)).free_rank() == 2


def test_truncated_homology_frozen():
    # d x = U^2 y with gr(x) = 1, gr(y) = 4; homology of C / U^3 computed by hand
    c = GradedComplex([Generator("x", 1), Generator("y", 4)], {("y", "x"): U ** 2})
    t3 = truncated_homology(c, 3)
    assert t3.by_grading() == {-3: (1, ()), -1: (1, ()), 2: (1, ()), 4: (1, ())}
    assert truncated_homology(c, 1).by_grading() == homology_hat(specialize_hat(c)).by_grading()
    with pytest.raises(ValueError):
        truncated_homology(c, 0)


def test_minus_towers():
    c = GradedComplex([Generator("x", 1), Generator("y", 4)], {("y", "x"): U ** 2})
    h = homology_minus(c)
    assert [(t.top_grading, t.length) for t in h.towers] == [(4, 2)]
    free = GradedComplex([Generator("x", 0)])
    assert [t.kind for t in homology_minus(free).towers] == ["free"]


def test_minus_leaves_non_unit_entries_as_residual():
    c = GradedComplex([Generator("x", 1), Generator("y", 0)], {("y", "x"): 2})
    h = homology_minus(c)
    assert len(h.residual) == 2


@given(st.integers(0, 10**6))
@settings(max_examples=40)
def test_reduction_is_a_deformation_retraction(s):
    c = random_complex(random.Random(s))
    red = reduce_complex(c)
    assert validate_complex(red.complex).ok
    assert compose(red.projection, red.inclusion) == ChainMap.identity(red.complex)
    defect = ChainMap.identity(c) - compose(red.inclusion, red.projection)
    assert null_homotopic_part(red.homotopy, 0) == defect
    assert not any(p.is_unit() for p in red.complex.d.values())
    assert homology_hat(specialize_hat(red.complex)).by_grading() == homology_hat(specialize_hat(c)).by_grading()

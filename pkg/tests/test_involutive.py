"""The involution, its orders and the cone pair invariants."""

import random

import pytest
from hypothesis import given, settings, strategies as st

from floerkit.algebra.complexes import ChainMap, compose, mapping_cone, power, specialize_hat, validate_complex
from floerkit.algebra.homology import homology_hat
from floerkit.diagrams.catalog import lens, wiggle
from floerkit.diagrams.pointed import PointedDiagram, diagram_complex
from floerkit.involutive import (
    ConePair,
    build_cfi_pair,
    build_iota,
    compare_cone_pairs,
    cone_invariant,
    iota_fixtures,
    iota_order,
    psi_from_matrix,
)
from floerkit.randomized import null_homotopic, random_basis_change, random_homotopy
from floerkit.reports import StructureError

# frozen orders: (strict, up to sign, up to homotopy, up to sign and homotopy)
ORDERS = {
    "s3+": (1, 1, 1, 1),
    "s3-": (2, 1, 2, 1),
    "wiggle-diag": (2, 2, 2, 2),
    "wiggle2-swap": (2, 2, 1, 1),
    "lens2-swap": (2, 2, 2, 2),
    "lens2-rotation": (4, 2, 4, 2),
}

# frozen hat profiles of (Cone(1 + iota), Cone(1 - iota)): (grading, rank, torsion) per summand
HAT = {
    "s3+": (((0, 0, (2,)),), ((0, 1, ()), (1, 1, ()))),
    "s3-": (((0, 1, ()), (1, 1, ())), ((0, 0, (2,)),)),
    "wiggle-diag": (((0, 0, (2,)), (1, 1, ()), (2, 1, ())), ((0, 1, ()), (1, 1, (2,)))),
    "wiggle2-swap": (((0, 0, (2,)), (1, 0, (2,))), ((0, 1, ()), (1, 2, ()), (2, 1, ()))),
    "lens2-swap": (((0, 1, ()), (1, 1, ())), ((0, 1, ()), (1, 1, ()))),
    "lens2-rotation": (((0, 0, (2,)),), ((0, 0, (2,)),)),
}


@pytest.fixture(scope="module")
def fixtures():
    return iota_fixtures()


@pytest.mark.parametrize("name", sorted(ORDERS))
def test_orders(fixtures, name):
    order, rep = iota_order(fixtures[name].iota)
    assert (order.strict, order.projective, order.homotopy, order.projective_homotopy) == ORDERS[name]
    assert rep.ok


@pytest.mark.parametrize("name", sorted(ORDERS))
def test_homotopy_witnesses(fixtures, name):
    iota = fixtures[name].iota
    order, _ = iota_order(iota)
    ident = ChainMap.identity(iota.source)
    assert 4 in order.witnesses
    for k, (s, h) in order.witnesses.items():
        assert power(iota, k) - ident.scale(s) == null_homotopic(h)


@pytest.mark.parametrize("name", sorted(HAT))
def test_cone_hat_profiles(fixtures, name):
    pair = build_cfi_pair(fixtures[name])
    plus, minus = cone_invariant(pair.plus, 1)[0], cone_invariant(pair.minus, 1)[0]
    assert (plus[0], minus[0]) == HAT[name]


def test_lens2_swap_cones_are_free(fixtures):
    pair = build_cfi_pair(fixtures["lens2-swap"])
    for cone in (pair.plus, pair.minus):
        h = homology_hat(specialize_hat(cone))
        assert h.summary() == "free rank 2, torsion none"


def test_cone_module_shape(fixtures):
    for data in fixtures.values():
        pair = build_cfi_pair(data)
        n = len(data.iota.source)
        assert len(pair.plus) == len(pair.minus) == 2 * n
        assert validate_complex(pair.plus).ok and validate_complex(pair.minus).ok


def test_order_flags_a_non_involution():
    d = PointedDiagram([lens(2)])
    # psi scaling by 2 is a chain map but iota^4 = 16 Id is not homotopic to +/- Id
    data = build_iota(d, psi_from_matrix(d, [[2, 0], [0, 2]]))
    order, rep = iota_order(data.iota)
    assert order.strict is None and order.projective_homotopy is None
    assert [f.kind for f in rep.findings] == ["order"]


def test_build_iota_validation():
    d = PointedDiagram([wiggle(2)])
    other = diagram_complex(PointedDiagram([lens(4)]))
    with pytest.raises(StructureError, match="conjugate"):
        build_iota(d, ChainMap.identity(other))
    one_finger = PointedDiagram([wiggle(1)])
    with pytest.raises(StructureError, match="chain map"):
        build_iota(one_finger, psi_from_matrix(one_finger, [[0, 1], [1, 0]]))


def test_compare_validates_truncation(fixtures):
    p = build_cfi_pair(fixtures["s3+"])
    with pytest.raises(ValueError):
        compare_cone_pairs(p, p, truncation=0)


def test_s3_signs_swap_the_cones(fixtures):
    a = build_cfi_pair(fixtures["s3+"])
    b = build_cfi_pair(fixtures["s3-"])
    v = compare_cone_pairs(a, b, truncation=2)
    assert v.equal                       # unordered pairs agree
    assert v.left[0] == v.right[1] and v.left[1] == v.right[0]


def test_distinct_involutions_are_distinguished(fixtures):
    a = build_cfi_pair(fixtures["wiggle-diag"])
    b = build_cfi_pair(fixtures["wiggle2-swap"])
    assert not compare_cone_pairs(a, b).equal


# ------------------------------------------------------------ randomized

@settings(max_examples=25)
@given(st.integers(min_value=0, max_value=10 ** 6), st.sampled_from(sorted(ORDERS)))
def test_homotopic_psi_gives_equal_invariants(seed, name):
    rng = random.Random(seed)
    data = iota_fixtures()[name]
    psi = data.psi
    psi2 = psi + null_homotopic(random_homotopy(rng, psi.source, psi.target))
    data2 = build_iota(data.diagram, psi2)
    v = compare_cone_pairs(build_cfi_pair(data), build_cfi_pair(data2), truncation=2)
    assert v.equal, (v.left, v.right)


@settings(max_examples=25)
@given(st.integers(min_value=0, max_value=10 ** 6), st.sampled_from(sorted(ORDERS)))
def test_conjugated_iota_gives_equal_invariants(seed, name):
    rng = random.Random(seed)
    iota = iota_fixtures()[name].iota
    c2, phi, phi_inv = random_basis_change(rng, iota.source)
    iota2 = compose(phi, compose(iota, phi_inv))
    pair2 = ConePair(mapping_cone(ChainMap.identity(c2) + iota2), mapping_cone(ChainMap.identity(c2) - iota2))
    pair = build_cfi_pair(iota_fixtures()[name])
    assert compare_cone_pairs(pair, pair2, truncation=2).equal

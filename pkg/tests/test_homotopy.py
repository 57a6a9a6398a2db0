import random

import pytest
from hypothesis import given, settings, strategies as st

from floerkit.algebra import (
    ChainMap,
    Generator,
    GradedComplex,
    SignClass,
    U,
    free_module,
    homotopic,
    homotopy_inverse,
    homotopy_witness,
    inverse_in_mode,
    is_identity,
    maps_agree,
    normalize_mode,
    projectively_homotopic,
    strict_inverse,
    weaker_mode,
)
from floerkit.algebra.complexes import compose
from floerkit.algebra.homotopy import composite, null_homotopic_part
from floerkit.randomized import null_homotopic, random_chain_map, random_endomorphism_setup, random_homotopy

seeds = st.integers(0, 10**6)


def arrow():
    return GradedComplex([Generator("x", 1), Generator("y", 0)], {("y", "x"): 1})


def test_identity_on_acyclic_arrow_is_null_homotopic():
    c = arrow()
    h = homotopy_witness(ChainMap.identity(c), ChainMap.zero(c, c))
    assert h is not None
    assert null_homotopic_part(h, 0) == ChainMap.identity(c)


def test_distinct_maps_on_a_point_are_not_homotopic():
    c = free_module(1)
    assert not homotopic(ChainMap.identity(c), 2 * ChainMap.identity(c))
    assert projectively_homotopic(ChainMap.identity(c), -ChainMap.identity(c))
    assert not homotopic(ChainMap.identity(c), -ChainMap.identity(c))


def test_homotopy_needs_u_powers():
    # d x = U y: the identity is not null-homotopic over Z[U]
    c = GradedComplex([Generator("x", 1), Generator("y", 2)], {("y", "x"): U})
    assert homotopy_witness(ChainMap.identity(c), ChainMap.zero(c, c)) is None


@given(seeds)
@settings(max_examples=40)
def test_perturbations_are_homotopic(s):
    rng = random.Random(s)
    f = random_chain_map(rng)
    g = f + null_homotopic(random_homotopy(rng, f.source, f.target))
    h = homotopy_witness(g, f)
    assert h is not None
    assert null_homotopic_part(h, 0) == g - f


def test_random_homotopies_keep_components_apart():
    c = GradedComplex([Generator("a", 0, "s0"), Generator("b", 1, "s0"), Generator("c", 1, "s1"),
                       Generator("e", 2, "s1")])
    rng = random.Random(3)
    for _ in range(20):
        h = random_homotopy(rng, c, c, density=1.0)
        assert all(c.component(x) == c.component(y) for y, x in h.m)
    h = random_homotopy(rng, c, c, density=1.0, allowed=[("s0", "s1")])
    assert h.m and all((c.component(x), c.component(y)) == ("s0", "s1") for y, x in h.m)


@given(seeds)
@settings(max_examples=30)
def test_homotopy_inverse_of_basis_change(s):
    rng = random.Random(s)
    c, f = random_endomorphism_setup(rng, perturb=False)
    inv = strict_inverse(f)
    if inv is not None:
        assert compose(inv, f) == ChainMap.identity(c)
        assert compose(f, inv) == ChainMap.identity(c)
    out = homotopy_inverse(f)
    if out is not None:
        g = out[0]
        assert homotopic(compose(g, f), ChainMap.identity(c))
        assert homotopic(compose(f, g), ChainMap.identity(c))
    if inv is not None:
        assert out is not None


def test_two_is_not_invertible_over_z():
    c = free_module(1)
    two = 2 * ChainMap.identity(c)
    for mode in ("strict", "sign", "sign-homotopy"):
        assert inverse_in_mode(two, mode) is None


def test_acyclic_complex_maps_are_homotopy_equivalences():
    a, z = arrow(), GradedComplex([])
    f = ChainMap.zero(a, z)
    assert strict_inverse(f) is None
    assert homotopy_inverse(f) is not None


def test_modes():
    assert normalize_mode("up-to-sign") == "sign"
    assert normalize_mode("up-to-sign-and-homotopy") == "sign-homotopy"
    with pytest.raises(ValueError):
        normalize_mode("loose")
    assert weaker_mode("strict", "sign") == "sign"
    assert weaker_mode("sign-homotopy", "strict") == "sign-homotopy"
    c = free_module(1)
    i = ChainMap.identity(c)
    assert not maps_agree(-i, i, "strict")
    assert maps_agree(-i, i, "sign")
    assert is_identity(-i, "sign-homotopy") and not is_identity(-i, "strict")


def test_composite_runs_first_map_first():
    a, b = free_module(1, "a"), free_module(1, "b")
    f = ChainMap.from_correspondence(a, b, {"a0": "b0"})
    g = ChainMap.from_correspondence(b, a, {"b0": ("a0", -1)})
    assert composite([f, g]) == -ChainMap.identity(a)


# ---------------------------------------------------------- sign classes

@given(seeds)
@settings(max_examples=40)
def test_sign_class_composition_is_well_defined(s):
    rng = random.Random(s)
    c, f = random_endomorphism_setup(rng)
    _, g = c, random_endomorphism_setup(rng)[1]
    g = ChainMap(c, c, {k: v for k, v in f.m.items()}) if g.source != c else g
    sf, sg = SignClass(f), SignClass(g)
    base = sf.compose(sg)
    for a in (1, -1):
        for b in (1, -1):
            assert SignClass(a * f).compose(SignClass(b * g)) == base


def test_sign_class_equality_and_canonical_sign():
    c = free_module(2)
    f = ChainMap.from_matrix(c, c, [[0, -1], [1, 0]])
    assert SignClass(f) == SignClass(-f)
    assert SignClass(f).canonical == SignClass(-f).canonical
    assert hash(SignClass(f)) == hash(SignClass(-f))
    assert SignClass(f) != SignClass(ChainMap.identity(c))

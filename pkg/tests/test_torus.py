"""Torus geometry against independent lattice computations."""

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from floerkit.algebra.complexes import specialize_hat, validate_complex
from floerkit.algebra.homology import homology_hat
from floerkit.diagrams.catalog import lens, random_geodesic, random_torus, random_wiggle, s3, wiggle
from floerkit.diagrams.pointed import bigon_differential
from floerkit.diagrams.torus import apply_sl2, geometry, torus
from floerkit.reports import StructureError


from oracles import brute_force_bigons, det as _det, lattice_intersections, listed_bigons, strip_class


# ------------------------------------------------------------- generators

@pytest.mark.parametrize("p", [1, 2, 3, 5, 7])
def test_lens_generator_count(p):
    assert len(geometry(lens(p)).generators) == p


def test_geodesic_generators_match_lattice_solve(rng):
    for _ in range(25):
        d = random_geodesic(rng)
        g = geometry(d)
        got = {(c[0] % 1, c[1] % 1) for c in g.gen_coords.values()}
        want = lattice_intersections(d)
        assert len(g.generators) == abs(_det(d.alpha.direction, d.beta.direction))
        assert got == want


@pytest.mark.parametrize("k", [1, 2, 3])
def test_wiggle_generator_count(k):
    assert len(geometry(wiggle(k)).generators) == 2 * k


def test_transversality_is_checked():
    with pytest.raises(StructureError):
        geometry(torus((1, 0), (2, 0)))


# ---------------------------------------------------------------- regions

def test_region_euler_characteristics(rng):
    for _ in range(30):
        d = random_torus(rng)
        g = geometry(d)
        assert sum(r.chi for r in g.regions) == len(g.generators)
        assert sum(r.euler_measure for r in g.regions) == 0
        assert sum(r.corner_count for r in g.regions) == 4 * len(g.generators)


def test_geodesic_regions_are_squares(rng):
    for _ in range(15):
        d = random_geodesic(rng)
        g = geometry(d)
        assert len(g.regions) == len(g.generators)
        assert all(r.kind == "disk" and r.corner_count == 4 for r in g.regions)


def test_locate_agrees_with_strip_classes(rng):
    for _ in range(10):
        d = random_geodesic(rng)
        g = geometry(d)
        seen = {}
        for _ in range(60):
            p = (Fraction(rng.randrange(1, 997), 997), Fraction(rng.randrange(1, 991), 991))
            try:
                r = g.locate(g.to_frame(p))
            except StructureError:
                continue
            key = strip_class(d, p)
            assert seen.setdefault(key, r) == r
        assert len(set(seen.values())) == len(seen)


def test_wiggle_regions():
    g = geometry(wiggle(2))
    kinds = sorted(r.kind for r in g.regions)
    assert kinds == ["annulus", "disk", "disk", "disk", "disk"]
    assert g.regions[g.z_region].kind == "annulus"


# ----------------------------------------------------------------- bigons

@pytest.mark.parametrize("d", [s3(), wiggle(1), wiggle(2), lens(3)], ids=["s3", "wiggle1", "wiggle2", "lens3"])
def test_bigons_match_brute_force(d):
    assert listed_bigons(d) == brute_force_bigons(d)


def test_random_wiggle_bigons_match_brute_force():
    r = random.Random(7)
    checked = 0
    while checked < 6:
        d = random_wiggle(r, max_fingers=2)
        if len(geometry(d).regions) > 5:
            continue
        assert listed_bigons(d) == brute_force_bigons(d)
        checked += 1


def test_bigon_gradings(rng):
    for _ in range(20):
        d = random_wiggle(rng)
        c = bigon_differential(d)
        for b in geometry(d).bigons():
            assert c.grading(b.source) - c.grading(b.target) == 1 - 2 * b.n_z


def test_one_finger_wiggle_has_two_opposite_bigons():
    bs = [b for b in geometry(wiggle(1)).bigons() if b.n_z == 0]
    assert len(bs) == 2
    assert {(b.source, b.target) for b in bs} == {(bs[0].source, bs[0].target)}
    assert sorted(b.sign for b in bs) == [-1, 1]


# ------------------------------------------------------- complexes, sl2

@settings(max_examples=40)
@given(st.integers(min_value=0, max_value=10 ** 6), st.sampled_from(["alpha-direction", "beta-direction"]))
def test_random_torus_complexes_are_valid(seed, rule):
    d = random_torus(random.Random(seed))
    c = bigon_differential(d, rule)
    assert validate_complex(c).ok


@pytest.mark.parametrize("p", [1, 2, 3, 4])
def test_lens_hat_homology(p):
    h = homology_hat(specialize_hat(bigon_differential(lens(p))))
    assert h.free_rank() == p and not h.torsion()


def test_sl2_image_preserves_homology(rng):
    for _ in range(8):
        d = random_geodesic(rng, max_det=4)
        m = (2, 1, 1, 1)
        e = apply_sl2(d, m)
        h1 = homology_hat(specialize_hat(bigon_differential(d)))
        h2 = homology_hat(specialize_hat(bigon_differential(e)))
        assert h1.profile() == h2.profile()


def test_sl2_rejects_non_invertible():
    with pytest.raises(StructureError):
        apply_sl2(s3(), (2, 0, 0, 1))

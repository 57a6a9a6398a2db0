"""Named genus-two pieces with transcribed intersection tables.

The genus-two surface carries two alpha systems ``alpha0`` and ``alpha0'``
and two beta systems ``beta0`` and ``beta0'``.  A piece is an ordered pair
of systems (attaching curves, then the second family) with an orientation
flag.  Pairs of one alpha and one beta system present the three-sphere and
have a single intersection point.  Pairs of two systems of the same kind
present ``#2 S^1 x S^2`` and have the four points ``th1(+/-)th2(+/-)``.  In
all cases there are no differentials: same-kind pairs have four generators
in the torsion class whose homology must have rank four, which forces the
differential to vanish.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Tuple

from ..algebra.complexes import Generator, GradedComplex
from ..reports import StructureError

SYSTEMS = ("alpha0", "alpha0'", "beta0", "beta0'")

# ordered pair (first, second) of the positively oriented presentation -> generators
_SINGLE = {
    ("alpha0", "beta0"): "a",
    ("alpha0'", "beta0"): "b",
    ("alpha0'", "beta0'"): "c",
    ("alpha0", "beta0'"): "d",
}

THETA = ("th1+th2+", "th1+th2-", "th1-th2+", "th1-th2-")
THETA_GRADINGS = {"th1+th2+": 2, "th1+th2-": 1, "th1-th2+": 1, "th1-th2-": 0}

_THETA_PAIRS = {("alpha0'", "alpha0"), ("beta0", "beta0'")}

NAMED = {
    "handleswap_alpha": ("alpha0'", "alpha0"),
    "handleswap_beta": ("beta0", "beta0'"),
    "double_stabilizer": ("alpha0", "beta0"),
}

# transcribed periodic domains of the theta pieces: each handle contributes a
# thin annulus between the two parallel copies, split by the second family
# into two strips of opposite sign; four strips in total
THETA_REGIONS = ("P1", "P1'", "P2", "P2'")
THETA_PERIODIC = ((1, -1, 0, 0), (0, 0, 1, -1))


@dataclass(frozen=True)
class GenusTwoFixture:
    first: str
    second: str
    orientation: int = 1

    def __post_init__(self):
        for s in (self.first, self.second):
            if s not in SYSTEMS:
                raise StructureError(f"unknown genus-two curve system {s!r}")
        if self.first == self.second:
            raise StructureError("a genus-two piece needs two different curve systems")
        if self.orientation not in (1, -1):
            raise StructureError("orientation must be +1 or -1")
        if self.positive_pair not in _SINGLE and self.positive_pair not in _THETA_PAIRS:
            raise StructureError(f"no transcribed table for the pair {self.positive_pair}")

    @property
    def positive_pair(self) -> Tuple[str, str]:
        return (self.first, self.second) if self.orientation == 1 else (self.second, self.first)

    @property
    def genus(self) -> int:
        return 2

    @property
    def name(self) -> str:
        for k, v in NAMED.items():
            if v == self.positive_pair:
                return k if self.orientation == 1 else f"conjugate {k}"
        return f"{self.first}/{self.second}" + ("" if self.orientation == 1 else " (reversed)")

    @property
    def is_theta(self) -> bool:
        return self.positive_pair in _THETA_PAIRS

    def key(self) -> tuple:
        return ("genus2", self.first, self.second, self.orientation)

    def generators(self) -> List[str]:
        if self.is_theta:
            return list(THETA)
        return [_SINGLE[self.positive_pair]]

    def complex(self) -> GradedComplex:
        if self.is_theta:
            return GradedComplex(Generator(n, THETA_GRADINGS[n], "s0") for n in THETA)
        return GradedComplex([Generator(_SINGLE[self.positive_pair], 0, "s0")])

    def periodic_lattice(self) -> Tuple[Tuple[str, ...], Tuple[Tuple[int, ...], ...], Tuple[int, ...]]:
        """``(region labels, basis, c_1 pairing on the basis)`` (torsion class, so pairing 0)."""
        if self.is_theta:
            return THETA_REGIONS, THETA_PERIODIC, (0, 0)
        return (), (), ()


def fixture(name: str) -> GenusTwoFixture:
    try:
        return GenusTwoFixture(*NAMED[name])
    except KeyError:
        raise StructureError(f"unknown fixture {name!r}; expected one of {sorted(NAMED)}") from None


def conjugate_fixture(f: GenusTwoFixture) -> GenusTwoFixture:
    return GenusTwoFixture(f.second, f.first, -f.orientation)


def parse_fixture(raw) -> GenusTwoFixture:
    """A fixture name, or a pair ``[first, second]`` with an optional orientation."""
    if isinstance(raw, str):
        return fixture(raw)
    if isinstance(raw, dict):
        return GenusTwoFixture(raw["first"], raw["second"], int(raw.get("orientation", 1)))
    first, second, *rest = raw
    return GenusTwoFixture(first, second, int(rest[0]) if rest else 1)


def fixture_to_json(f: GenusTwoFixture) -> Dict[str, object]:
    for k, v in NAMED.items():
        if v == (f.first, f.second) and f.orientation == 1:
            return {"fixture": k}
    return {"fixture": {"first": f.first, "second": f.second, "orientation": f.orientation}}


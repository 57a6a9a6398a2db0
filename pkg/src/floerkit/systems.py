"""Transitive systems over finite directed sets.

A system assigns an object (a :class:`GradedComplex`; modules are complexes
with zero differential) to each index and a chain map ``f[i, j]`` to each
related pair ``i <= j``.  Axioms are checked in one of three comparison
modes: ``strict`` (equal matrices), ``sign`` (equal up to an overall sign)
and ``sign-homotopy`` (chain homotopic up to sign).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

from .algebra.complexes import ChainMap, GradedComplex, SignClass, compose
from .algebra.homotopy import inverse_in_mode, is_identity, maps_agree, normalize_mode, weaker_mode
from .reports import Report, StructureError

Pair = Tuple[str, str]


class NotAnIsomorphism(ValueError):
    pass


@dataclass(frozen=True)
class DirectedIndex:
    elements: Tuple[str, ...]
    relation: FrozenSet[Pair]

    def __init__(self, elements: Iterable[str], relation: Iterable[Pair]):
        els = tuple(elements)
        if len(set(els)) != len(els):
            raise StructureError("duplicate index elements")
        rel = frozenset((str(a), str(b)) for a, b in relation)
        for a, b in rel:
            if a not in els or b not in els:
                raise StructureError(f"relation pair ({a}, {b}) outside the index set")
        object.__setattr__(self, "elements", els)
        object.__setattr__(self, "relation", rel)

    @classmethod
    def total_order(cls, elements: Sequence[str]) -> "DirectedIndex":
        els = list(elements)
        return cls(els, [(a, b) for i, a in enumerate(els) for b in els[i:]])

    @classmethod
    def product(cls, I: "DirectedIndex", J: "DirectedIndex") -> "DirectedIndex":
        els = [product_name(i, j) for j in J.elements for i in I.elements]
        rel = [
            (product_name(i, j), product_name(i2, j2))
            for (i, i2) in I.relation
            for (j, j2) in J.relation
        ]
        return cls(els, rel)

    def leq(self, a: str, b: str) -> bool:
        return (a, b) in self.relation

    def upper_bounds(self, a: str, b: str) -> List[str]:
        return [u for u in self.elements if self.leq(a, u) and self.leq(b, u)]

    def strict_pairs(self) -> List[Pair]:
        return sorted((a, b) for a, b in self.relation if a != b)

    def chains(self) -> List[Tuple[str, str, str]]:
        order = {e: n for n, e in enumerate(self.elements)}
        out = []
        for (i, j) in self.relation:
            for (j2, k) in self.relation:
                if j2 == j:
                    out.append((i, j, k))
        return sorted(out, key=lambda t: tuple(order[x] for x in t))

    def validate(self) -> Report:
        rep = Report("directed index")
        for e in self.elements:
            if (e, e) not in self.relation:
                rep.add("reflexive", f"{e} <= {e} missing", e)
        for (i, j, k) in self.chains():
            if (i, k) not in self.relation:
                rep.add("transitive", f"{i} <= {j} <= {k} but not {i} <= {k}", i, j, k)
        for a in self.elements:
            for b in self.elements:
                if a < b and not self.upper_bounds(a, b):
                    rep.add("directed", f"{a} and {b} have no upper bound", a, b)
        return rep

    def components(self) -> List[List[str]]:
        parent = {e: e for e in self.elements}

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        for a, b in self.relation:
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[rb] = ra
        groups: Dict[str, List[str]] = {}
        for e in self.elements:
            groups.setdefault(find(e), []).append(e)
        return list(groups.values())


def product_name(i: str, j: str) -> str:
    return f"({i},{j})"


@dataclass
class TransSystem:
    index: DirectedIndex
    objects: Dict[str, GradedComplex]
    maps: Dict[Pair, ChainMap]
    mode: str = "strict"

    def __post_init__(self):
        self.mode = normalize_mode(self.mode)

    def map(self, i: str, j: str) -> ChainMap:
        try:
            return self.maps[(i, j)]
        except KeyError:
            raise StructureError(f"no map for the pair ({i}, {j})") from None

    def check_structure(self) -> None:
        for e in self.index.elements:
            if e not in self.objects:
                raise StructureError(f"index element {e!r} has no object")
        for (i, j) in self.index.relation:
            f = self.map(i, j)
            if f.source != self.objects[i] or f.target != self.objects[j]:
                raise StructureError(f"map ({i}, {j}) does not run between the assigned objects")
        for (i, j) in self.maps:
            if (i, j) not in self.index.relation:
                raise StructureError(f"map ({i}, {j}) is not on a related pair")


def validate_system(s: TransSystem, mode: Optional[str] = None) -> Report:
    """Identity and composition axioms over every chain ``i <= j <= k``."""
    mode = normalize_mode(mode or s.mode)
    s.check_structure()
    rep = Report(f"transitive system ({mode})")
    rep.extend(s.index.validate(), prefix="index:")
    for e in s.index.elements:
        if not is_identity(s.map(e, e), mode):
            rep.add("identity", f"f[{e},{e}] is not the identity", e)
    checked = 0
    for (i, j, k) in s.index.chains():
        if i == j or j == k:
            continue
        checked += 1
        lhs = s.map(i, k)
        rhs = compose(s.map(j, k), s.map(i, j))
        if not maps_agree(lhs, rhs, mode):
            rep.add("composition", f"f[{i},{k}] != f[{j},{k}] o f[{i},{j}]", i, j, k)
    rep.note(f"indices: {len(s.index.elements)}; chains checked: {checked}")
    return rep


@dataclass
class SysMorphism:
    index_map: Dict[str, str]
    family: Dict[str, ChainMap]


def validate_sys_morphism(m: SysMorphism, s1: TransSystem, s2: TransSystem, mode: Optional[str] = None) -> Report:
    mode = normalize_mode(mode or weaker_mode(s1.mode, s2.mode))
    rep = Report(f"system morphism ({mode})")
    M = m.index_map
    for i in s1.index.elements:
        if i not in M:
            raise StructureError(f"index map undefined on {i!r}")
        if M[i] not in s2.index.elements:
            raise StructureError(f"index map sends {i!r} outside the target index")
        if i not in m.family:
            raise StructureError(f"family has no map at {i!r}")
        n = m.family[i]
        if n.source != s1.objects[i] or n.target != s2.objects[M[i]]:
            raise StructureError(f"family map at {i!r} has the wrong source or target")
    for (i, j) in sorted(s1.index.relation):
        if not s2.index.leq(M[i], M[j]):
            rep.add("monotone", f"{i} <= {j} but M({i}) = {M[i]} is not <= M({j}) = {M[j]}", i, j)
            continue
        lhs = compose(s2.map(M[i], M[j]), m.family[i])
        rhs = compose(m.family[j], s1.map(i, j))
        if not maps_agree(lhs, rhs, mode):
            rep.add("square", f"square at ({i}, {j}) does not commute", i, j)
    return rep


def identity_morphism(s: TransSystem) -> SysMorphism:
    return SysMorphism({e: e for e in s.index.elements}, {e: ChainMap.identity(s.objects[e]) for e in s.index.elements})


@dataclass
class TwoLevelSystem:
    """A system indexed by ``J`` whose objects are systems over a common ``I``.

    ``connecting[(j, j2)]`` is a morphism from ``inner[j]`` to ``inner[j2]``
    with identity index map.
    """

    outer: DirectedIndex
    inner: Dict[str, TransSystem]
    connecting: Dict[Pair, SysMorphism]
    mode: str = "strict"


def flatten_product(t: TwoLevelSystem) -> TransSystem:
    """Transitive system over ``I x J`` with the product order."""
    inner = [t.inner[j] for j in t.outer.elements]
    I = inner[0].index
    for s in inner[1:]:
        if s.index != I:
            raise StructureError("inner systems do not share an index")
    for (j, j2), mor in t.connecting.items():
        if any(mor.index_map.get(i) != i for i in I.elements):
            raise StructureError(f"connecting morphism ({j}, {j2}) does not have the identity index map")
    for (j, j2) in t.outer.relation:
        if (j, j2) not in t.connecting:
            raise StructureError(f"missing connecting morphism ({j}, {j2})")
    mode = t.mode
    for s in inner:
        mode = weaker_mode(mode, s.mode)
    index = DirectedIndex.product(I, t.outer)
    objects = {product_name(i, j): t.inner[j].objects[i] for j in t.outer.elements for i in I.elements}
    maps = {}
    for (i, i2) in I.relation:
        for (j, j2) in t.outer.relation:
            n = t.connecting[(j, j2)].family[i]
            maps[(product_name(i, j), product_name(i2, j2))] = compose(t.inner[j2].map(i, i2), n)
    return TransSystem(index, objects, maps, mode)


# ------------------------------------------------------------------ colimits

@dataclass
class Colimit:
    representatives: Dict[str, str]           # index element -> representative element
    objects: Dict[str, GradedComplex]         # representative -> object
    injections: Dict[str, object]             # element -> ChainMap or SignClass
    mode: str = "strict"

    def injection_map(self, i: str) -> ChainMap:
        inj = self.injections[i]
        return inj.representative if isinstance(inj, SignClass) else inj


def colimit_modules(s: TransSystem) -> Colimit:
    """Colimit of a system of isomorphisms, represented at the minimal index.

    The minimal index of each connected component (in the order of
    ``s.index.elements``) is the representative; the injection of ``i`` is
    ``f[m, u]^-1 o f[i, u]`` for the first common upper bound ``u``.
    """
    mode = s.mode
    if mode == "sign-homotopy":
        raise ValueError("colimits are formed in strict or sign mode")
    s.check_structure()
    inverses: Dict[Pair, ChainMap] = {}
    for (i, j) in sorted(s.index.relation):
        inv = inverse_in_mode(s.map(i, j), mode)
        if inv is None:
            raise NotAnIsomorphism(f"map ({i}, {j}) is not an isomorphism")
        inverses[(i, j)] = inv
    reps: Dict[str, str] = {}
    objs: Dict[str, GradedComplex] = {}
    inj: Dict[str, object] = {}
    order = list(s.index.elements)
    for comp in s.index.components():
        m = min(comp, key=order.index)
        objs[m] = s.objects[m]
        for i in sorted(comp, key=order.index):
            reps[i] = m
            ups = s.index.upper_bounds(i, m)
            if not ups:
                raise StructureError(f"{i} and {m} have no common upper bound")
            u = ups[0]
            f = compose(inverses[(m, u)], s.map(i, u))
            inj[i] = SignClass(f) if mode == "sign" else f
    return Colimit(reps, objs, inj, mode)


def index_paths(index: DirectedIndex, max_len: int) -> List[Tuple[str, ...]]:
    """All sequences ``i0 < i1 < ... `` along strict related pairs, 1..max_len steps."""
    succ: Dict[str, List[str]] = {}
    for a, b in index.strict_pairs():
        succ.setdefault(a, []).append(b)
    out = []

    def walk(path):
        if len(path) > 1:
            out.append(tuple(path))
        if len(path) - 1 == max_len:
            return
        for b in succ.get(path[-1], ()):
            walk(path + [b])

    for e in index.elements:
        walk([e])
    return out


def check_colimit_paths(s: TransSystem, col: Colimit, max_len: int = 4) -> Report:
    """``inj[end] o f[path] = inj[start]`` for every index path up to ``max_len``."""
    rep = Report(f"colimit path coherence ({col.mode})")
    n = 0
    for path in index_paths(s.index, max_len):
        f = s.map(path[0], path[1])
        for a, b in zip(path[1:], path[2:]):
            f = compose(s.map(a, b), f)
        lhs = compose(col.injection_map(path[-1]), f)
        n += 1
        if not maps_agree(lhs, col.injection_map(path[0]), col.mode):
            rep.add("path", f"injections disagree along {' -> '.join(path)}", *path)
    rep.note(f"paths checked: {n}")
    return rep


def compose_sign_classes(f: SignClass, g: SignClass) -> SignClass:
    """The class of ``g o f``."""
    return f.compose(g)

"""Graded free chain complexes over Z[U] and chain maps between them.

Conventions
-----------
* ``U`` lowers the grading by 2 and the differential lowers it by 1, so a
  nonzero entry ``c U^k`` from ``x`` to ``y`` (meaning ``d x`` contains
  ``c U^k y``) requires ``gr(y) - 2k = gr(x) - 1``.
* A chain map of degree ``n`` raises gradings by ``n`` and satisfies
  ``d_T f = (-1)^n f d_S``.
* Matrices are sparse dictionaries keyed by ``(row, column)`` =
  ``(target name, source name)``.
* Generators are kept sorted by name, which fixes every iteration order.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from ..reports import Report, StructureError
from .upoly import ONE, UPoly, ZERO

Key = Tuple[str, str]
PolyMatrix = Dict[Key, UPoly]


class NotAChainMap(ValueError):
    """A map failed the commutation relation; carries the failing entry."""

    def __init__(self, message: str, entry=None):
        super().__init__(message)
        self.entry = entry


@dataclass(frozen=True, order=True)
class Generator:
    name: str
    grading: int
    component: str = "s0"


# ---------------------------------------------------------------- sparse ops

def _clean(m: Mapping[Key, UPoly]) -> PolyMatrix:
    return {k: v for k, v in m.items() if v}


def mat_add(a: Mapping[Key, UPoly], b: Mapping[Key, UPoly], sign: int = 1) -> PolyMatrix:
    out = dict(a)
    for k, v in b.items():
        w = out.get(k, ZERO) + (v if sign == 1 else -v if sign == -1 else v * sign)
        if w:
            out[k] = w
        else:
            out.pop(k, None)
    return out


def mat_scale(a: Mapping[Key, UPoly], s) -> PolyMatrix:
    s = UPoly.coerce(s)
    return _clean({k: v * s for k, v in a.items()})


def _columns(m: Mapping[Key, UPoly]) -> Dict[str, List[Tuple[str, UPoly]]]:
    cols: Dict[str, List[Tuple[str, UPoly]]] = {}
    for (r, c), v in m.items():
        cols.setdefault(c, []).append((r, v))
    return cols


def mat_mul(a: Mapping[Key, UPoly], b: Mapping[Key, UPoly]) -> PolyMatrix:
    """Sparse product ``a @ b`` (apply ``b`` first)."""
    acols = _columns(a)
    acc: Dict[Key, UPoly] = {}
    for (mid, x), pb in b.items():
        for z, pa in acols.get(mid, ()):
            k = (z, x)
            acc[k] = acc.get(k, ZERO) + pa * pb
    return _clean(acc)


# ------------------------------------------------------------------ complexes

class GradedComplex:
    """A finitely generated free graded complex over Z[U].

    ``differential`` maps ``(to, from)`` to a polynomial entry.  The
    constructor checks structure only (known names, unique names); use
    :func:`validate_complex` for the grading, component and ``d^2 = 0``
    invariants.
    """

    __slots__ = ("generators", "d", "_index", "_hash", "_cols")

    def __init__(self, generators: Iterable[Generator], differential: Optional[Mapping[Key, object]] = None):
        gens = sorted(generators, key=lambda g: g.name)
        index: Dict[str, Generator] = {}
        for g in gens:
            if not isinstance(g, Generator):
                raise StructureError(f"not a Generator: {g!r}")
            if g.name in index:
                raise StructureError(f"duplicate generator name {g.name!r}")
            index[g.name] = g
        d: PolyMatrix = {}
        for key, p in (differential or {}).items():
            y, x = key
            if y not in index or x not in index:
                raise StructureError(f"differential entry {key!r} references an unknown generator")
            p = UPoly.coerce(p)
            if p:
                d[(y, x)] = d.get((y, x), ZERO) + p
        self.generators: Tuple[Generator, ...] = tuple(gens)
        self.d: PolyMatrix = _clean(d)
        self._index = index
        self._hash = None
        self._cols = None

    # basic access
    @property
    def names(self) -> Tuple[str, ...]:
        return tuple(g.name for g in self.generators)

    def __len__(self) -> int:
        return len(self.generators)

    def __contains__(self, name: str) -> bool:
        return name in self._index

    def gen(self, name: str) -> Generator:
        try:
            return self._index[name]
        except KeyError:
            raise StructureError(f"unknown generator {name!r}") from None

    def grading(self, name: str) -> int:
        return self.gen(name).grading

    def component(self, name: str) -> str:
        return self.gen(name).component

    def components(self) -> Tuple[str, ...]:
        return tuple(sorted({g.component for g in self.generators}))

    def entry(self, y: str, x: str) -> UPoly:
        return self.d.get((y, x), ZERO)

    def boundary(self, x: str) -> List[Tuple[str, UPoly]]:
        """Nonzero terms of d(x), sorted by target name."""
        if self._cols is None:
            cols = _columns(self.d)
            self._cols = {k: sorted(v) for k, v in cols.items()}
        return self._cols.get(x, [])

    def is_hat(self) -> bool:
        return all(e == 0 for p in self.d.values() for _, e in p)

    # derived complexes
    def with_generators(self, gens: Iterable[Generator]) -> "GradedComplex":
        return GradedComplex(gens, self.d)

    def rename(self, mapping: Mapping[str, str]) -> "GradedComplex":
        gens = [Generator(mapping.get(g.name, g.name), g.grading, g.component) for g in self.generators]
        d = {(mapping.get(y, y), mapping.get(x, x)): p for (y, x), p in self.d.items()}
        return GradedComplex(gens, d)

    def negate_differential(self) -> "GradedComplex":
        return GradedComplex(self.generators, {k: -v for k, v in self.d.items()})

    # equality
    def __eq__(self, other) -> bool:
        if self is other:
            return True
        if not isinstance(other, GradedComplex):
            return NotImplemented
        return self.generators == other.generators and self.d == other.d

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.generators, frozenset(self.d.items())))
        return self._hash

    def __repr__(self) -> str:
        return f"GradedComplex({len(self.generators)} generators, {len(self.d)} entries)"

    def describe(self) -> str:
        lines = []
        for g in self.generators:
            terms = self.boundary(g.name)
            rhs = " + ".join(f"({p})*{y}" for y, p in terms) if terms else "0"
            lines.append(f"d {g.name} [gr {g.grading}, {g.component}] = {rhs}")
        return "\n".join(lines)


def zero_complex() -> GradedComplex:
    return GradedComplex(())


def free_module(rank: int, prefix: str = "e", grading: int = 0, component: str = "s0") -> GradedComplex:
    """Zero-differential complex on ``rank`` generators: a free module."""
    width = len(str(max(rank - 1, 0)))
    return GradedComplex(Generator(f"{prefix}{i:0{width}d}", grading, component) for i in range(rank))


def validate_complex(c: GradedComplex) -> Report:
    """Check grading, component and ``d^2 = 0`` invariants; list all violations."""
    rep = Report("complex validation")
    for (y, x), p in sorted(c.d.items()):
        gx, gy = c.gen(x), c.gen(y)
        for coef, k in p:
            want = gx.grading - 1 + 2 * k
            if gy.grading != want:
                rep.add(
                    "grading",
                    f"entry {x}->{y} has term {coef}U^{k}: expected gr({y}) = {want}, found {gy.grading}",
                    y, x,
                )
        if gx.component != gy.component:
            rep.add("component", f"entry {x}->{y} crosses components {gx.component} -> {gy.component}", y, x)
    dd = mat_mul(c.d, c.d)
    for (y, x), p in sorted(dd.items()):
        rep.add("d_squared", f"d^2 has entry {p} from {x} to {y}", y, x)
    rep.note(f"generators: {len(c)}; nonzero entries: {len(c.d)}")
    return rep


def pin_gradings(c: GradedComplex) -> GradedComplex:
    """Shift gradings per component so the minimum occupied grading is 0."""
    low: Dict[str, int] = {}
    for g in c.generators:
        low[g.component] = min(low.get(g.component, g.grading), g.grading)
    return c.with_generators(Generator(g.name, g.grading - low[g.component], g.component) for g in c.generators)


def specialize_hat(c: GradedComplex) -> GradedComplex:
    """Set U = 0: keep only the constant coefficient of each entry."""
    return GradedComplex(c.generators, {k: UPoly.const(p.constant_term()) for k, p in c.d.items()})


def truncate(c: GradedComplex, t: int) -> GradedComplex:
    """Reduce every entry modulo U^t (the entries of C tensor Z[U]/U^t).

    The result is a complex over Z[U]/U^t: its square vanishes modulo U^t
    but can have higher-order terms when read over Z[U].
    """
    return GradedComplex(c.generators, {k: p.truncate(t) for k, p in c.d.items()})


def shift(c: GradedComplex, k: int) -> GradedComplex:
    """Raise every grading by ``k``; the differential is unchanged."""
    return c.with_generators(Generator(g.name, g.grading + k, g.component) for g in c.generators)


def _fresh(name: str, taken: set) -> str:
    out = name
    while out in taken:
        out += "'"
    return out


def direct_sum(a: GradedComplex, b: GradedComplex) -> GradedComplex:
    """Block-diagonal sum.  Names of ``b`` colliding with ``a`` get trailing primes."""
    return direct_sum_with_renaming(a, b)[0]


def direct_sum_with_renaming(a: GradedComplex, b: GradedComplex):
    taken = set(a.names)
    ren: Dict[str, str] = {}
    for n in b.names:
        new = _fresh(n, taken)
        taken.add(new)
        ren[n] = new
    b2 = b.rename(ren)
    return GradedComplex(a.generators + b2.generators, {**a.d, **b2.d}), ren


def tensor_product(a: GradedComplex, b: GradedComplex, sep: str = "|") -> GradedComplex:
    """Tensor product over Z[U] with the Koszul sign on the second factor."""
    gens = [
        Generator(f"{x.name}{sep}{y.name}", x.grading + y.grading, f"{x.component}{sep}{y.component}")
        for x in a.generators
        for y in b.generators
    ]
    d: Dict[Key, UPoly] = {}
    for x in a.generators:
        for y in b.generators:
            src = f"{x.name}{sep}{y.name}"
            for x2, p in a.boundary(x.name):
                k = (f"{x2}{sep}{y.name}", src)
                d[k] = d.get(k, ZERO) + p
            sgn = -1 if x.grading % 2 else 1
            for y2, p in b.boundary(y.name):
                k = (f"{x.name}{sep}{y2}", src)
                d[k] = d.get(k, ZERO) + (p if sgn == 1 else -p)
    return GradedComplex(gens, d)


# ----------------------------------------------------------------- chain maps

class ChainMap:
    """A graded Z[U]-linear map ``source -> target`` of a fixed degree."""

    __slots__ = ("source", "target", "m", "degree", "_hash")

    def __init__(self, source: GradedComplex, target: GradedComplex, entries: Optional[Mapping[Key, object]] = None, degree: int = 0):
        m: PolyMatrix = {}
        for key, p in (entries or {}).items():
            y, x = key
            if y not in target or x not in source:
                raise StructureError(f"map entry {key!r} references an unknown generator")
            p = UPoly.coerce(p)
            if p:
                m[(y, x)] = m.get((y, x), ZERO) + p
        self.source = source
        self.target = target
        self.m: PolyMatrix = _clean(m)
        self.degree = int(degree)
        self._hash = None

    # constructors
    @classmethod
    def identity(cls, c: GradedComplex) -> "ChainMap":
        return cls(c, c, {(n, n): ONE for n in c.names})

    @classmethod
    def zero(cls, source: GradedComplex, target: GradedComplex, degree: int = 0) -> "ChainMap":
        return cls(source, target, {}, degree)

    @classmethod
    def from_correspondence(cls, source: GradedComplex, target: GradedComplex, mapping: Mapping[str, object]) -> "ChainMap":
        """Build ``x -> sign * y`` from a dict ``x -> y`` or ``x -> (y, sign)``."""
        ent = {}
        for x, v in mapping.items():
            y, s = (v, 1) if isinstance(v, str) else v
            ent[(y, x)] = UPoly.const(s)
        return cls(source, target, ent)

    @classmethod
    def from_matrix(cls, source: GradedComplex, target: GradedComplex, rows: Sequence[Sequence[int]]) -> "ChainMap":
        """Constant matrix with rows indexed by target names, columns by source names."""
        tn, sn = target.names, source.names
        if len(rows) != len(tn) or any(len(r) != len(sn) for r in rows):
            raise StructureError("matrix shape does not match the complexes")
        return cls(source, target, {(tn[i], sn[j]): v for i, r in enumerate(rows) for j, v in enumerate(r) if v})

    # access
    def entry(self, y: str, x: str) -> UPoly:
        return self.m.get((y, x), ZERO)

    def is_zero(self) -> bool:
        return not self.m

    def constant_matrix(self) -> List[List[int]]:
        """Matrix of constant (U^0) coefficients, rows = target order."""
        tn, sn = self.target.names, self.source.names
        ti = {n: i for i, n in enumerate(tn)}
        si = {n: j for j, n in enumerate(sn)}
        out = [[0] * len(sn) for _ in tn]
        for (y, x), p in self.m.items():
            out[ti[y]][si[x]] = p.constant_term()
        return out

    # algebra
    def _check_parallel(self, other: "ChainMap") -> None:
        if not (self.source == other.source and self.target == other.target and self.degree == other.degree):
            raise StructureError("maps do not share source, target and degree")

    def __add__(self, other: "ChainMap") -> "ChainMap":
        self._check_parallel(other)
        return ChainMap(self.source, self.target, mat_add(self.m, other.m), self.degree)

    def __sub__(self, other: "ChainMap") -> "ChainMap":
        self._check_parallel(other)
        return ChainMap(self.source, self.target, mat_add(self.m, other.m, -1), self.degree)

    def __neg__(self) -> "ChainMap":
        return ChainMap(self.source, self.target, {k: -v for k, v in self.m.items()}, self.degree)

    def scale(self, s) -> "ChainMap":
        return ChainMap(self.source, self.target, mat_scale(self.m, s), self.degree)

    def __rmul__(self, s: int) -> "ChainMap":
        return self.scale(s)

    def then(self, g: "ChainMap") -> "ChainMap":
        """``g o self``."""
        return compose(g, self)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ChainMap):
            return NotImplemented
        return (
            self.degree == other.degree
            and self.m == other.m
            and self.source == other.source
            and self.target == other.target
        )

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.source, self.target, self.degree, frozenset(self.m.items())))
        return self._hash

    def __repr__(self) -> str:
        return f"ChainMap({len(self.source)}->{len(self.target)}, deg {self.degree}, {len(self.m)} entries)"

    def describe(self) -> str:
        lines = []
        cols = _columns(self.m)
        for x in self.source.names:
            terms = sorted(cols.get(x, []))
            rhs = " + ".join(f"({p})*{y}" for y, p in terms) if terms else "0"
            lines.append(f"f {x} = {rhs}")
        return "\n".join(lines)


def compose(g: ChainMap, f: ChainMap) -> ChainMap:
    """``g o f``; ``f.target`` must equal ``g.source``."""
    if not (f.target is g.source or f.target == g.source):
        raise StructureError("maps are not composable")
    return ChainMap(f.source, g.target, mat_mul(g.m, f.m), f.degree + g.degree)


def commutation_defect(f: ChainMap) -> PolyMatrix:
    """``d_T f - (-1)^deg f d_S``; zero exactly for chain maps."""
    sign = -1 if f.degree % 2 else 1
    return mat_add(mat_mul(f.target.d, f.m), mat_mul(f.m, f.source.d), -sign)


def check_chain_map(f: ChainMap) -> Report:
    rep = Report("chain map validation")
    for (y, x), p in sorted(f.m.items()):
        gx, gy = f.source.gen(x), f.target.gen(y)
        for coef, k in p:
            if gy.grading - 2 * k != gx.grading + f.degree:
                rep.add("grading", f"entry {x}->{y} term {coef}U^{k} has the wrong degree", y, x)
    for (y, x), p in sorted(commutation_defect(f).items()):
        rep.add("commutation", f"d f - (+/-) f d has entry {p} from {x} to {y}", y, x)
    return rep


def require_chain_map(f: ChainMap) -> None:
    rep = check_chain_map(f)
    if not rep.ok:
        first = rep.findings[0]
        raise NotAChainMap(first.message, first.witness)


def power(f: ChainMap, n: int) -> ChainMap:
    if f.source != f.target:
        raise StructureError("only endomorphisms have powers")
    out = ChainMap.identity(f.source)
    for _ in range(n):
        out = compose(f, out)
    return out


# ------------------------------------------------------------------ the cone

SHIFT_SUFFIX = "[-1]"


def shifted_name(name: str) -> str:
    return name + SHIFT_SUFFIX


def cone_component_labels(f: ChainMap) -> Dict[str, str]:
    """Merge component labels joined by a nonzero entry of ``f``.

    Returns the new label for every old label (source and target)."""
    parent: Dict[str, str] = {}

    def find(a: str) -> str:
        parent.setdefault(a, a)
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for g in f.source.generators + f.target.generators:
        find(g.component)
    for y, x in f.m:
        ra, rb = find(f.source.component(x)), find(f.target.component(y))
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)
    classes: Dict[str, List[str]] = {}
    for lab in parent:
        classes.setdefault(find(lab), []).append(lab)
    out = {}
    for members in classes.values():
        joined = "+".join(sorted(members))
        for lab in members:
            out[lab] = joined
    return out


def mapping_cone(f: ChainMap) -> GradedComplex:
    """Cone of a degree-0 chain map ``f: A -> B``.

    Underlying module ``A[-1] + B`` with ``A[-1]`` in grading ``gr + 1``.  With
    the shifted copy listed first the differential is the block matrix
    ``[[d_A, 0], [f, -d_B]]``.  Shifted generators are named ``x[-1]``.
    """
    if f.degree != 0:
        raise NotAChainMap("the cone is defined for degree-0 maps")
    require_chain_map(f)
    labels = cone_component_labels(f)
    gens = [Generator(shifted_name(g.name), g.grading + 1, labels[g.component]) for g in f.source.generators]
    taken = {g.name for g in gens}
    for g in f.target.generators:
        if g.name in taken:
            raise StructureError(f"cone name clash on {g.name!r}")
        gens.append(Generator(g.name, g.grading, labels[g.component]))
    d: Dict[Key, UPoly] = {}
    for (y, x), p in f.source.d.items():
        d[(shifted_name(y), shifted_name(x))] = p
    for (y, x), p in f.m.items():
        d[(y, shifted_name(x))] = p
    for (y, x), p in f.target.d.items():
        d[(y, x)] = -p
    return GradedComplex(gens, d)


def cone_blocks(cone: GradedComplex, source: GradedComplex, target: GradedComplex):
    """Split a cone differential into its (shifted, mixed, target, upper) blocks."""
    sh = {shifted_name(n): n for n in source.names}
    blocks = {"shifted": {}, "mixed": {}, "target": {}, "upper": {}}
    for (y, x), p in cone.d.items():
        if x in sh and y in sh:
            blocks["shifted"][(sh[y], sh[x])] = p
        elif x in sh:
            blocks["mixed"][(y, sh[x])] = p
        elif y in sh:
            blocks["upper"][(sh[y], x)] = p
        else:
            blocks["target"][(y, x)] = p
    return blocks


# ---------------------------------------------------------------- sign classes

def _canonical_sign(m: Mapping[Key, UPoly]) -> int:
    if not m:
        return 1
    k = min(m)
    return 1 if m[k].terms[0][0] > 0 else -1


class SignClass:
    """A chain map up to the relation f ~ -f."""

    __slots__ = ("representative",)

    def __init__(self, representative: ChainMap):
        self.representative = representative

    @property
    def canonical(self) -> ChainMap:
        r = self.representative
        return r if _canonical_sign(r.m) == 1 else -r

    def __eq__(self, other) -> bool:
        if not isinstance(other, SignClass):
            return NotImplemented
        a, b = self.representative, other.representative
        return a == b or a == -b

    def __hash__(self) -> int:
        return hash(self.canonical)

    def negate(self) -> "SignClass":
        return SignClass(-self.representative)

    def compose(self, after: "SignClass") -> "SignClass":
        """Class of ``after o self``."""
        return SignClass(compose(after.representative, self.representative))

    def __repr__(self) -> str:
        return f"SignClass({self.representative!r})"

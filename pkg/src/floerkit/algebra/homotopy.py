"""Chain homotopies and inverses by exact integer linear algebra.

Every unknown map is a matrix over Z[U].  Because gradings are fixed, each
entry ``(y, x)`` of an unknown map of degree ``n`` is a single monomial
``c U^k`` with ``k = (gr(y) - gr(x) - n) / 2`` (when that is a nonnegative
integer), so the unknowns are the integers ``c`` and every requirement such
as ``f - g = d h + h d`` becomes an integer linear system.
"""

from __future__ import annotations

from typing import Dict, List, Optional, Tuple

from .complexes import ChainMap, GradedComplex, PolyMatrix, compose, mat_add, mat_mul
from .intlinalg import solve_integer
from .upoly import UPoly

# a linear expression matrix: (row, col, power) -> {var index or None: coeff}
LinEntries = Dict[Tuple[str, str, int], Dict[Optional[int], int]]


class _System:
    def __init__(self):
        self.slots: List[Tuple[str, str, str, int]] = []  # (block, y, x, k)
        self.eqs: Dict[Tuple[int, str, str, int], Dict[Optional[int], int]] = {}
        self._groups = 0

    def unknown(self, block: str, source: GradedComplex, target: GradedComplex, degree: int) -> LinEntries:
        out: LinEntries = {}
        for gx in source.generators:
            for gy in target.generators:
                diff = gy.grading - gx.grading - degree
                if diff < 0 or diff % 2:
                    continue
                k = diff // 2
                v = len(self.slots)
                self.slots.append((block, gy.name, gx.name, k))
                out[(gy.name, gx.name, k)] = {v: 1}
        return out

    @staticmethod
    def known(m: PolyMatrix) -> LinEntries:
        out: LinEntries = {}
        for (y, x), p in m.items():
            for c, e in p:
                out[(y, x, e)] = {None: c}
        return out

    @staticmethod
    def left(a: PolyMatrix, X: LinEntries, sign: int = 1) -> LinEntries:
        """``a @ X``."""
        rows: Dict[str, List[Tuple[str, UPoly]]] = {}
        for (z, y), p in a.items():
            rows.setdefault(y, []).append((z, p))
        out: LinEntries = {}
        for (y, x, k), lin in X.items():
            for z, p in rows.get(y, ()):
                for c, e in p:
                    tgt = out.setdefault((z, x, k + e), {})
                    for v, w in lin.items():
                        tgt[v] = tgt.get(v, 0) + sign * c * w
        return out

    @staticmethod
    def right(X: LinEntries, b: PolyMatrix, sign: int = 1) -> LinEntries:
        """``X @ b``."""
        cols: Dict[str, List[Tuple[str, UPoly]]] = {}
        for (x, w), p in b.items():
            cols.setdefault(x, []).append((w, p))
        out: LinEntries = {}
        for (y, x, k), lin in X.items():
            for w, p in cols.get(x, ()):
                for c, e in p:
                    tgt = out.setdefault((y, w, k + e), {})
                    for v, u in lin.items():
                        tgt[v] = tgt.get(v, 0) + sign * c * u
        return out

    def require_zero(self, *parts: LinEntries, signs=None) -> None:
        """Add one matrix equation; equations from separate calls never share keys."""
        signs = signs or [1] * len(parts)
        group = self._groups
        self._groups += 1
        for part, s in zip(parts, signs):
            for key, lin in part.items():
                tgt = self.eqs.setdefault((group,) + key, {})
                for v, c in lin.items():
                    tgt[v] = tgt.get(v, 0) + s * c

    def solve(self) -> Optional[List[int]]:
        n = len(self.slots)
        rows, rhs = [], []
        for key in sorted(self.eqs):
            lin = self.eqs[key]
            if not any(c for c in lin.values()):
                continue
            row = [0] * n
            for v, c in lin.items():
                if v is not None:
                    row[v] += c
            const = lin.get(None, 0)
            if not any(row):
                if const:
                    return None
                continue
            rows.append(row)
            rhs.append(-const)
        if n == 0:
            return [] if not rows else None
        # independent blocks: equations sharing no unknowns are solved apart
        parent = list(range(n))

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        supports = []
        for row in rows:
            sup = [j for j, c in enumerate(row) if c]
            supports.append(sup)
            for j in sup[1:]:
                ra, rb = find(sup[0]), find(j)
                if ra != rb:
                    parent[ra] = rb
        blocks: Dict[int, List[int]] = {}
        for k, sup in enumerate(supports):
            blocks.setdefault(find(sup[0]), []).append(k)
        sol = [0] * n
        for eq_ids in blocks.values():
            var_ids = sorted({j for k in eq_ids for j in supports[k]})
            sub = [[rows[k][j] for j in var_ids] for k in eq_ids]
            x = solve_integer(sub, [rhs[k] for k in eq_ids], ncols=len(var_ids))
            if x is None:
                return None
            for j, v in zip(var_ids, x):
                sol[j] = v
        return sol

    def extract(self, sol: List[int], block: str) -> PolyMatrix:
        out: PolyMatrix = {}
        for v, (b, y, x, k) in enumerate(self.slots):
            if b == block and sol[v]:
                out[(y, x)] = UPoly.monomial(sol[v], k)
        return out


def null_homotopic_part(h: ChainMap, degree: int) -> ChainMap:
    """``d h + (-1)^degree h d`` for ``h`` of degree ``degree + 1``."""
    s = -1 if degree % 2 else 1
    m = mat_add(mat_mul(h.target.d, h.m), mat_mul(h.m, h.source.d), s)
    return ChainMap(h.source, h.target, m, degree)


def homotopy_witness(f: ChainMap, g: ChainMap) -> Optional[ChainMap]:
    """``h`` with ``f - g = d h + (-1)^deg h d``, or ``None`` if there is none."""
    f._check_parallel(g)
    n = f.degree
    sysm = _System()
    H = sysm.unknown("h", f.source, f.target, n + 1)
    s = -1 if n % 2 else 1
    sysm.require_zero(
        _System.left(f.target.d, H),
        _System.right(H, f.source.d, s),
        _System.known(mat_add(f.m, g.m, -1)),
        signs=[1, 1, -1],
    )
    sol = sysm.solve()
    if sol is None:
        return None
    h = ChainMap(f.source, f.target, sysm.extract(sol, "h"), n + 1)
    if null_homotopic_part(h, n) != f - g:  # soundness guard
        raise AssertionError("homotopy solver returned an invalid witness")
    return h


def homotopic(f: ChainMap, g: ChainMap) -> bool:
    return f == g or homotopy_witness(f, g) is not None


def projectively_homotopic(f: ChainMap, g: ChainMap) -> bool:
    """True iff ``f`` is homotopic to ``g`` or to ``-g``."""
    return homotopic(f, g) or homotopic(f, -g)


def strict_inverse(f: ChainMap) -> Optional[ChainMap]:
    """Two-sided inverse chain map ``g`` (``g f = id``, ``f g = id``) if one exists."""
    sysm = _System()
    G = sysm.unknown("g", f.target, f.source, -f.degree)
    ids = {(n, n): UPoly.const(1) for n in f.source.names}
    idt = {(n, n): UPoly.const(1) for n in f.target.names}
    sysm.require_zero(_System.right(G, f.m), _System.known(ids), signs=[1, -1])
    sysm.require_zero(_System.left(f.m, G), _System.known(idt), signs=[1, -1])
    sol = sysm.solve()
    if sol is None:
        return None
    return ChainMap(f.target, f.source, sysm.extract(sol, "g"), -f.degree)


def homotopy_inverse(f: ChainMap) -> Optional[Tuple[ChainMap, ChainMap, ChainMap]]:
    """``(g, h_s, h_t)`` with ``g f - id = d h_s + h_s d`` and ``f g - id = d h_t + h_t d``.

    ``g`` is required to be a chain map.  Only degree-0 maps are supported.
    """
    if f.degree != 0:
        raise ValueError("homotopy inverses are computed for degree-0 maps")
    S, T = f.source, f.target
    sysm = _System()
    G = sysm.unknown("g", T, S, 0)
    HS = sysm.unknown("hs", S, S, 1)
    HT = sysm.unknown("ht", T, T, 1)
    ids = {(n, n): UPoly.const(1) for n in S.names}
    idt = {(n, n): UPoly.const(1) for n in T.names}
    # d_S g - g d_T = 0
    sysm.require_zero(_System.left(S.d, G), _System.right(G, T.d), signs=[1, -1])
    # g f - id_S - d hs - hs d = 0
    sysm.require_zero(
        _System.right(G, f.m), _System.known(ids), _System.left(S.d, HS), _System.right(HS, S.d),
        signs=[1, -1, -1, -1],
    )
    sysm.require_zero(
        _System.left(f.m, G), _System.known(idt), _System.left(T.d, HT), _System.right(HT, T.d),
        signs=[1, -1, -1, -1],
    )
    sol = sysm.solve()
    if sol is None:
        return None
    g = ChainMap(T, S, sysm.extract(sol, "g"))
    return g, ChainMap(S, S, sysm.extract(sol, "hs"), 1), ChainMap(T, T, sysm.extract(sol, "ht"), 1)


# ------------------------------------------------------------ comparison modes

MODES = ("strict", "sign", "sign-homotopy")
_ALIASES = {
    "strict": "strict",
    "sign": "sign",
    "up-to-sign": "sign",
    "sign-homotopy": "sign-homotopy",
    "up-to-sign-and-homotopy": "sign-homotopy",
}


def normalize_mode(mode: str) -> str:
    try:
        return _ALIASES[mode]
    except KeyError:
        raise ValueError(f"unknown comparison mode {mode!r}; expected one of {MODES}") from None


def weaker_mode(a: str, b: str) -> str:
    """The more permissive of two modes."""
    a, b = normalize_mode(a), normalize_mode(b)
    return a if MODES.index(a) >= MODES.index(b) else b


def maps_agree(f: ChainMap, g: ChainMap, mode: str) -> bool:
    mode = normalize_mode(mode)
    if f == g:
        return True
    if mode == "strict":
        return False
    neg = -g
    if f == neg:
        return True
    if mode == "sign":
        return False
    return homotopy_witness(f, g) is not None or homotopy_witness(f, neg) is not None


def is_identity(f: ChainMap, mode: str) -> bool:
    if f.source != f.target:
        return False
    return maps_agree(f, ChainMap.identity(f.source), mode)


def inverse_in_mode(f: ChainMap, mode: str) -> Optional[ChainMap]:
    """A two-sided inverse of ``f`` in the given mode, or ``None``."""
    mode = normalize_mode(mode)
    if mode in ("strict", "sign"):
        return strict_inverse(f)
    out = homotopy_inverse(f)
    return None if out is None else out[0]


def composite(maps) -> ChainMap:
    """Compose a path of maps, first map first."""
    it = iter(maps)
    out = next(it)
    for m in it:
        out = compose(m, out)
    return out

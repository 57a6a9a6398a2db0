"""Exact integer linear algebra: diagonal and Smith forms, integer solving.

Matrices are plain lists of lists of Python ints.  Inputs are never mutated.

The engine is a sparse elimination over Z: pivots are chosen by smallest
absolute value and then by Markowitz cost (fill-in estimate), and every
pivot row/column is cleared by Euclidean row and column operations.  Row
operations are replayed on right-hand sides; column operations are tracked
in a sparse unimodular matrix ``Q`` so that solutions and kernels can be
read off.
"""

from __future__ import annotations

from math import gcd
from typing import Dict, List, Optional, Sequence, Tuple

Matrix = List[List[int]]


def identity(n: int) -> Matrix:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def zeros(m: int, n: int) -> Matrix:
    return [[0] * n for _ in range(m)]


def matmul(A: Sequence[Sequence[int]], B: Sequence[Sequence[int]]) -> Matrix:
    if not A:
        return []
    n = len(B[0]) if B else 0
    Bt = list(zip(*B)) if B else [()] * n
    return [[sum(a * b for a, b in zip(row, col)) for col in Bt] for row in A]


def matvec(A: Sequence[Sequence[int]], v: Sequence[int]) -> List[int]:
    return [sum(a * x for a, x in zip(row, v)) for row in A]


def _shape(A: Sequence[Sequence[int]]) -> Tuple[int, int]:
    m = len(A)
    n = len(A[0]) if m else 0
    for row in A:
        if len(row) != n:
            raise ValueError("ragged matrix")
    return m, n


class _Elimination:
    """Sparse diagonalization ``P A Q = D`` over Z."""

    def __init__(self, A: Sequence[Sequence[int]], ncols: int, rhs: Sequence[Sequence[int]] = (), track_q: bool = True):
        self.m = len(A)
        self.n = ncols
        self.rows: List[Dict[int, int]] = [{j: int(v) for j, v in enumerate(r) if v} for r in A]
        self.cols: Dict[int, set] = {j: set() for j in range(ncols)}
        for i, r in enumerate(self.rows):
            for j in r:
                self.cols[j].add(i)
        self.rhs = [list(map(int, b)) for b in rhs]
        self.track_q = track_q
        # Q stored by columns: column j -> {row index: value}
        self.Q: Dict[int, Dict[int, int]] = {j: {j: 1} for j in range(ncols)} if track_q else {}
        self.pivots: List[Tuple[int, int, int]] = []
        self.active_rows = set(range(self.m))
        self.active_cols = set(range(ncols))
        self._run()

    # elementary operations
    def _row_sub(self, i: int, r: int, q: int) -> None:
        """row_i -= q * row_r"""
        ri, rr = self.rows[i], self.rows[r]
        for j, v in rr.items():
            w = ri.get(j, 0) - q * v
            if w:
                if j not in ri:
                    self.cols[j].add(i)
                ri[j] = w
            elif j in ri:
                del ri[j]
                self.cols[j].discard(i)
        for b in self.rhs:
            if b[r]:
                b[i] -= q * b[r]

    def _col_sub(self, j: int, c: int, q: int) -> None:
        """col_j -= q * col_c"""
        for i in list(self.cols[c]):
            ri = self.rows[i]
            w = ri.get(j, 0) - q * ri[c]
            if w:
                if j not in ri:
                    self.cols[j].add(i)
                ri[j] = w
            elif j in ri:
                del ri[j]
                self.cols[j].discard(i)
        if self.track_q:
            qj, qc = self.Q[j], self.Q[c]
            for i, v in qc.items():
                w = qj.get(i, 0) - q * v
                if w:
                    qj[i] = w
                else:
                    qj.pop(i, None)

    def _choose(self) -> Optional[Tuple[int, int]]:
        best = None
        for i in self.active_rows:
            r = self.rows[i]
            if not r:
                continue
            rc = len(r) - 1
            for j, v in r.items():
                key = (abs(v) != 1, rc * (len(self.cols[j]) - 1), abs(v))
                if best is None or key < best[0]:
                    best = (key, i, j)
        return None if best is None else (best[1], best[2])

    def _run(self) -> None:
        while True:
            pick = self._choose()
            if pick is None:
                break
            r, c = pick
            while True:
                # clear column c except row r (row r may change by Euclid swaps)
                changed = True
                while changed:
                    changed = False
                    for i in list(self.cols[c]):
                        if i == r:
                            continue
                        while self.rows[i].get(c, 0):
                            q = self.rows[i][c] // self.rows[r][c]
                            self._row_sub(i, r, q)
                            if self.rows[i].get(c, 0):
                                r, i = i, r
                                changed = True
                # clear row r except column c
                clean = True
                for j in list(self.rows[r]):
                    if j == c:
                        continue
                    while self.rows[r].get(j, 0):
                        q = self.rows[r][j] // self.rows[r][c]
                        self._col_sub(j, c, q)
                        if self.rows[r].get(j, 0):
                            c, j = j, c
                            clean = False
                if clean and self.cols[c] == {r}:
                    break
            self.pivots.append((r, c, self.rows[r][c]))
            self.active_rows.discard(r)
            self.active_cols.discard(c)
            # retire the pivot row and column so they are never touched again
            del self.rows[r][c]
            self.cols[c].discard(r)
            self.rows[r] = {}

    # results
    def diagonal(self) -> List[int]:
        return [abs(v) for _, _, v in self.pivots]

    def q_column(self, j: int) -> List[int]:
        out = [0] * self.n
        for i, v in self.Q[j].items():
            out[i] = v
        return out


def diagonal_form(A: Sequence[Sequence[int]], ncols: Optional[int] = None) -> Tuple[List[int], Matrix, Matrix]:
    """Return ``(d, P, Q)`` with ``P @ A @ Q`` diagonal with entries ``d`` (positive).

    Dense ``P`` and ``Q`` are materialized; prefer :func:`invariant_factors`,
    :func:`solve_integer` or :func:`integer_kernel` for large inputs.
    """
    m, n = _shape(A)
    if m == 0 and ncols is not None:
        n = ncols
    el = _Elimination(A, n, rhs=[[1 if i == k else 0 for i in range(m)] for k in range(m)])
    # P rows: the k-th column of the replayed identity gives P[:, k]
    Pfull = [[el.rhs[k][i] for k in range(m)] for i in range(m)]
    order_r = [r for r, _, _ in el.pivots]
    order_c = [c for _, c, _ in el.pivots]
    rest_r = [i for i in range(m) if i not in set(order_r)]
    rest_c = [j for j in range(n) if j not in set(order_c)]
    P = [Pfull[i] for i in order_r + rest_r]
    signs = [1 if v > 0 else -1 for _, _, v in el.pivots]
    for k, s in enumerate(signs):
        if s < 0:
            P[k] = [-x for x in P[k]]
    Qcols = [el.q_column(j) for j in order_c + rest_c]
    Q = [[Qcols[j][i] for j in range(n)] for i in range(n)]
    return el.diagonal(), P, Q


def invariant_factors(A: Sequence[Sequence[int]]) -> List[int]:
    """Nonzero Smith invariant factors of ``A`` (each divides the next)."""
    m, n = _shape(A)
    el = _Elimination(A, n, track_q=False)
    return _to_divisibility_chain(el.diagonal())


def _to_divisibility_chain(d: Sequence[int]) -> List[int]:
    d = sorted(abs(x) for x in d)
    r = len(d)
    for i in range(r):
        for j in range(i + 1, r):
            g = gcd(d[i], d[j])
            if g != d[i]:
                d[i], d[j] = g, d[i] * d[j] // g
    return d


def smith_normal_form(A: Sequence[Sequence[int]]) -> Matrix:
    m, n = _shape(A)
    D = zeros(m, n)
    for i, v in enumerate(invariant_factors(A)):
        D[i][i] = v
    return D


def rank(A: Sequence[Sequence[int]]) -> int:
    m, n = _shape(A)
    return len(_Elimination(A, n, track_q=False).pivots)


def solve_integer(A: Sequence[Sequence[int]], b: Sequence[int], ncols: Optional[int] = None) -> Optional[List[int]]:
    """An integer solution of ``A x = b``, or ``None`` when none exists."""
    m, n = _shape(A)
    if m == 0:
        n = ncols if ncols is not None else n
        return [0] * n
    if len(b) != m:
        raise ValueError("right-hand side has wrong length")
    el = _Elimination(A, n, rhs=[b])
    pb = el.rhs[0]
    pivot_rows = set()
    x = [0] * n
    for r, c, v in el.pivots:
        pivot_rows.add(r)
        q, rem = divmod(pb[r], v)
        if rem:
            return None
        if q:
            for i, w in el.Q[c].items():
                x[i] += q * w
    if any(pb[i] for i in range(m) if i not in pivot_rows):
        return None
    return x


def integer_kernel(A: Sequence[Sequence[int]], ncols: Optional[int] = None) -> Matrix:
    """Basis (as a list of vectors) of the integer kernel of ``A``."""
    m, n = _shape(A)
    if m == 0:
        n = ncols if ncols is not None else n
        return identity(n)
    el = _Elimination(A, n)
    used = {c for _, c, _ in el.pivots}
    return [el.q_column(j) for j in range(n) if j not in used]


def inverse_unimodular(A: Sequence[Sequence[int]]) -> Optional[Matrix]:
    """Integer inverse of a square matrix, or ``None`` if it is not invertible over Z."""
    m, n = _shape(A)
    if m != n:
        raise ValueError("not square")
    if n == 0:
        return []
    cols = []
    for k in range(n):
        e = [1 if i == k else 0 for i in range(n)]
        x = solve_integer(A, e)
        if x is None:
            return None
        cols.append(x)
    return [[cols[j][i] for j in range(n)] for i in range(n)]

"""Integer polynomials in the formal variable U.

A ``UPoly`` is stored as a tuple of ``(coefficient, exponent)`` pairs with
strictly increasing exponents and no zero coefficients.  The zero polynomial
is the empty tuple.  Instances are immutable and hashable.
"""

from __future__ import annotations

from typing import Iterable, Iterator, Tuple, Union

Term = Tuple[int, int]


class UPoly:
    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Iterable[Term] = ()):
        acc: dict[int, int] = {}
        for c, e in terms:
            c, e = int(c), int(e)
            if e < 0:
                raise ValueError(f"negative U-exponent {e}")
            if c:
                acc[e] = acc.get(e, 0) + c
        self._terms: Tuple[Term, ...] = tuple(
            (acc[e], e) for e in sorted(acc) if acc[e]
        )
        self._hash = None

    # construction helpers
    @classmethod
    def const(cls, c: int) -> "UPoly":
        return cls(((c, 0),))

    @classmethod
    def monomial(cls, c: int, e: int) -> "UPoly":
        return cls(((c, e),))

    @classmethod
    def coerce(cls, x: "PolyLike") -> "UPoly":
        if isinstance(x, UPoly):
            return x
        if isinstance(x, int):
            return cls.const(x)
        return cls(x)

    # accessors
    @property
    def terms(self) -> Tuple[Term, ...]:
        return self._terms

    def __iter__(self) -> Iterator[Term]:
        return iter(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def coeff(self, e: int) -> int:
        for c, k in self._terms:
            if k == e:
                return c
        return 0

    def constant_term(self) -> int:
        return self.coeff(0)

    @property
    def degree(self) -> int:
        """Largest exponent; -1 for the zero polynomial."""
        return self._terms[-1][1] if self._terms else -1

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def is_unit(self) -> bool:
        """True for +1 and -1, the only units of Z[U]."""
        return len(self._terms) == 1 and self._terms[0][1] == 0 and abs(self._terms[0][0]) == 1

    def exponents(self) -> Tuple[int, ...]:
        return tuple(e for _, e in self._terms)

    # ring operations
    def __add__(self, other: "PolyLike") -> "UPoly":
        other = UPoly.coerce(other)
        return UPoly(self._terms + other._terms)

    __radd__ = __add__

    def __neg__(self) -> "UPoly":
        return UPoly((-c, e) for c, e in self._terms)

    def __sub__(self, other: "PolyLike") -> "UPoly":
        return self + (-UPoly.coerce(other))

    def __rsub__(self, other: "PolyLike") -> "UPoly":
        return UPoly.coerce(other) - self

    def __mul__(self, other: "PolyLike") -> "UPoly":
        other = UPoly.coerce(other)
        return UPoly(
            (a * b, e + f) for a, e in self._terms for b, f in other._terms
        )

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "UPoly":
        if n < 0:
            raise ValueError("negative power")
        out = UPoly.const(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def truncate(self, t: int) -> "UPoly":
        """Reduce modulo U^t."""
        return UPoly((c, e) for c, e in self._terms if e < t)

    def shift(self, k: int) -> "UPoly":
        """Multiply by U^k."""
        return UPoly((c, e + k) for c, e in self._terms)

    def __call__(self, u: int) -> int:
        return sum(c * u ** e for c, e in self._terms)

    # comparison / hashing
    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = UPoly.const(other)
        if not isinstance(other, UPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self._terms)
        return self._hash

    def __repr__(self) -> str:
        return f"UPoly({list(self._terms)!r})"

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for c, e in self._terms:
            if e == 0:
                mono = str(abs(c))
            else:
                u = "U" if e == 1 else f"U^{e}"
                mono = u if abs(c) == 1 else f"{abs(c)}{u}"
            parts.append(("-" if c < 0 else "+", mono))
        head_sign, head = parts[0]
        s = ("-" if head_sign == "-" else "") + head
        for sign, mono in parts[1:]:
            s += f" {sign} {mono}"
        return s

    def to_json(self) -> list:
        return [[c, e] for c, e in self._terms]


PolyLike = Union[UPoly, int, Iterable[Term]]

ZERO = UPoly()
ONE = UPoly.const(1)
U = UPoly.monomial(1, 1)

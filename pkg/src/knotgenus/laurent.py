"""Integer Laurent polynomials in one variable t.

All arithmetic is exact. The canonical Alexander normalization used
throughout the package is: exponent span symmetric about zero and positive
coefficient at the top exponent. Serialized form is ``e1:c1;e2:c2;...`` with
exponents strictly increasing and zero coefficients omitted.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Union

Coeff = int
Scalar = Union[int, Fraction]

__all__ = ["Laurent", "ZERO", "ONE", "T", "parse_laurent", "laurent_det"]


class Laurent:
    """Immutable Laurent polynomial with integer coefficients."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Union[Mapping[int, int], Iterable[tuple[int, int]]] = ()):
        if isinstance(terms, Mapping):
            items = terms.items()
        else:
            items = terms
        acc: dict[int, int] = {}
        for e, c in items:
            if not isinstance(e, int) or not isinstance(c, int):
                raise TypeError("exponents and coefficients must be ints")
            acc[e] = acc.get(e, 0) + c
        self._terms: tuple[tuple[int, int], ...] = tuple(
            sorted((e, c) for e, c in acc.items() if c != 0)
        )

    # -- basic structure ---------------------------------------------------

    @property
    def terms(self) -> tuple[tuple[int, int], ...]:
        return self._terms

    def is_zero(self) -> bool:
        return not self._terms

    @property
    def min_exp(self) -> int:
        if not self._terms:
            raise ValueError("zero polynomial has no exponent range")
        return self._terms[0][0]

    @property
    def max_exp(self) -> int:
        if not self._terms:
            raise ValueError("zero polynomial has no exponent range")
        return self._terms[-1][0]

    def coeff(self, e: int) -> int:
        for ee, c in self._terms:
            if ee == e:
                return c
        return 0

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = Laurent({0: other})
        if not isinstance(other, Laurent):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        return hash(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    # -- ring operations ---------------------------------------------------

    def __add__(self, other: Union["Laurent", int]) -> "Laurent":
        if isinstance(other, int):
            other = Laurent({0: other})
        if not isinstance(other, Laurent):
            return NotImplemented
        acc = dict(self._terms)
        for e, c in other._terms:
            acc[e] = acc.get(e, 0) + c
        return Laurent(acc)

    __radd__ = __add__

    def __neg__(self) -> "Laurent":
        return Laurent({e: -c for e, c in self._terms})

    def __sub__(self, other: Union["Laurent", int]) -> "Laurent":
        if isinstance(other, int):
            other = Laurent({0: other})
        if not isinstance(other, Laurent):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: Union["Laurent", int]) -> "Laurent":
        return (-self) + other

    def __mul__(self, other: Union["Laurent", int]) -> "Laurent":
        if isinstance(other, int):
            other = Laurent({0: other})
        if not isinstance(other, Laurent):
            return NotImplemented
        acc: dict[int, int] = {}
        for e1, c1 in self._terms:
            for e2, c2 in other._terms:
                e = e1 + e2
                acc[e] = acc.get(e, 0) + c1 * c2
        return Laurent(acc)

    __rmul__ = __mul__

    def shifted(self, k: int) -> "Laurent":
        """Multiply by t**k."""
        return Laurent({e + k: c for e, c in self._terms})

    def reciprocal(self) -> "Laurent":
        """Substitute t -> 1/t."""
        return Laurent({-e: c for e, c in self._terms})

    # -- evaluation --------------------------------------------------------

    def __call__(self, value: Scalar) -> Scalar:
        """Evaluate exactly at a nonzero rational point."""
        if value == 0:
            raise ZeroDivisionError("Laurent polynomials cannot be evaluated at 0")
        total: Scalar = 0
        for e, c in self._terms:
            if e >= 0:
                total += c * value**e
            else:
                total += Fraction(c, 1) / Fraction(value) ** (-e)
        return total

    # -- Alexander-style normalization ------------------------------------

    def normalized(self) -> "Laurent":
        """Center the exponent span on zero and make the top coefficient positive.

        The span must have even breadth, which holds for every determinant
        det(V - t V^T) of a Seifert matrix and every Wirtinger minor after
        stripping t-units.
        """
        if not self._terms:
            return self
        lo, hi = self.min_exp, self.max_exp
        if (lo + hi) % 2 != 0:
            raise ValueError(f"span [{lo},{hi}] cannot be centered on 0")
        p = self.shifted(-(lo + hi) // 2)
        if p._terms[-1][1] < 0:
            p = -p
        return p

    def is_palindromic(self) -> bool:
        return self.normalized() == self.normalized().reciprocal()

    def compact_coeffs(self) -> tuple[int, ...]:
        """Write a palindromic normalized f(t) as g(t + 1/t); return g's coefficients.

        Index k of the result is the coefficient of x**k. Unit-circle roots
        t = exp(i*theta) of f correspond to real roots x = 2*cos(theta) of g
        in [-2, 2].
        """
        p = self.normalized()
        if p.is_zero():
            return ()
        if p != p.reciprocal():
            raise ValueError("not palindromic; no compact form")
        m = p.max_exp
        # t^k + t^-k = P_k(x) with P_0 = 2, P_1 = x, P_{k+1} = x P_k - P_{k-1}
        pk_prev = [2]
        pk = [0, 1]
        g = [0] * (m + 1)
        g[0] += p.coeff(0)
        for k in range(1, m + 1):
            ck = p.coeff(k)
            if ck:
                for i, a in enumerate(pk if k > 0 else pk_prev):
                    g[i] += ck * a
            if k < m:
                nxt = [0] + pk
                for i, a in enumerate(pk_prev):
                    nxt[i] -= a
                pk_prev, pk = pk, nxt
        while len(g) > 1 and g[-1] == 0:
            g.pop()
        return tuple(g)

    # -- serialization -----------------------------------------------------

    def serialize(self) -> str:
        return ";".join(f"{e}:{c}" for e, c in self._terms)

    def __repr__(self) -> str:
        if not self._terms:
            return "Laurent(0)"
        parts = []
        for e, c in self._terms:
            if e == 0:
                parts.append(f"{c:+d}")
            elif e == 1:
                parts.append(f"{c:+d}*t")
            else:
                parts.append(f"{c:+d}*t^{e}")
        return "Laurent(" + " ".join(parts) + ")"


def laurent_det(rows: list[list[Laurent]]) -> Laurent:
    """Determinant of a square matrix of Laurent polynomials.

    Expansion along rows with memoization on the unused-column mask; fine
    for the small matrices that arise from genus-size Seifert data.
    """
    n = len(rows)
    if n == 0:
        return ONE
    if any(len(r) != n for r in rows):
        raise ValueError("matrix is not square")
    memo: dict[int, Laurent] = {}

    def minor(i: int, colmask: int) -> Laurent:
        if colmask == 0:
            return ONE
        cached = memo.get(colmask)
        if cached is not None:
            return cached
        total = ZERO
        sign = 1
        for j in range(n):
            if not (colmask >> j) & 1:
                continue
            e = rows[i][j]
            if e:
                term = e * minor(i + 1, colmask & ~(1 << j))
                total = total + (term if sign > 0 else -term)
            sign = -sign
        memo[colmask] = total
        return total

    return minor(0, (1 << n) - 1)


def parse_laurent(text: str) -> Laurent:
    """Inverse of :meth:`Laurent.serialize`. Empty string parses to zero."""
    text = text.strip()
    if not text:
        return ZERO
    acc: dict[int, int] = {}
    for chunk in text.split(";"):
        chunk = chunk.strip()
        if not chunk:
            continue
        try:
            e_s, c_s = chunk.split(":")
            e, c = int(e_s), int(c_s)
        except ValueError as exc:
            raise ValueError(f"bad Laurent term {chunk!r}") from exc
        if e in acc:
            raise ValueError(f"duplicate exponent {e}")
        acc[e] = c
    return Laurent(acc)


ZERO = Laurent()
ONE = Laurent({0: 1})
T = Laurent({1: 1})

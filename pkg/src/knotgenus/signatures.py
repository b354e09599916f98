"""Exact signature computations for Seifert forms.

The ordinary signature is the signature of V + V^T. The equivariant
refinement evaluates, for a unit modulus parameter w distinct from 1, the
Hermitian form (1-w)V + (1-conj(w))V^T. Writing x = w + conj(w), that form
is congruent over the reals to the rational symmetric block matrix

    [[ (1-x/2) S,    A        ]
     [   -A,     (1-x/2) S / D ]]      S = V+V^T, A = V-V^T, D = 1-x^2/4

whose signature is twice the Hermitian one, so every sample at rational x
is computed in exact Fraction arithmetic. The step profile over the unit
circle is produced by isolating the real roots of the compact Alexander
form in (-2, 2) with Sturm chains and sampling once per gap.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

import mpmath

from knotgenus.laurent import Laurent, laurent_det

__all__ = [
    "signature_symmetric",
    "hermitian_signature_at",
    "LTProfile",
    "lt_profile",
    "lt_at_order",
    "lt_supremum",
    "alexander_from_seifert",
]

Matrix = Sequence[Sequence[int]]


def signature_symmetric(rows) -> int:
    """Signature of a symmetric matrix over the rationals, exactly.

    Recursive congruence reduction: split off nonzero diagonal entries,
    and when the whole remaining diagonal vanishes split off a hyperbolic
    pair, which contributes zero.
    """
    A = [[Fraction(x) for x in row] for row in rows]
    for i, row in enumerate(A):
        if len(row) != len(A):
            raise ValueError("matrix is not square")
        for j in range(i):
            if A[i][j] != A[j][i]:
                raise ValueError("matrix is not symmetric")
    return _signature_core(A)


def _signature_core(A) -> int:
    """Shared reduction loop; entries need field arithmetic and order vs 0."""
    sig = 0
    while A:
        n = len(A)
        p = next((i for i in range(n) if A[i][i] != 0), None)
        if p is not None:
            A[0], A[p] = A[p], A[0]
            for r in range(n):
                A[r][0], A[r][p] = A[r][p], A[r][0]
            d = A[0][0]
            sig += 1 if d > 0 else -1
            A = [
                [A[i][j] - A[i][0] * A[0][j] / d for j in range(1, n)]
                for i in range(1, n)
            ]
            continue
        found = None
        for i in range(n):
            for j in range(i + 1, n):
                if A[i][j] != 0:
                    found = (i, j)
                    break
            if found:
                break
        if found is None:
            break  # zero block: degenerate directions contribute nothing
        i, j = found  # i < j, so j never collides with the first swap
        if i != 0:
            A[0], A[i] = A[i], A[0]
            for r in range(n):
                A[r][0], A[r][i] = A[r][i], A[r][0]
        if j != 1:
            A[1], A[j] = A[j], A[1]
            for r in range(n):
                A[r][1], A[r][j] = A[r][j], A[r][1]
        a = A[0][1]
        A = [
            [
                A[r][c] - (A[r][0] * A[1][c] + A[r][1] * A[0][c]) / a
                for c in range(2, n)
            ]
            for r in range(2, n)
        ]
    return sig


def _sym_skew(V: Matrix):
    n = len(V)
    S = [[V[i][j] + V[j][i] for j in range(n)] for i in range(n)]
    A = [[V[i][j] - V[j][i] for j in range(n)] for i in range(n)]
    return S, A


def hermitian_signature_at(V: Matrix, x: Fraction) -> int:
    """Signature of the equivariant form at the point with w + conj(w) = x.

    Accepts -2 <= x < 2; the endpoint x = -2 is the ordinary signature. At
    a root of the Alexander polynomial the form degenerates and the value
    returned is the signature of the nondegenerate part.
    """
    x = Fraction(x)
    if not -2 <= x < 2:
        raise ValueError("x must lie in [-2, 2)")
    n = len(V)
    if n == 0:
        return 0
    S, A = _sym_skew(V)
    if x == -2:
        return signature_symmetric(S)
    c = 1 - x / 2
    D = 1 - x * x / 4
    top = [[c * S[i][j] for j in range(n)] + [A[i][j] for j in range(n)] for i in range(n)]
    bot = [[-A[i][j] for j in range(n)] + [c * S[i][j] / D for j in range(n)] for i in range(n)]
    sig2 = signature_symmetric(top + bot)
    assert sig2 % 2 == 0
    return sig2 // 2


def alexander_from_seifert(V: Matrix) -> Laurent:
    """det(V - t V^T), in the symmetric positive-top normalization."""
    n = len(V)
    t = Laurent({1: 1})
    rows = [
        [Laurent({0: V[i][j]}) - t * Laurent({0: V[j][i]}) for j in range(n)]
        for i in range(n)
    ]
    return laurent_det(rows).normalized()


# -- real root isolation ---------------------------------------------------


def _poly_eval(p: Sequence[Fraction], x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(p):
        acc = acc * x + c
    return acc


def _poly_norm(p):
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def _poly_rem(a, b):
    a = _poly_norm(list(a))
    while len(a) >= len(b):
        f = a[-1] / b[-1]
        off = len(a) - len(b)
        for i in range(len(b)):
            a[off + i] -= f * b[i]
        a = _poly_norm(a)
    return a


def _poly_div_exact(a, b):
    a = list(a)
    q = [Fraction(0)] * (len(a) - len(b) + 1)
    while len(a) >= len(b) and any(a):
        f = a[-1] / b[-1]
        q[len(a) - len(b)] = f
        off = len(a) - len(b)
        for i in range(len(b)):
            a[off + i] -= f * b[i]
        a = _poly_norm(a)
    if any(a):
        raise ValueError("not divisible")
    return _poly_norm(q)


def _poly_gcd(a, b):
    a, b = _poly_norm(a), _poly_norm(b)
    while b:
        a, b = b, _poly_rem(a, b)
    if a:
        lead = a[-1]
        a = [c / lead for c in a]
    return a


def _sturm_chain(p):
    d = [c * (i + 1) for i, c in enumerate(p[1:])]
    chain = [list(p), _poly_norm(d)]
    while chain[-1]:
        r = _poly_rem(chain[-2], chain[-1])
        if not r:
            break
        chain.append([-c for c in r])
    return [c for c in chain if c]


def _variations(chain, x: Fraction) -> int:
    signs = []
    for p in chain:
        v = _poly_eval(p, x)
        if v != 0:
            signs.append(1 if v > 0 else -1)
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def _count_roots(chain, lo: Fraction, hi: Fraction) -> int:
    """Distinct real roots in (lo, hi]; endpoints must not be roots of chain[0]."""
    return _variations(chain, lo) - _variations(chain, hi)


def isolate_unit_circle_roots(alex: Laurent) -> list[tuple[Fraction, Fraction]]:
    """Disjoint open rational brackets, one per distinct root of the compact
    Alexander form in (-2, 2), ordered left to right; bracket endpoints are
    never roots."""
    g = [Fraction(c) for c in alex.compact_coeffs()]
    if len(g) <= 1:
        return []
    sf = _poly_div_exact(g, _poly_gcd(g, _poly_norm([c * (i + 1) for i, c in enumerate(g[1:])])))
    chain = _sturm_chain(sf)

    def val(x):
        return _poly_eval(sf, x)

    def pick_non_root(a, b):
        # rational in (a, b) that is not a root of sf
        x = (a + b) / 2
        while val(x) == 0:
            x = (a + x) / 2
        return x

    lo, hi = Fraction(-2), Fraction(2)
    # endpoints of the scan must not be roots: -2 and 2 are never roots of
    # the compact form of a knot polynomial (the determinant is odd and
    # the value at 1 is a unit), but nudge defensively if they are
    while val(lo) == 0:
        lo = lo + Fraction(1, 1000)
    while val(hi) == 0:
        hi = hi - Fraction(1, 1000)

    out: list[tuple[Fraction, Fraction]] = []

    def split(a, b, k):
        if k == 0:
            return
        if k == 1:
            out.append((a, b))
            return
        m = pick_non_root(a, b)
        ka = _count_roots(chain, a, m)
        split(a, m, ka)
        split(m, b, k - ka)

    split(lo, hi, _count_roots(chain, lo, hi))

    eps = Fraction(1, 16)
    tight = [
        _refine(
            br,
            sf,
            chain,
            lambda a, b: b - a <= eps and a > Fraction(-2) and b < Fraction(2),
        )
        for br in out
    ]
    # brackets produced by splitting can share endpoints; separate them
    changed = True
    while changed:
        changed = False
        for i in range(len(tight) - 1):
            if tight[i][1] >= tight[i + 1][0]:
                for k in (i, i + 1):
                    w = (tight[k][1] - tight[k][0]) / 2
                    tight[k] = _refine(
                        tight[k], sf, chain, lambda a, b, w=w: b - a <= w
                    )
                changed = True
    return tight


def _refine(bracket, sf, chain, keep_out: Callable[[Fraction, Fraction], bool]):
    """Shrink a one-root bracket until keep_out(endpoints) is satisfied."""
    a, b = bracket
    for _ in range(400):
        if keep_out(a, b):
            return a, b
        for den in (2, 3, 5, 7, 11):
            m = a + (b - a) / den
            if _poly_eval(sf, m) != 0:
                break
        else:
            raise ArithmeticError("no non-root split point found")
        if _count_roots(chain, a, m) == 1:
            b = m
        else:
            a = m
    raise ArithmeticError("bracket refinement stalled")


@dataclass(frozen=True)
class LTProfile:
    """Step profile of the equivariant signature over x = w + conj(w).

    ``brackets[i]`` encloses the i-th distinct unit-circle root of the
    Alexander polynomial; ``values[i]`` is the constant signature on the
    open gap to the left of root i, and ``values[-1]`` the gap reaching
    x = 2. ``values[0]`` therefore includes w = -1, the ordinary signature.
    """

    brackets: tuple[tuple[Fraction, Fraction], ...]
    values: tuple[int, ...]

    def max_abs(self) -> int:
        return max(abs(v) for v in self.values)

    def signature(self) -> int:
        return self.values[0]


def lt_profile(V: Matrix) -> LTProfile:
    if len(V) == 0:
        return LTProfile(brackets=(), values=(0,))
    alex = alexander_from_seifert(V)
    brackets = isolate_unit_circle_roots(alex)
    samples: list[Fraction] = []
    if not brackets:
        samples.append(Fraction(-2))
    else:
        samples.append(brackets[0][0])
        for _, b in brackets:
            samples.append(b)
    values = tuple(hermitian_signature_at(V, x) for x in samples)
    return LTProfile(brackets=tuple(brackets), values=values)


# -- evaluation at roots of unity -----------------------------------------


def _cyclotomic(N: int) -> list[int]:
    polys: dict[int, list[int]] = {}
    for m in range(1, N + 1):
        if N % m:
            continue
        num = [0] * (m + 1)
        num[0], num[m] = -1, 1
        for d, pd in polys.items():
            if m % d == 0:
                q = [0] * (len(num) - len(pd) + 1)
                rem = list(num)
                for k in range(len(q) - 1, -1, -1):
                    c = rem[k + len(pd) - 1] // pd[-1]
                    q[k] = c
                    for i2, coeff in enumerate(pd):
                        rem[k + i2] -= c * coeff
                num = q
        polys[m] = num
    return polys[N]


def _compact_cyclotomic(N: int) -> list[Fraction]:
    """Minimal polynomial of 2 cos(2 pi / N) for N >= 3."""
    phi = _cyclotomic(N)
    deg = len(phi) - 1
    half = deg // 2
    lau = Laurent({e - half: c for e, c in enumerate(phi)})
    return [Fraction(c) for c in lau.compact_coeffs()]


def _side_of(N: int, r: Fraction) -> int:
    """Sign of 2 cos(2 pi / N) - r for rational r, by precision ramping.

    Only called when the difference is nonzero; 2 cos(2 pi / N) is rational
    just for N in {1, 2, 3, 4, 6}, which are handled exactly elsewhere.
    """
    for prec in (64, 128, 256, 512, 1024, 4096):
        with mpmath.workprec(prec):
            v = 2 * mpmath.cos(2 * mpmath.pi / N) - mpmath.mpf(r.numerator) / mpmath.mpf(
                r.denominator
            )
            if abs(v) > mpmath.mpf(2) ** (16 - prec):
                return 1 if v > 0 else -1
    raise ArithmeticError(f"could not separate 2cos(2pi/{N}) from {r}")


_RATIONAL_X = {2: Fraction(-2), 3: Fraction(-1), 4: Fraction(0), 6: Fraction(1)}


def _poly_divmod(a, b):
    a = _poly_norm(list(a))
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    while len(a) >= len(b):
        f = a[-1] / b[-1]
        q[len(a) - len(b)] = f
        off = len(a) - len(b)
        for i in range(len(b)):
            a[off + i] -= f * b[i]
        a = _poly_norm(a)
    return _poly_norm(q), a


class _CyclotomicField:
    """Exact arithmetic in Q[x]/(psi_N), embedded at x = 2 cos(2 pi / N)."""

    def __init__(self, N: int):
        psi = _compact_cyclotomic(N)
        lead = psi[-1]
        self.psi = [c / lead for c in psi]
        self.deg = len(psi) - 1
        self.N = N

    def element(self, coeffs) -> "_AlgebraicNumber":
        co = list(coeffs) + [Fraction(0)] * self.deg
        return _AlgebraicNumber(self, tuple(Fraction(c) for c in co[: self.deg]))

    def const(self, q) -> "_AlgebraicNumber":
        return self.element([q])

    def gen(self) -> "_AlgebraicNumber":
        return self.element([0, 1])

    def reduce(self, p: list[Fraction]) -> tuple[Fraction, ...]:
        for i in range(len(p) - 1, self.deg - 1, -1):
            f = p[i]
            if f:
                off = i - self.deg
                for k in range(self.deg + 1):
                    p[off + k] -= f * self.psi[k]
        p = p[: self.deg] + [Fraction(0)] * (self.deg - len(p))
        return tuple(p[: self.deg])

    def sign_at_root(self, co: tuple[Fraction, ...]) -> int:
        """Certified sign of sum co[i] * x^i at the embedded root; nonzero
        input only (psi is a minimal polynomial, so nonzero elements do not
        vanish at the root)."""
        scale = max(float(abs(c)) for c in co) * (2.0 ** self.deg) + 1.0
        for prec in (64, 128, 256, 512, 1024, 4096):
            with mpmath.workprec(prec):
                x = 2 * mpmath.cos(2 * mpmath.pi / self.N)
                acc = mpmath.mpf(0)
                for c in reversed(co):
                    acc = acc * x + mpmath.mpf(c.numerator) / mpmath.mpf(c.denominator)
                if abs(acc) > scale * mpmath.mpf(2) ** (16 - prec):
                    return 1 if acc > 0 else -1
        raise ArithmeticError("could not certify the sign of an algebraic number")


class _AlgebraicNumber:
    __slots__ = ("field", "co")

    def __init__(self, field: _CyclotomicField, co: tuple[Fraction, ...]):
        self.field = field
        self.co = co

    def __add__(self, other):
        return _AlgebraicNumber(
            self.field, tuple(a + b for a, b in zip(self.co, other.co))
        )

    def __sub__(self, other):
        return _AlgebraicNumber(
            self.field, tuple(a - b for a, b in zip(self.co, other.co))
        )

    def __mul__(self, other):
        d = self.field.deg
        prod = [Fraction(0)] * (2 * d - 1)
        for i, a in enumerate(self.co):
            if a:
                for j, b in enumerate(other.co):
                    if b:
                        prod[i + j] += a * b
        return _AlgebraicNumber(self.field, self.field.reduce(prod))

    def __truediv__(self, other):
        return self * other._inverse()

    def _inverse(self) -> "_AlgebraicNumber":
        # extended euclid against psi; psi irreducible so the gcd is a unit
        a, b = _poly_norm(list(self.co)), list(self.field.psi)
        ua: list[Fraction] = [Fraction(1)]
        ub: list[Fraction] = []
        if not a:
            raise ZeroDivisionError("inverse of zero")
        while b:
            q, r = _poly_divmod(a, b)
            # u_r = ua - q * ub
            qb = [Fraction(0)] * (len(q) + len(ub) - 1) if q and ub else []
            for i, qc in enumerate(q):
                for j, uc in enumerate(ub):
                    qb[i + j] += qc * uc
            ur = [
                (ua[i] if i < len(ua) else Fraction(0))
                - (qb[i] if i < len(qb) else Fraction(0))
                for i in range(max(len(ua), len(qb), 1))
            ]
            a, b, ua, ub = b, r, ub, _poly_norm(ur)
        if len(a) != 1:
            raise ArithmeticError("modulus is not irreducible over this element")
        inv = [c / a[0] for c in ua]
        return self.field.element(self.field.reduce(inv + [Fraction(0)]))

    def _sign(self) -> int:
        if not any(self.co):
            return 0
        return self.field.sign_at_root(self.co)

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            if other == 0:
                return not any(self.co)
            return self.co == self.field.const(other).co
        if isinstance(other, _AlgebraicNumber):
            return self.co == other.co
        return NotImplemented

    def __gt__(self, other) -> bool:
        assert other == 0
        return self._sign() > 0

    def __lt__(self, other) -> bool:
        assert other == 0
        return self._sign() < 0


def _hermitian_at_cyclotomic(V: Matrix, N: int) -> int:
    """Equivariant signature exactly at x = 2 cos(2 pi / N), including the
    degenerate case where the Alexander polynomial vanishes there."""
    F = _CyclotomicField(N)
    x = F.gen()
    one = F.const(1)
    c = one - x * F.const(Fraction(1, 2))
    Dinv = one / (one - x * x * F.const(Fraction(1, 4)))
    S, A = _sym_skew(V)
    n = len(V)
    cS = [[c * F.const(S[i][j]) for j in range(n)] for i in range(n)]
    top = [cS[i] + [F.const(A[i][j]) for j in range(n)] for i in range(n)]
    bot = [
        [F.const(-A[i][j]) for j in range(n)] + [cS[i][j] * Dinv for j in range(n)]
        for i in range(n)
    ]
    sig2 = _signature_core(top + bot)
    assert sig2 % 2 == 0
    return sig2 // 2


def lt_at_order(V: Matrix, N: int) -> int:
    """Equivariant signature at the primitive N-th root of unity, N >= 2.

    At a root of the Alexander polynomial this is the genuine value of the
    (degenerate) form at that point, not a limit from either side.
    """
    if N < 2:
        raise ValueError("order must be at least 2")
    if len(V) == 0:
        return 0
    if N in _RATIONAL_X:
        return hermitian_signature_at(V, _RATIONAL_X[N])
    alex = alexander_from_seifert(V)
    g = [Fraction(c) for c in alex.compact_coeffs()]
    psi = _compact_cyclotomic(N)
    if len(g) > 1 and not _poly_rem(g, psi):
        return _hermitian_at_cyclotomic(V, N)
    brackets = isolate_unit_circle_roots(alex)
    if not brackets:
        return hermitian_signature_at(V, Fraction(-2))
    # the evaluation point is not a root, so it lies in one of the open
    # gaps; shrink each bracket until the point clears it, then sample at
    # a rational point of the same gap
    g_sf = _poly_div_exact(
        g, _poly_gcd(g, _poly_norm([c * (i + 1) for i, c in enumerate(g[1:])]))
    )
    chain = _sturm_chain(g_sf)
    left = Fraction(-2)
    for a, b in brackets:
        a2, b2 = _refine(
            (a, b),
            g_sf,
            chain,
            lambda lo2, hi2: _side_of(N, lo2) < 0 or _side_of(N, hi2) > 0,
        )
        if _side_of(N, a2) < 0:
            return hermitian_signature_at(V, a2)
        left = b2
    return hermitian_signature_at(V, left)


def lt_supremum(V: Matrix) -> int:
    """Largest |equivariant signature| over the unit circle, 1 excluded.

    Away from Alexander roots the function is locally constant, so the gap
    values of the profile cover all but finitely many points.  At a root
    the value can exceed both neighbouring gaps, so every root of unity
    the Alexander polynomial vanishes at is sampled as well.  Roots at
    irrational angles that are not roots of unity are not sampled; if any
    exist the result is still a valid lower bound for the supremum.
    """
    if len(V) == 0:
        return 0
    best = lt_profile(V).max_abs()
    delta = alexander_from_seifert(V)
    coeffs = [Fraction(delta.coeff(e)) for e in range(delta.min_exp, delta.max_exp + 1)]
    deg = len(coeffs) - 1
    # a primitive N-th root of unity can be a root only if phi(N) <= deg,
    # and phi(N) >= sqrt(N/2) always, so this scan is exhaustive
    for n in range(3, 2 * deg * deg + 7):
        phi = _cyclotomic(n)
        if len(phi) - 1 > deg:
            continue
        _, rem = _poly_divmod(coeffs, [Fraction(c) for c in phi])
        if not any(rem):
            best = max(best, abs(lt_at_order(V, n)))
    return best

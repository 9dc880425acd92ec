r"""
The central part of the problem: the numbers `\psi_\lambda` of rooted
dipoles with face-degree sequence `2\lambda`, the initial series `A`, the
`L`-transform and the auxiliary series used by the double-torus tables.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial, prod

from .series import Monomial, Series, Truncation, series_exp
from .strings import BLACK, WHITE


@dataclass(frozen=True, order=True)
class Partition:
    parts: tuple

    def __post_init__(self):
        parts = tuple(sorted((int(p) for p in self.parts), reverse=True))
        if any(p <= 0 for p in parts):
            raise ValueError("partition parts must be positive")
        object.__setattr__(self, "parts", parts)

    @property
    def n(self) -> int:
        return sum(self.parts)

    @property
    def m(self) -> int:
        return len(self.parts)

    @property
    def genus(self):
        """Half of ``n - m``, or None when that is odd."""
        d = self.n - self.m
        return d // 2 if d % 2 == 0 else None

    @property
    def class_size(self) -> int:
        """Size of the conjugacy class of cycle type ``self`` in `S_n`."""
        mult = Counter(self.parts)
        return factorial(self.n) // (prod(self.parts) * prod(factorial(k) for k in mult.values()))

    def __str__(self):
        return "(" + ",".join(map(str, self.parts)) + ")"


def as_partition(lam) -> Partition:
    return lam if isinstance(lam, Partition) else Partition(tuple(lam))


def hook(head: int, ones: int, *more) -> Partition:
    """``hook(3, k)`` is `(3,1^k)`; ``hook(2, k, 2)`` is `(2,2,1^k)`."""
    return Partition((head,) + tuple(more) + (1,) * ones)


def partitions(n: int, largest: int = None):
    """Partitions of ``n`` as weakly decreasing tuples, largest first."""
    if largest is None:
        largest = n
    if n == 0:
        yield ()
        return
    for first in range(min(n, largest), 0, -1):
        for rest in partitions(n - first, first):
            yield (first,) + rest


def _quotient_by_one_plus_y(lam) -> list:
    r"""Coefficients of `(1+y)^{-1}\prod_i (1-(-y)^{\lambda_i})` (a polynomial)."""
    poly = [1]
    for part in lam:
        factor = [0] * (part + 1)
        factor[0] = 1
        factor[part] = -((-1) ** part)
        new = [0] * (len(poly) + part)
        for a, ca in enumerate(poly):
            if ca:
                for b, cb in enumerate(factor):
                    if cb:
                        new[a + b] += ca * cb
        poly = new
    # synthetic division by (1 + y)
    q = [0] * (len(poly) - 1)
    carry = 0
    for k in range(len(poly) - 1):
        carry = poly[k] - carry
        q[k] = carry
    if poly[-1] - carry != 0:
        raise ArithmeticError("product is not divisible by 1+y")
    return q


def psi_sum(lam) -> Fraction:
    r"""`\sum_{0\le k\le n-1} \binom{n-1}{k}^{-1} [y^k](1+y)^{-1}\prod_i(1-(-y)^{\lambda_i})`."""
    lam = as_partition(lam)
    n = lam.n
    q = _quotient_by_one_plus_y(lam.parts)
    return sum((Fraction(c, comb(n - 1, k)) for k, c in enumerate(q) if c and k <= n - 1),
               Fraction(0))


@lru_cache(maxsize=None)
def _psi(parts: tuple) -> int:
    lam = Partition(parts)
    if lam.genus is None:
        return 0
    val = Fraction(lam.class_size, lam.n) * psi_sum(lam)
    if val.denominator != 1 or val < 0:
        raise ArithmeticError(f"psi{lam} evaluated to {val}, not a nonnegative integer")
    return int(val)


def psi(lam) -> int:
    r"""
    Number of rooted dipoles whose faces have degrees `2\lambda`:
    `\psi_\lambda = \frac{|C_\lambda|}{n}\sum_k \binom{n-1}{k}^{-1}[y^k]\frac{\prod_i(1-(-y)^{\lambda_i})}{1+y}`.

    EXAMPLES::

        >>> psi((3,)), psi((1, 1, 1)), psi((2,))
        (1, 1, 0)
    """
    lam = as_partition(lam)
    if lam.n == 0:
        return 0
    return _psi(lam.parts)


def psi_hook(head: int, ones: int, second: int = 0) -> int:
    """ψ of `(head, second, 1^ones)`, zero when ``ones`` is negative."""
    if ones < 0:
        return 0
    return psi(hook(head, ones, second) if second else hook(head, ones))


def f_lambda(lam) -> tuple:
    r"""`f_\lambda = \prod_i f_{(W^{\lambda_i})}` as an ``f`` multiset."""
    acc = Counter(WHITE * p for p in as_partition(lam).parts)
    return tuple(sorted(acc.items()))


def _x_cap(trunc: Truncation) -> int:
    cap = trunc.x
    if trunc.joint is not None:
        cap = trunc.joint if cap is None else min(cap, trunc.joint)
    if cap is None:
        raise ValueError("A needs a bounded x-truncation")
    return cap


@lru_cache(maxsize=64)
def a_series(trunc: Truncation) -> Series:
    r"""`A = g_B \sum_n \frac{x^n}{n!} \sum_{\lambda\vdash n} u^{n-m(\lambda)}\psi_\lambda f_\lambda`."""
    out = {}
    for n in range(1, _x_cap(trunc) + 1):
        for parts in partitions(n):
            lam = Partition(parts)
            if lam.genus is None:
                continue
            c = psi(lam)
            if c:
                out[Monomial(BLACK, f_lambda(lam), n, 0, 0, 0, n - lam.m)] = Fraction(c, factorial(n))
    return Series(out, trunc)


def apply_L(poly: Series) -> Series:
    r"""
    The linear map `x^n y^k \mapsto x^n/(n\binom{n-1}{k})`, i.e.
    `x^n \int_0^1 s^{n-k-1}(1-s)^k\,ds`. Other indeterminates ride along.

    The integral diverges for `k \ge n`; such terms, and `n = 0`, raise
    :class:`ValueError`.
    """
    out = {}
    for m, c in poly.terms.items():
        n, k = m.x, m.y
        if n == 0:
            raise ValueError("L is undefined on terms without x")
        if k >= n:
            raise ValueError(f"L diverges on x^{n} y^{k}")
        m2 = m._replace(y=0)
        out[m2] = out.get(m2, 0) + c * Fraction(1, n * comb(n - 1, k))
    return Series(out, poly.trunc)


@lru_cache(maxsize=16)
def a_series_closed(trunc: Truncation) -> Series:
    r"""
    `A = g_B\, L\big[(\exp(\sum_i x^i u^{i-1} f_{(W^i)}(1-(-y)^i)/i) - 1)/(1+y)\big]`.

    The exponent carries odd powers of `u` for even `i`; those cancel under
    `L`.
    """
    X = _x_cap(trunc)
    inner = Truncation(X, max(X - 1, 0), 0, None, trunc.genus)
    s = {}
    for i in range(1, X + 1):
        word = WHITE * i
        s[Monomial(None, ((word, 1),), i, 0, 0, 0, i - 1)] = Fraction(1, i)
        s[Monomial(None, ((word, 1),), i, i, 0, 0, i - 1)] = Fraction(-((-1) ** i), i)
    e = series_exp(Series(s, inner)) - 1
    geom = Series({Monomial(y=k): Fraction((-1) ** k) for k in range(X)}, inner)
    body = apply_L(e * geom)
    if any(m.u % 2 for m in body.terms):
        raise ArithmeticError("odd genus term survived the L-transform")
    return Series.g(BLACK, trunc) * Series(body.terms, trunc)


def _aux(trunc: Truncation, start: int, weight, parts_of) -> Series:
    out = {}
    for n in range(start, _x_cap(trunc) + 1):
        c = weight(n) * psi(parts_of(n))
        if c:
            out[Monomial(x=n)] = Fraction(c, factorial(n))
    return Series(out, trunc)


def appendix_series(which: str, trunc: Truncation) -> Series:
    r"""
    ``D3``: `\sum_{n\ge3}\psi_{(3,1^{n-3})}x^n/n!`; ``D22``:
    `\sum_{n\ge4}\psi_{(2,2,1^{n-4})}x^n/n!`; ``D3STAR``/``D22STAR`` weight
    the same sums by `n-3` and `n-4`.
    """
    which = which.upper()
    if which == "D3":
        return _aux(trunc, 3, lambda n: 1, lambda n: hook(3, n - 3))
    if which == "D22":
        return _aux(trunc, 4, lambda n: 1, lambda n: hook(2, n - 4, 2))
    if which == "D3STAR":
        return _aux(trunc, 4, lambda n: n - 3, lambda n: hook(3, n - 3))
    if which == "D22STAR":
        return _aux(trunc, 5, lambda n: n - 4, lambda n: hook(2, n - 4, 2))
    raise ValueError(f"unknown auxiliary series {which!r}")


def central_slice(genus: int, trunc: Truncation) -> Series:
    r"""
    `[u^{2g}]\sum_D u^{2g(D)}x^{n(D)}/n(D)!` over rooted dipoles, i.e. the
    forgotten genus slice of `A` without `u` and `g_B`.
    """
    out = {}
    for n in range(1, _x_cap(trunc) + 1):
        total = sum(psi(p) for p in partitions(n) if n - len(p) == 2 * genus)
        if total:
            out[Monomial(x=n)] = Fraction(total, factorial(n))
    return Series(out, trunc)


def rooted_count(n: int, genus: int) -> int:
    """Rooted dipoles with ``n`` edges on the genus-``genus`` surface."""
    return sum(psi(p) for p in partitions(n) if n - len(p) == 2 * genus)

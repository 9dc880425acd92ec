r"""
The functions `\phi(v; x_1,\dots,x_i) = \sum_{n\ge i} h_{n-i}(x_1,\dots,x_i) v^n/n!`
and their specializations `\phi_S(v)`, `\phi_{i,j}(v)` and `\phi_i(y)`.

For `\phi_S` a white slot is `f_{(W)}` and a black slot is `w f_{(B)}`;
`\phi_i(y)` sets every slot to `f_{(B)}`.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import Optional

from .series import Monomial, Series, Truncation, UNBOUNDED
from .strings import BLACK, WHITE, check_string, counts


def multichoose(k: int, p: int) -> int:
    """Number of degree-``p`` monomials in ``k`` variables."""
    if p < 0:
        return 0
    if p == 0:
        return 1
    return comb(p + k - 1, p) if k > 0 else 0


@dataclass(frozen=True)
class PhiSpec:
    r"""
    Selects one φ function. ``kind`` is one of ``GENERAL``, ``STRING``,
    ``COUNTS``, ``Y_FORM``; ``i``/``j`` are white/black counts (or the
    number of slots), ``word`` is the index string for ``STRING``.
    """

    kind: str
    i: int = 0
    j: int = 0
    word: Optional[str] = None
    order: int = 8

    @classmethod
    def general(cls, i, order=8):
        return cls("GENERAL", i, 0, None, order)

    @classmethod
    def string(cls, word, order=8):
        i, j = counts(check_string(word))
        return cls("STRING", i, j, word, order)

    @classmethod
    def counts(cls, i, j, order=8):
        return cls("COUNTS", i, j, None, order)

    @classmethod
    def y_form(cls, i, order=8):
        return cls("Y_FORM", i, 0, None, order)

    @property
    def slots(self) -> int:
        return self.i + self.j

    def default_trunc(self) -> Truncation:
        return Truncation.uniform(self.order)


def complete_symmetric(j: int, values: list) -> Series:
    r"""
    `h_j` evaluated at a list of series.

    EXAMPLES::

        >>> from dipole_atlas.series import Series
        >>> t1, t2 = Series.f("BBW"), Series.f("BWW")
        >>> complete_symmetric(2, [t1, t2]) == t1 * t1 + t1 * t2 + t2 * t2
        True
    """
    trunc = UNBOUNDED
    for val in values:
        trunc = trunc.meet(val.trunc)
    if j < 0:
        return Series.zero(trunc)
    # h[t] holds h_t of the variables processed so far
    h = [Series.one(trunc)] + [Series.zero(trunc)] * j
    for val in values:
        powers = [Series.one(trunc)]
        for _ in range(j):
            powers.append(powers[-1] * val)
        h = [sum((powers[t] * h[d - t] for t in range(d + 1)), Series.zero(trunc))
             for d in range(j + 1)]
    return h[j]


def phi_general(values: list, trunc: Truncation, var: str = "v") -> Series:
    """The general φ at arbitrary slot values, as a series in ``var``."""
    i = len(values)
    if i == 0:
        return Series.one(trunc)
    cap = _cap(trunc, var)
    out = Series.zero(trunc)
    for n in range(i, cap + 1):
        hn = complete_symmetric(n - i, values)
        out = out + hn.shift(**{var: n}).scale(Fraction(1, factorial(n)))
    return out


def _cap(trunc: Truncation, var: str) -> int:
    cap = getattr(trunc, var)
    if trunc.joint is not None:
        cap = trunc.joint if cap is None else min(cap, trunc.joint)
    if cap is None:
        raise ValueError(f"φ needs a bounded {var}-truncation")
    return cap


@lru_cache(maxsize=4096)
def phi_counts(i: int, j: int, trunc: Truncation) -> Series:
    r"""
    `\phi_{i,j}(v)` in closed form: `[v^n/n!]` is
    `\sum_{p+q=n-i-j} \binom{p+i-1}{p}\binom{q+j-1}{q} f_{(W)}^p (w f_{(B)})^q`.
    """
    cap = _cap(trunc, "v")
    out = {}
    for n in range(i + j, cap + 1):
        r = n - i - j
        for q in range(r + 1):
            p = r - q
            c = multichoose(i, p) * multichoose(j, q)
            if not c:
                continue
            f = tuple(t for t in ((BLACK, q), (WHITE, p)) if t[1])
            out[Monomial(None, f, 0, 0, n, q, 0)] = Fraction(c, factorial(n))
    return Series(out, trunc)


@lru_cache(maxsize=1024)
def phi_y(i: int, trunc: Truncation) -> Series:
    r"""`\phi_i(y)`: `[y^n/n!] = \binom{n-1}{n-i} f_{(B)}^{n-i}`."""
    cap = _cap(trunc, "y")
    out = {}
    for n in range(i, cap + 1):
        c = multichoose(i, n - i)
        if c:
            f = ((BLACK, n - i),) if n > i else ()
            out[Monomial(None, f, 0, n)] = Fraction(c, factorial(n))
    return Series(out, trunc)


def phi_series(spec: PhiSpec, trunc: Optional[Truncation] = None, values=None) -> Series:
    """Materialize ``spec``; ``values`` supplies the slots for ``GENERAL``."""
    trunc = spec.default_trunc() if trunc is None else trunc
    if spec.kind in ("STRING", "COUNTS"):
        return phi_counts(spec.i, spec.j, trunc)
    if spec.kind == "Y_FORM":
        return phi_y(spec.i, trunc)
    if spec.kind == "GENERAL":
        if spec.i == 0:
            return Series.one(trunc)
        if values is None or len(values) != spec.i:
            raise ValueError("GENERAL φ needs one value per slot")
        return phi_general(values, trunc)
    raise ValueError(f"unknown φ kind {spec.kind!r}")


def phi_i_coeff(i: int, n: int) -> int:
    r"""`[y^n/n!]\langle\phi_i\rangle`."""
    if i == 0:
        return 1 if n == 0 else 0
    return comb(n - 1, n - i) if n >= i else 0


def phi_ij_coeff(i: int, j: int, k: int, c: int, d: int) -> int:
    r"""
    `[w^d v^{c+d}/(c+d)!]\, w^k \langle\phi_{i,j}\rangle`.

    The white slots contribute `c+k-i-j` powers of `t`, the black ones
    `d-k`; each factor is a multiset count. This covers the ``i=0`` and
    ``j=0`` cases of the case split as well.
    """
    if min(i, j, k, c, d) < 0:
        raise ValueError("arguments must be nonnegative")
    return multichoose(i, c + k - i - j) * multichoose(j, d - k)


def phi_f_derivative(spec: PhiSpec, which: str, trunc: Optional[Truncation] = None) -> Series:
    r"""
    Right-hand side of the `f`-derivative rules:
    `\partial\phi_{i,j}/\partial f_{(W)} = i\phi_{i+1,j}`,
    `\partial\phi_{i,j}/\partial f_{(B)} = j w\phi_{i,j+1}`,
    `\partial\phi_i/\partial f_{(B)} = i\phi_{i+1}`.
    """
    trunc = spec.default_trunc() if trunc is None else trunc
    which = str(which)
    if spec.kind in ("STRING", "COUNTS"):
        if which == WHITE:
            return phi_counts(spec.i + 1, spec.j, trunc).scale(spec.i)
        if which == BLACK:
            return phi_counts(spec.i, spec.j + 1, trunc).shift(w=1).scale(spec.j)
    elif spec.kind == "Y_FORM":
        if which == BLACK:
            return phi_y(spec.i + 1, trunc).scale(spec.i)
        if which == WHITE:
            return Series.zero(trunc)
    raise ValueError(f"no derivative rule for {spec.kind} with respect to {which}")

r"""
Join and cut operators as monomial rewriters, and the stepping maps that
solve the two differential equations one degree at a time.

``C_PRIME``/``J_PRIME`` act on `(a,b,0,0)` series, ``C_DPRIME``/``J_DPRIME``
on `(a,b,c,d)` series. ``C_TILDE``/``J_TILDE`` are their images on length
shadows: a shadow index of length `L` is stored as the all-white string of
that length (see :func:`forget_lengths`).

:func:`apply` returns the bare operator image. The stepping maps attach the
`u^2` that accompanies every join.
"""
from __future__ import annotations

import enum
from fractions import Fraction
from math import factorial

from .series import LinearityError, Monomial, Series, Truncation, fadd, fremove
from .strings import BLACK, WHITE, canonical, rotations


class OperatorKind(enum.Enum):
    C_PRIME = "C'"
    J_PRIME = "J'"
    C_DPRIME = "C''"
    J_DPRIME = "J''"
    C_TILDE = "C~"
    J_TILDE = "J~"

    @property
    def is_join(self) -> bool:
        return self in (OperatorKind.J_PRIME, OperatorKind.J_DPRIME, OperatorKind.J_TILDE)


# monomial rules: each yields (monomial, multiplier) pairs

def _cut_prime(m: Monomial):
    R = m.g
    for i in range(2, len(R) + 1):
        yield m._replace(g=R[:i], f=fadd(m.f, canonical(R[0] + R[i:]))), 1


def _join_prime(m: Monomial):
    R = m.g
    for S, k in m.f:
        f = fremove(m.f, S)
        for T in rotations(S):
            yield m._replace(g=R + R[0] + T, f=f), k


def _cut_dprime(m: Monomial):
    R = m.g
    for i in range(2, len(R) + 1):
        black = R[i - 1] == BLACK
        yield m._replace(g=R[0] + R[i - 1:], f=fadd(m.f, canonical(R[1:i])),
                         w=m.w + black), 1
    yield m._replace(g=R[0], f=fadd(m.f, canonical(R)), w=m.w + 1), 1


def _join_dprime(m: Monomial):
    R = m.g
    for S, k in m.f:
        f = fremove(m.f, S)
        for T in rotations(S):
            yield m._replace(g=R[0] + T + T[0] + R[1:], f=f, w=m.w + (T[0] == BLACK)), k


def _cut_tilde(m: Monomial):
    L = len(m.g)
    for j in range(1, L):
        yield m._replace(g=WHITE * (L - j + 1), f=fadd(m.f, WHITE * j)), 1


def _join_tilde(m: Monomial):
    i = len(m.g)
    for S, k in m.f:
        j = len(S)
        yield m._replace(g=WHITE * (i + j + 1), f=fremove(m.f, S)), k * j


_RULES = {
    OperatorKind.C_PRIME: _cut_prime,
    OperatorKind.J_PRIME: _join_prime,
    OperatorKind.C_DPRIME: _cut_dprime,
    OperatorKind.J_DPRIME: _join_dprime,
    OperatorKind.C_TILDE: _cut_tilde,
    OperatorKind.J_TILDE: _join_tilde,
}


def apply(op: OperatorKind, s: Series, raise_u: int = 0, trunc: Truncation = None) -> Series:
    """Image of ``s`` under ``op``, optionally multiplied by ``u^raise_u``."""
    rule = _RULES[OperatorKind(op)]
    if op in (OperatorKind.C_TILDE, OperatorKind.J_TILDE):
        _check_shadow(s)
    trunc = s.trunc if trunc is None else trunc
    admits = trunc.admits
    out = {}
    for m, c in s.terms.items():
        if m.g is None:
            raise LinearityError("operator applied to a term without a g factor")
        if raise_u and not admits(m.x, m.y, m.v, m.u + raise_u):
            continue
        for m2, k in rule(m):
            if raise_u:
                m2 = m2._replace(u=m2.u + raise_u)
            out[m2] = out.get(m2, 0) + c * k
    return Series(out, trunc)


def _check_shadow(s: Series):
    for m in s.terms:
        if (m.g and BLACK in m.g) or any(BLACK in c for c, _ in m.f):
            raise ValueError("C~/J~ act on length shadows; apply forget_lengths first")


def forget_lengths(s: Series) -> Series:
    r"""
    Replace `g_R` by `g_{\ell(R)}` and `f_{(S)}` by `f_{\ell(S)}`.

    A length-`L` index is stored as the all-white word of length `L`.
    """
    def fn(m: Monomial) -> Monomial:
        acc = {}
        for c, k in m.f:
            key = WHITE * len(c)
            acc[key] = acc.get(key, 0) + k
        g = None if m.g is None else WHITE * len(m.g)
        return m._replace(g=g, f=tuple(sorted(acc.items())))
    return s.map_monomials(fn)


def step_B(prev: Series) -> Series:
    r"""`B_b = (C' + u^2 J') B_{b-1}` on a `y`-free slice."""
    if not prev:
        return prev
    return apply(OperatorKind.C_PRIME, prev) + apply(OperatorKind.J_PRIME, prev, raise_u=2)


def step_Gamma(prev: Series) -> Series:
    r"""`\Gamma_m = (C'' + u^2 J'') \Gamma_{m-1}` on a `v`-free slice."""
    if not prev:
        return prev
    return apply(OperatorKind.C_DPRIME, prev) + apply(OperatorKind.J_DPRIME, prev, raise_u=2)


def _slice_trunc(trunc: Truncation, var: str, k: int) -> Truncation:
    joint = None if trunc.joint is None else trunc.joint - k
    return trunc._replace(**{var: 0}, joint=joint)


def _cap(trunc: Truncation, var: str) -> int:
    cap = getattr(trunc, var)
    if trunc.joint is not None:
        cap = trunc.joint if cap is None else min(cap, trunc.joint)
    if cap is None:
        raise ValueError(f"iteration needs a bounded {var}-truncation")
    return cap


def solve_B(A: Series, trunc: Truncation) -> Series:
    r"""
    `B = \sum_b B_b\, y^b/b!` with `B_0 = A`, by repeated :func:`step_B`.
    """
    out = Series.zero(trunc)
    cur = Series(A.terms, _slice_trunc(trunc, "y", 0))
    for b in range(_cap(trunc, "y") + 1):
        if b:
            cur = Series(step_B(cur).terms, _slice_trunc(trunc, "y", b))
        if not cur:
            break
        out = out + Series(cur.terms, trunc).shift(y=b).scale(Fraction(1, factorial(b)))
    return out


def solve_Gamma(B: Series, trunc: Truncation) -> Series:
    r"""
    `\Gamma = \sum_m \Gamma_m\, v^m/m!` with `\Gamma_0 = B`, by repeated
    :func:`step_Gamma`.
    """
    out = Series.zero(trunc)
    cur = Series(B.terms, _slice_trunc(trunc, "v", 0))
    for m in range(_cap(trunc, "v") + 1):
        if m:
            cur = Series(step_Gamma(cur).terms, _slice_trunc(trunc, "v", m))
        if not cur:
            break
        out = out + Series(cur.terms, trunc).shift(v=m).scale(Fraction(1, factorial(m)))
    return out

r"""
Preimage series `\tau_{R,k}` of `g_{BR}\phi_k(y)` under `\partial_y - C'`
and `\tau_{R,S}` of `g_{BR}\phi_S(v)` under `\partial_v - C''`.

Both are given by sums over string compositions. The ``*_terms`` functions
return that sum symbolically (the φ factor kept as an index) so that the
genus solver can work with it before anything is materialized.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .operators import OperatorKind, apply
from .phi import phi_counts, phi_y
from .series import Monomial, Series, Truncation, fmultiset, fmul
from .strings import BLACK, all_compositions, check_string, counts, iota


@dataclass(frozen=True)
class TauKey:
    """``RK(R, k)`` or ``RS(R, S)``; for ``RS`` the string ``S`` may be empty."""

    kind: str
    R: str
    k: int = 0
    S: str = ""

    @classmethod
    def rk(cls, R, k):
        if not R:
            raise ValueError("tau_{R,k} needs a nonempty R")
        return cls("RK", check_string(R), k)

    @classmethod
    def rs(cls, R, S=""):
        return cls("RS", check_string(R), 0, check_string(S))


# symbolic forms ------------------------------------------------------------

@lru_cache(maxsize=None)
def tau_rk_terms(R: str, k: int) -> tuple:
    r"""
    `\tau_{R,k}` as a tuple of ``(g index, φ index, f multiset)``; each term
    stands for `g \cdot \phi_{index}(y) \cdot \prod f`.
    """
    check_string(R)
    if not R:
        raise ValueError("tau_{R,k} needs a nonempty R")
    out = []
    for eta in all_compositions(R):
        f = fmultiset(*(BLACK + part for part in eta[1:]))
        out.append((BLACK + eta[0], k + len(eta), f))
    return tuple(out)


@lru_cache(maxsize=None)
def tau_rs_terms(R: str, i: int, j: int) -> tuple:
    r"""
    `\tau_{R,S}` for `S` with ``i`` white and ``j`` black symbols, as a
    tuple of ``(g index, (white, black) φ counts, f multiset, w power)``.
    """
    check_string(R)
    if not R:
        return ((BLACK, (i, j + 1), (), 0),)
    out = []
    for eta in all_compositions(R):
        heads = "".join(part[0] for part in eta)
        hw, hb = counts(heads)
        omega = fmultiset(*(eta[t] + eta[t + 1][0] for t in range(len(eta) - 1)))
        e = iota(eta)
        out.append((BLACK + eta[-1], (i + hw, j + hb), omega, e))
        out.append((BLACK, (i + hw, j + hb + 1), fmul(omega, fmultiset(BLACK + eta[-1])), e + 1))
    return tuple(out)


# materialized forms --------------------------------------------------------

@lru_cache(maxsize=4096)
def tau_rk(R: str, k: int, trunc: Truncation) -> Series:
    r"""
    `\tau_{R,k} = \sum_i \phi_{k+i}(y) \sum_{\eta \in C_i(R)} g_{B\eta_1}\prod_{j\ge2} f_{(B\eta_j)}`.

    EXAMPLES::

        >>> from dipole_atlas.series import Truncation
        >>> t = tau_rk("BW", 0, Truncation.uniform(2))
        >>> sorted(m.g for m in t.terms)
        ['BB', 'BBW', 'BBW']
    """
    out = Series.zero(trunc)
    for g, idx, f in tau_rk_terms(R, k):
        out = out + phi_y(idx, trunc) * Series.monomial(Monomial(g, f), 1, trunc)
    return out


@lru_cache(maxsize=4096)
def _tau_rs(R: str, i: int, j: int, trunc: Truncation) -> Series:
    out = Series.zero(trunc)
    for g, (a, b), f, e in tau_rs_terms(R, i, j):
        out = out + phi_counts(a, b, trunc) * Series.monomial(Monomial(g, f, w=e), 1, trunc)
    return out


def tau_rs(R: str, S, trunc: Truncation) -> Series:
    r"""
    `\tau_{R,S}`; ``S`` is a string or a ``(white, black)`` pair, since the
    series only depends on the symbol counts of `S`.
    """
    i, j = counts(check_string(S)) if isinstance(S, str) else S
    return _tau_rs(R, i, j, trunc)


@lru_cache(maxsize=4096)
def tau_rs_forgotten(R: str, i: int, j: int, trunc: Truncation) -> Series:
    r"""`\langle\tau_{R,S}\rangle`, built from forgotten φ's directly."""
    out = Series.zero(trunc)
    for _, (a, b), _, e in tau_rs_terms(R, i, j):
        out = out + phi_counts(a, b, trunc).forget().shift(w=e)
    return out


# recursions ----------------------------------------------------------------

def tau_rk_recursive(R: str, k: int, trunc: Truncation) -> Series:
    r"""Unrolls `\tau_{R,k} = g_{BR}\phi_{k+1} + \sum_i f_{(BR_{i+1}\cdots)}\tau_{R_1\cdots R_i,k+1}`."""
    out = Series.g(BLACK + R, trunc) * phi_y(k + 1, trunc)
    for i in range(1, len(R)):
        out = out + Series.f(BLACK + R[i:], trunc) * tau_rk_recursive(R[:i], k + 1, trunc)
    return out


def tau_rs_recursive(R: str, S: str, trunc: Truncation) -> Series:
    r"""
    Unrolls the recursion in the first symbol `t` of ``R``:
    `\tau_{tR,S} = \phi_{tS} g_{BtR} + \sum_i f_{(tR_1\cdots R_i)} w^{[R_i=B]}\tau_{R_i\cdots,tS}
    + w f_{(BtR)}\tau_{\epsilon,tS}`.
    """
    if not R:
        return Series.g(BLACK, trunc) * phi_counts(*counts(BLACK + S), trunc)
    t, rest = R[0], R[1:]
    tS = t + S
    out = Series.g(BLACK + R, trunc) * phi_counts(*counts(tS), trunc)
    for i in range(1, len(rest) + 1):
        coeff = Series.f(t + rest[:i], trunc)
        if rest[i - 1] == BLACK:
            coeff = coeff.shift(w=1)
        out = out + coeff * tau_rs_recursive(rest[i - 1:], tS, trunc)
    out = out + Series.f(BLACK + R, trunc).shift(w=1) * tau_rs_recursive("", tS, trunc)
    return out


# verification --------------------------------------------------------------

def _inner(trunc: Truncation, var: str) -> Truncation:
    """Window on which a derivative in ``var`` is still exact."""
    cap = getattr(trunc, var)
    joint = None if trunc.joint is None else trunc.joint - 1
    return trunc._replace(**{var: None if cap is None else cap - 1}, joint=joint)


def verify_tau(key: TauKey, trunc: Truncation) -> Series:
    r"""
    Residual `(\partial - C)\tau - g_{BR}\phi` on the window where it is
    exactly determined. An empty result certifies the defining equation.
    A nonvanishing initial value raises :class:`ValueError`.
    """
    if key.kind == "RK":
        tau = tau_rk(key.R, key.k, trunc)
        var, op = "y", OperatorKind.C_PRIME
        rhs = Series.g(BLACK + key.R, trunc) * phi_y(key.k, trunc)
    else:
        tau = tau_rs(key.R, key.S, trunc)
        var, op = "v", OperatorKind.C_DPRIME
        rhs = Series.g(BLACK + key.R, trunc) * phi_counts(*counts(key.S), trunc)
    if tau.at_zero(var):
        raise ValueError(f"{key} does not vanish at {var}=0")
    inner = _inner(trunc, var)
    return (tau.derivative(var) - apply(op, tau) - rhs).truncate(inner)


def tau_rk_forgotten_coeff(length: int, k: int, n: int) -> int:
    r"""`[y^n/n!]\langle\tau_{R,k}\rangle = \binom{\ell(R)+n-2}{\ell(R)+k-1}`."""
    from math import comb
    top, bottom = length + n - 2, length + k - 1
    return comb(top, bottom) if 0 <= bottom <= top else 0

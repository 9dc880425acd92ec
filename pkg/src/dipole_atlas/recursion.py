r"""
Genus-by-genus solution of both differential equations in the τ basis.

A solution is kept as a map from ``(g index, φ index)`` to a coefficient
series free of `g`. For the `(a,b,0,0)` problem the φ index is an integer
``k`` and the key stands for `g_R \phi_k(y)`; for the `(a,b,c,d)` problem it
is a ``(white, black)`` pair and the key stands for `g_R \phi_{i,j}(v)`.

One step of the recursion applies the join operator to the previous genus
(concretely on the coefficient, and through the `f`-derivative rules on the
φ factor), adds the cut image of the initial condition where needed, and
replaces every `g_{BR}\phi` by the matching τ. Nothing here depends on the
genus being small.
"""
from __future__ import annotations

from functools import lru_cache
from typing import Optional

from .central import a_series
from .operators import OperatorKind, apply
from .phi import phi_counts, phi_y
from .series import Monomial, Series, Truncation, fmul
from .strings import BLACK, WHITE
from .tau import tau_rk_terms, tau_rs_terms


class SymbolicSolution:
    """``{(g index, φ index): coefficient}`` plus its genus and truncation."""

    __slots__ = ("kind", "genus", "terms", "trunc")

    def __init__(self, kind: str, genus: int, terms: dict, trunc: Truncation):
        self.kind = kind
        self.genus = genus
        self.terms = {k: s for k, s in terms.items() if s}
        self.trunc = trunc

    def __len__(self):
        return len(self.terms)

    def keys(self):
        return sorted(self.terms, key=lambda k: (len(k[0]), k[0], k[1]))

    def _phi(self, idx) -> Series:
        return phi_y(idx, self.trunc) if self.kind == "B" else phi_counts(*idx, self.trunc)

    def materialize(self) -> Series:
        """The full series, carrying `u^{2g}`."""
        out = Series.zero(self.trunc)
        for (g, idx), coef in self.terms.items():
            out = out + _attach(g, coef) * self._phi(idx)
        return Series(out.shift(u=2 * self.genus).terms, self.trunc)

    def forgotten(self) -> Series:
        r"""`\langle\cdot\rangle` of :meth:`materialize`, without building it."""
        grouped = {}
        for (_, idx), coef in self.terms.items():
            grouped[idx] = grouped.get(idx, Series.zero(self.trunc)) + coef.forget()
        out = Series.zero(self.trunc)
        for idx, coef in grouped.items():
            out = out + coef * self._phi(idx).forget()
        return Series(out.shift(u=2 * self.genus).terms, self.trunc)


def _attach(g: str, coef: Series) -> Series:
    return Series({m._replace(g=g): c for m, c in coef.terms.items()}, coef.trunc, clean=False)


class _Acc:
    """Accumulates ``key -> {monomial: coeff}`` and freezes into series."""

    def __init__(self, trunc: Truncation):
        self.trunc = trunc
        self.data = {}

    def add(self, key, m: Monomial, c):
        if not c:
            return
        d = self.data.setdefault(key, {})
        d[m] = d.get(m, 0) + c

    def add_series(self, key, s: Series, scale=1):
        for m, c in s.terms.items():
            self.add(key, m, c * scale)

    def add_grouped(self, s: Series, idx):
        """Split a series with `g` factors by `g` index under φ index ``idx``."""
        for m, c in s.terms.items():
            self.add((m.g, idx), m._replace(g=None), c)

    def freeze(self) -> dict:
        return {k: Series(d, self.trunc) for k, d in self.data.items()}


def central_coefficient(genus: int, trunc: Truncation) -> Series:
    """The genus slice of `A` with `g_B` and `u` stripped."""
    out = {}
    for m, c in a_series(trunc._replace(genus=None)).terms.items():
        if m.u == 2 * genus:
            out[m._replace(g=None, u=0)] = c
    return Series(out, trunc)


def _engine_trunc(trunc: Truncation) -> Truncation:
    return trunc._replace(genus=None)


# (a,b,0,0) -------------------------------------------------------------------

def b_forcing(prev: SymbolicSolution) -> dict:
    r"""`J'` applied to a `B`-type solution, as ``{(g index, k): coefficient}``."""
    acc = _Acc(prev.trunc)
    for (R, k), coef in prev.terms.items():
        acc.add_grouped(apply(OperatorKind.J_PRIME, _attach(R, coef)), k)
        if k:
            # d(phi_k)/d f_(B) = k phi_{k+1}, joined with the single rotation "B"
            acc.add_series((R + R[0] + BLACK, k + 1), coef, k)
    return acc.freeze()


def b_solve(genus: int, forcing: dict, initial: Series, trunc: Truncation) -> SymbolicSolution:
    r"""
    `g_B\cdot` ``initial`` plus `\sum c\,\tau_{R,k}` over the forcing terms
    `c\, g_{BR}\phi_k(y)`.
    """
    acc = _Acc(trunc)
    acc.add_series((BLACK, 0), initial)
    for (G, k), coef in forcing.items():
        for g, idx, f in tau_rk_terms(G[1:], k):
            for m, c in coef.terms.items():
                acc.add((g, idx), m._replace(f=_fmul(m.f, f)), c)
    return SymbolicSolution("B", genus, acc.freeze(), trunc)


@lru_cache(maxsize=32)
def forcing_B(genus: int, trunc: Truncation) -> dict:
    r"""`J'B^{(g-1)}`."""
    trunc = _engine_trunc(trunc)
    return b_forcing(symbolic_B(genus - 1, trunc)) if genus >= 1 else {}


@lru_cache(maxsize=32)
def symbolic_B(genus: int, trunc: Truncation) -> SymbolicSolution:
    r"""`B^{(g)}` with initial condition the genus slice of `A`."""
    trunc = _engine_trunc(trunc)
    return b_solve(genus, forcing_B(genus, trunc), central_coefficient(genus, trunc), trunc)


# (a,b,c,d) -------------------------------------------------------------------

def b_as_gamma_terms(B: SymbolicSolution) -> dict:
    r"""`B` rewritten with `\phi_k(y)` folded into the coefficient and `\phi_{0,0} = 1`."""
    acc = _Acc(B.trunc)
    for (R, k), coef in B.terms.items():
        acc.add_series((R, (0, 0)), coef * phi_y(k, B.trunc) if k else coef)
    return acc.freeze()


def gamma_forcing(B: SymbolicSolution, prev: Optional[SymbolicSolution]) -> dict:
    r"""`C''B^{(g)} + J''\Gamma^{(g-1)}` as ``{(g index, (i, j)): coefficient}``."""
    acc = _Acc(B.trunc)
    for (R, idx), coef in b_as_gamma_terms(B).items():
        acc.add_grouped(apply(OperatorKind.C_DPRIME, _attach(R, coef)), idx)
    if prev is not None:
        for (R, (i, j)), coef in prev.terms.items():
            acc.add_grouped(apply(OperatorKind.J_DPRIME, _attach(R, coef)), (i, j))
            if i:
                acc.add_series((R[0] + WHITE + WHITE + R[1:], (i + 1, j)), coef, i)
            if j:
                acc.add_series((R[0] + BLACK + BLACK + R[1:], (i, j + 1)), coef.shift(w=2), j)
    return acc.freeze()


def gamma_solve(B: SymbolicSolution, forcing: dict) -> SymbolicSolution:
    r"""`B + \sum c\,\tau_{R,S}` over the forcing terms `c\, g_{BR}\phi_S(v)`."""
    acc = _Acc(B.trunc)
    for key, coef in b_as_gamma_terms(B).items():
        acc.add_series(key, coef)
    for (G, (i, j)), coef in forcing.items():
        for g, idx, f, e in tau_rs_terms(G[1:], i, j):
            for m, c in coef.terms.items():
                acc.add((g, idx), m._replace(f=_fmul(m.f, f), w=m.w + e), c)
    return SymbolicSolution("Gamma", B.genus, acc.freeze(), B.trunc)


@lru_cache(maxsize=32)
def forcing_Gamma(genus: int, trunc: Truncation) -> dict:
    trunc = _engine_trunc(trunc)
    prev = symbolic_Gamma(genus - 1, trunc) if genus >= 1 else None
    return gamma_forcing(symbolic_B(genus, trunc), prev)


@lru_cache(maxsize=32)
def symbolic_Gamma(genus: int, trunc: Truncation) -> SymbolicSolution:
    r"""`\Gamma^{(g)}` from `B^{(g)}` and `\Gamma^{(g-1)}`."""
    trunc = _engine_trunc(trunc)
    return gamma_solve(symbolic_B(genus, trunc), forcing_Gamma(genus, trunc))


def forgotten_forcing(forcing: dict) -> dict:
    r"""
    Forcing terms forgotten and keyed ``(R, i, j)`` for `g_{BR}\phi_{i,j}`:
    the coefficient of `\langle\tau_{R,i,j}\rangle` in `\langle\hat\Gamma\rangle`.
    """
    out = {}
    for (G, (i, j)), coef in forcing.items():
        key = (G[1:], i, j)
        out[key] = out.get(key, Series.zero(coef.trunc)) + coef.forget()
    return {k: s for k, s in out.items() if s}


def _fmul(a: tuple, b: tuple) -> tuple:
    return fmul(a, b) if b else a

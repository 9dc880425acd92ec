r"""
Low-genus solutions `B^{(g)}`, `\Gamma^{(g)}` and the dipole counts read off
them.

Three independent routes produce the same series:

``CLOSED_FORM``
    the explicit expressions in τ functions for genus 0, 1 and 2 (genus 2
    of `\Gamma` goes through one mechanical recursion step from the
    closed forms of `B^{(2)}` and `\Gamma^{(1)}`);
``PROCEDURAL``
    the genus recursion of :mod:`dipole_atlas.recursion`, any genus;
``ITERATIVE``
    degree-by-degree stepping from `A`, any genus.

``APPENDIX_TABLE`` reconstructs `\langle\Gamma^{(2)}\rangle` from the
tabulated coefficients (forgotten series only).
"""
from __future__ import annotations

import csv
import enum
import io
import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import Union

from .central import a_series, hook, psi, psi_hook, rooted_count
from .operators import OperatorKind, apply, solve_B, solve_Gamma
from .phi import phi_y
from .recursion import (SymbolicSolution, b_solve, central_coefficient, gamma_forcing,
                        gamma_solve, symbolic_B, symbolic_Gamma)
from .series import Monomial, Series, Truncation, egf_coeff, fmultiset
from .strings import BLACK, WHITE

DEFAULT_ORDER = 8
MAX_SAFE_ORDER = 8
CLOSED_GENERA = (0, 1, 2)


class Path(enum.Enum):
    CLOSED_FORM = "closed"
    PROCEDURAL = "procedural"
    ITERATIVE = "iterative"
    APPENDIX_TABLE = "appendix"


class UnsupportedGenusError(ValueError):
    """No closed form is available for this genus; use another path."""


@dataclass
class GenusSolution:
    g: int
    B: Series
    Gamma: Series
    provenance: Path


def truncation(order: Union[int, Truncation]) -> Truncation:
    """``order`` caps `x`, `y`, `v` and their sum (so ``n <= order + 1``)."""
    if isinstance(order, Truncation):
        return order
    if order < 0:
        raise ValueError("order must be nonnegative")
    return Truncation.uniform(order)


# building blocks --------------------------------------------------------------

def _series(terms: dict, trunc: Truncation) -> Series:
    return Series({m: Fraction(c) for m, c in terms.items()}, trunc)


def _fw_power(n: int, *extra) -> tuple:
    return fmultiset(*extra, *([WHITE] * n))


def exp_x_fw(trunc: Truncation, shift: int = 0) -> Series:
    r"""`x^{shift}\exp(x f_{(W)})`."""
    return _series({Monomial(None, _fw_power(n), n + shift): Fraction(1, factorial(n))
                    for n in range((trunc.joint or trunc.x) + 1)}, trunc)


def _E1(trunc):
    return exp_x_fw(trunc) - 1


def _X(trunc):
    return exp_x_fw(trunc, 1)


def _central_sum(trunc, start, parts_of, weight=lambda n: 1, extra=()) -> Series:
    r"""`\sum_{n\ge start} weight(n)\,\psi_{parts(n)} x^n/n!\,f_{extra} f_{(W)}^{n-start}`."""
    out = {}
    for n in range(start, (trunc.joint or trunc.x) + 1):
        c = weight(n) * psi(parts_of(n))
        if c:
            out[Monomial(None, _fw_power(n - start, *extra), n)] = Fraction(c, factorial(n))
    return _series(out, trunc)


def psi_sums_torus(trunc: Truncation) -> Series:
    r"""`\sum_n \frac{x^n}{n!}(\psi_{(3,1^{n-3})} f_{(WWW)} f_{(W)}^{n-3} + \psi_{(2^2,1^{n-4})} f_{(WW)}^2 f_{(W)}^{n-4})`."""
    return (_central_sum(trunc, 3, lambda n: hook(3, n - 3), extra=("WWW",))
            + _central_sum(trunc, 4, lambda n: hook(2, n - 4, 2), extra=("WW", "WW")))


def _forcing(trunc, items) -> dict:
    """``[(coefficient, R, φ index)]`` as forcing terms `c\\,g_{BR}\\phi`."""
    out = {}
    for coef, R, idx in items:
        key = (BLACK + R, idx)
        out[key] = out[key] + coef if key in out else coef
    return {k: Series(s.terms, trunc) for k, s in out.items() if s}


def _f(word, trunc):
    return Series.f(word, trunc)


# closed forms ---------------------------------------------------------------

def _engine(trunc: Truncation) -> Truncation:
    return trunc._replace(genus=None)


@lru_cache(maxsize=16)
def closed_B(g: int, trunc: Truncation, variant: bool = False) -> SymbolicSolution:
    r"""
    `B^{(0)} = g_B(e^{xf_{(W)}}-1)`;
    `B^{(1)} = \tau_{BW,0}\,xe^{xf_{(W)}} + g_B(\psi\text{ sums})`;
    `B^{(2)}` as the explicit combination of `\tau_{R,k}`.

    With ``variant=True`` the genus-2 expression uses `x\tau_{BWBB,1}` in
    place of the `x\tau_{BWBW,1}` that the join computation produces. That
    variant is wrong, but it is the one the tabulated genus-2 coefficients
    were computed from (see :mod:`dipole_atlas.appendix`).
    """
    trunc = _engine(trunc)
    if g == 0:
        return b_solve(0, {}, _E1(trunc), trunc)
    if g == 1:
        return b_solve(1, _forcing(trunc, [(_X(trunc), "BW", 0)]), psi_sums_torus(trunc), trunc)
    if g == 2:
        X, x = _X(trunc), Series.var("x", trunc)
        d3 = _central_sum(trunc, 3, lambda n: hook(3, n - 3))
        d3s = _central_sum(trunc, 4, lambda n: hook(3, n - 3), lambda n: n - 3, ("WWW",))
        d22 = _central_sum(trunc, 4, lambda n: hook(2, n - 4, 2), extra=("WW",))
        d22s = _central_sum(trunc, 5, lambda n: hook(2, n - 4, 2), lambda n: n - 4, ("WW", "WW"))
        items = [
            (X, "BWBB", 2),
            (x * X, "BWBB" if variant else "BWBW", 1),
            (_f("BW", trunc) * X * 2, "BBB", 3),
            (X, "BBBW", 2),
            (X, "BBWB", 2),
            (x * _f("BW", trunc) * X, "BBW", 2),
            (d3 * 3, "BWWW", 0),
            (d3s, "BW", 0),
            (d22 * 4, "BWW", 0),
            (d22s, "BW", 0),
        ]
        return b_solve(2, _forcing(trunc, items), central_coefficient(2, trunc), trunc)
    raise UnsupportedGenusError(f"no closed form for B at genus {g}")


def gamma0_display(trunc: Truncation) -> Series:
    r"""`\sum_{a,d\ge0} \frac{x^{a+1}}{(a+1)!}\frac{(vw)^d}{d!} g_B f_{(B)}^d f_{(W)}^{a+1}`."""
    out = {}
    for n in range(1, (trunc.joint or trunc.x) + 1):
        for d in range((trunc.joint or trunc.v) + 1):
            m = Monomial(BLACK, fmultiset(*([BLACK] * d), *([WHITE] * n)), n, 0, d, d)
            out[m] = Fraction(1, factorial(n) * factorial(d))
    return _series(out, trunc)


@lru_cache(maxsize=16)
def closed_Gamma(g: int, trunc: Truncation, variant: bool = False) -> SymbolicSolution:
    r"""
    `\Gamma^{(0)} = g_B(e^{xf_{(W)}}-1)(\phi_{0,0} + wf_{(B)}\phi_{0,1})`, the
    explicit genus-1 combination of `\tau_{R,S}`, and for genus 2 one
    recursion step from the closed forms of `B^{(2)}` and `\Gamma^{(1)}`.
    """
    trunc = _engine(trunc)
    fB = _f(BLACK, trunc)
    if g == 0:
        E1 = _E1(trunc)
        return SymbolicSolution("Gamma", 0, {(BLACK, (0, 0)): E1,
                                             (BLACK, (0, 1)): (E1 * fB).shift(w=1)}, trunc)
    if g == 1:
        X, E1 = _X(trunc), _E1(trunc)
        P1 = Series(phi_y(1, trunc).terms, trunc)
        P2 = Series(phi_y(2, trunc).terms, trunc)
        w = Series.var("w", trunc)
        fBW, fBBW, fBB = _f("BW", trunc), _f("BBW", trunc), _f("BB", trunc)
        items = [
            (w * fB * X, "WW", (0, 1)),
            (X, "WW", (0, 0)),
            (w * w * E1, "BB", (0, 1)),
            (w * w * w * fB * E1, "BB", (0, 2)),
            (w * fBBW * P1 * X, "", (0, 0)),
            (w * fB * P1 * X, "BW", (0, 0)),
            (fBW * P1 * X, "W", (0, 0)),
            (w * fBB * fBW * P2 * X, "", (0, 0)),
            (w * fB * fBW * P2 * X, "B", (0, 0)),
            (w * fB * psi_sums_torus(trunc), "", (0, 0)),
        ]
        return gamma_solve(closed_B(1, trunc), _forcing(trunc, items))
    if g == 2:
        B2 = closed_B(2, trunc, variant)
        return gamma_solve(B2, gamma_forcing(B2, closed_Gamma(1, trunc)))
    raise UnsupportedGenusError(f"no closed form for Gamma at genus {g}")


# the three paths ------------------------------------------------------------

@lru_cache(maxsize=8)
def _iterative(trunc: Truncation):
    t = _engine(trunc)
    B = solve_B(a_series(t), t)
    return B, solve_Gamma(B, t)


def _check_path(g: int, path: Path):
    if g < 0:
        raise ValueError("genus must be nonnegative")
    if path is Path.CLOSED_FORM and g not in CLOSED_GENERA:
        raise UnsupportedGenusError(
            f"closed forms cover genus 0-2 only; use the {Path.PROCEDURAL.value} or "
            f"{Path.ITERATIVE.value} path for genus {g}")


def b_genus(g: int, order=DEFAULT_ORDER, path: Path = Path.CLOSED_FORM) -> Series:
    """`B^{(g)}` (carrying `u^{2g}`) along the requested path."""
    trunc, path = truncation(order), Path(path)
    _check_path(g, path)
    if path is Path.CLOSED_FORM:
        return closed_B(g, trunc).materialize()
    if path is Path.PROCEDURAL:
        return symbolic_B(g, trunc).materialize()
    if path is Path.ITERATIVE:
        return Series(_iterative(trunc)[0].genus_slice(g).terms, trunc)
    raise ValueError(f"path {path.value} does not produce B")


def gamma_genus(g: int, order=DEFAULT_ORDER, path: Path = Path.CLOSED_FORM) -> Series:
    r"""
    `\Gamma^{(g)}` (carrying `u^{2g}`). ``APPENDIX_TABLE`` is genus 2 only and
    returns the forgotten series.
    """
    trunc, path = truncation(order), Path(path)
    _check_path(g, path)
    if path is Path.CLOSED_FORM:
        if g == 0:
            return gamma0_display(trunc)
        return closed_Gamma(g, trunc).materialize()
    if path is Path.PROCEDURAL:
        return symbolic_Gamma(g, trunc).materialize()
    if path is Path.ITERATIVE:
        return Series(_iterative(trunc)[1].genus_slice(g).terms, trunc)
    if g != 2:
        raise UnsupportedGenusError("the coefficient tables describe genus 2 only")
    from .appendix import reconstruct
    return reconstruct(trunc)


def solution(g: int, order=DEFAULT_ORDER, path: Path = Path.CLOSED_FORM) -> GenusSolution:
    return GenusSolution(g, b_genus(g, order, path), gamma_genus(g, order, path), Path(path))


@lru_cache(maxsize=64)
def forgotten_gamma(g: int, order=DEFAULT_ORDER, path: Path = Path.PROCEDURAL) -> Series:
    r"""`\langle\Gamma^{(g)}\rangle`, cached; the symbolic paths forget before expanding."""
    trunc, path = truncation(order), Path(path)
    _check_path(g, path)
    if path is Path.PROCEDURAL:
        return symbolic_Gamma(g, trunc).forgotten()
    if path is Path.CLOSED_FORM and g:
        return closed_Gamma(g, trunc).forgotten()
    if path is Path.APPENDIX_TABLE:
        return gamma_genus(g, trunc, path)
    return gamma_genus(g, trunc, path).forget()


@lru_cache(maxsize=64)
def forgotten_B(g: int, order=DEFAULT_ORDER, path: Path = Path.PROCEDURAL) -> Series:
    trunc, path = truncation(order), Path(path)
    _check_path(g, path)
    if path is Path.PROCEDURAL:
        return symbolic_B(g, trunc).forgotten()
    if path is Path.CLOSED_FORM:
        return closed_B(g, trunc).forgotten()
    return b_genus(g, trunc, path).forget()


def _window(trunc: Truncation, var: str) -> Truncation:
    cap = getattr(trunc, var)
    joint = None if trunc.joint is None else trunc.joint - 1
    return trunc._replace(**{var: None if cap is None else cap - 1}, joint=joint)


def residual_B(g: int, order=6, path: Path = Path.CLOSED_FORM) -> Series:
    r"""
    `(\partial_y - C')\hat B^{(g)} - u^2 J'B^{(g-1)}` with `\hat B = B - B|_{y=0}`,
    on the window where it is exactly determined. Empty when the equation holds.
    """
    if g < 1:
        raise ValueError("the recursion starts at genus 1")
    trunc = truncation(order)
    B, prev = b_genus(g, trunc, path), b_genus(g - 1, trunc, path)
    hat = B - B.at_zero("y")
    res = hat.derivative("y") - apply(OperatorKind.C_PRIME, hat) - apply(OperatorKind.J_PRIME, prev, raise_u=2)
    return res.truncate(_window(trunc, "y"))


def residual_Gamma(g: int, order=6, path: Path = Path.CLOSED_FORM) -> Series:
    r"""
    `(\partial_v - C'')\hat\Gamma^{(g)} - u^2 J''\Gamma^{(g-1)} - C''B^{(g)}` with
    `\hat\Gamma = \Gamma - B`, on the exactly determined window.
    """
    if g < 1:
        raise ValueError("the recursion starts at genus 1")
    trunc = truncation(order)
    B, G, prev = b_genus(g, trunc, path), gamma_genus(g, trunc, path), gamma_genus(g - 1, trunc, path)
    hat = G - B
    res = (hat.derivative("v") - apply(OperatorKind.C_DPRIME, hat)
           - apply(OperatorKind.J_DPRIME, prev, raise_u=2) - apply(OperatorKind.C_DPRIME, B))
    return res.truncate(_window(trunc, "v"))


# counts -----------------------------------------------------------------------

def _C(n, k):
    return comb(n, k) if 0 <= k <= n else 0


def ab00_torus_count(a: int, b: int) -> int:
    """`(a,b,0,0)`-dipoles on the torus for `b \\ge 1`: `b(a+1)`."""
    return b * (a + 1)


def _torus_psi(a: int) -> int:
    return psi_hook(3, a - 2) + psi_hook(2, a - 3, 2)


def abcd_torus_count(a: int, b: int, c: int, d: int) -> int:
    r"""
    `(a,b,c,d)`-dipoles on the torus in closed form.

    ==========  ==========  =====================================================
    `b`         `c`         count
    ==========  ==========  =====================================================
    `\ge 1`     `0`         `(a+1)b(d+1)` (`b(a+1)` when `d=0`)
    `\ge 1`     `\ge 1`     `(a+1)(d+1)`
    `0`         `0`         `\binom{d+2}{d-2} + \psi_{(3,1^{a-2})} + \psi_{(2^2,1^{a-3})}`
    `0`         `1`         `(a+1)(d+1)`
    `0`         `\ge 2`     `(a+1)c(d+1)`
    ==========  ==========  =====================================================

    EXAMPLES::

        >>> abcd_torus_count(0, 1, 1, 0), abcd_torus_count(1, 0, 2, 1)
        (1, 8)
    """
    if min(a, b, c, d) < 0:
        raise ValueError("a, b, c, d must be nonnegative")
    if b >= 1:
        return (a + 1) * b * (d + 1) if c == 0 else (a + 1) * (d + 1)
    if c == 0:
        return _C(d + 2, d - 2) + _torus_psi(a)
    if c == 1:
        return (a + 1) * (d + 1)
    return (a + 1) * c * (d + 1)


def abcd_torus_count_variant(a: int, b: int, c: int, d: int) -> int:
    r"""
    A torus case split with `\psi_{(3,1^{a-1})} + \psi_{(2^2,1^{a-4})}` added in the
    `c = 0, d > 0` cases. It disagrees with enumeration; kept for comparison.
    """
    if c + d == 0:
        return ab00_torus_count(a, b) if b else _torus_psi(a)
    extra = psi_hook(3, a - 1) + psi_hook(2, a - 4, 2)
    if b >= 1:
        return (a + 1) * b * (d + 1) + extra if c == 0 else (a + 1) * (d + 1)
    if c == 0:
        return _C(d + 2, d - 2) + extra
    return (a + 1) * (d + 1) if c == 1 else (a + 1) * c * (d + 1)


def ab00_double_torus_count(a: int, b: int) -> int:
    r"""
    `(a,b,0,0)`-dipoles on the double torus, `b \ge 1`:
    `3(a+1)\binom{b+2}{5} + a(a+1)\binom{b+2}{4} + 2(a+1)\binom{b+1}{5}
    + a(a+1)\binom{b+1}{4} + (3\binom{b+2}{3} + (a-2)b)\psi_{(3,1^{a-2})}
    + (4\binom{b+1}{2} + (a-3)b)\psi_{(2^2,1^{a-3})}`.
    For `b = 0` this is the genus-2 central count with `a+1` edges.

    EXAMPLES::

        >>> ab00_double_torus_count(2, 3)
        75
    """
    if a < 0 or b < 0:
        raise ValueError("a, b must be nonnegative")
    if b == 0:
        return rooted_count(a + 1, 2)
    A = a + 1
    return (3 * A * _C(b + 2, 5) + a * A * _C(b + 2, 4) + 2 * A * _C(b + 1, 5) + a * A * _C(b + 1, 4)
            + (3 * _C(b + 2, 3) + (a - 2) * b) * psi_hook(3, a - 2)
            + (4 * _C(b + 1, 2) + (a - 3) * b) * psi_hook(2, a - 3, 2))


def _order_for(n: int, order) -> Union[int, Truncation]:
    if order is None:
        return max(DEFAULT_ORDER, n - 1)
    return order


def _integral(val: Fraction, what: str) -> int:
    if val.denominator != 1 or val < 0:
        raise ArithmeticError(f"{what} evaluated to {val}")
    return int(val)


def abcd_count(a: int, b: int, c: int, d: int, g: int, order=None,
               path: Path = Path.PROCEDURAL) -> int:
    """Genus-``g`` `(a,b,c,d)`-dipoles, by coefficient extraction."""
    if min(a, b, c, d) < 0:
        raise ValueError("a, b, c, d must be nonnegative")
    n = a + b + c + d + 2
    s = forgotten_gamma(g, _order_for(n, order), Path(path))
    return _integral(egf_coeff(s, a + 1, b, c + d, d, g), f"abcd({a},{b},{c},{d};{g})")


def validate_pqn(p: int, q: int, n: int, g: int):
    if n < 2:
        raise ValueError("a bi-rooted dipole has n >= 2")
    if not (1 <= p <= n - 1 and 1 <= q <= n - 1):
        raise ValueError(f"need 1 <= p, q <= n-1, got p={p}, q={q}, n={n}")
    if g < 0:
        raise ValueError("genus must be nonnegative")


def pqn_from_series(s: Series, p: int, q: int, n: int, g: int) -> int:
    r"""
    `\sum_{0\le b\le p-1}[v^{n-q-1}/(n-q-1)!\; y^b/b!\; w^{p-1-b}\; x^{q-b}/(q-b)!\; u^{2g}]` of ``s``.
    """
    total = Fraction(0)
    for b in range(p):
        if q - b < 1:
            break
        total += egf_coeff(s, q - b, b, n - q - 1, p - 1 - b, g)
    return _integral(total, f"pqn({p},{q},{n};{g})")


def pqn_count(p: int, q: int, n: int, g: int, order=None, path: Path = Path.PROCEDURAL) -> int:
    """Genus-``g`` `(p,q,n)`-dipoles."""
    validate_pqn(p, q, n, g)
    return pqn_from_series(forgotten_gamma(g, _order_for(n, order), Path(path)), p, q, n, g)


@dataclass
class CountTable:
    """Rows of counts keyed by ``columns[:-1]``; the last column is the count."""

    columns: tuple
    rows: list = field(default_factory=list)

    def as_dict(self) -> dict:
        return {r[:-1]: r[-1] for r in self.rows}

    def get(self, *key) -> int:
        return self.as_dict().get(tuple(key), 0)

    def to_json(self) -> str:
        return json.dumps({"columns": list(self.columns),
                           "rows": [dict(zip(self.columns, r)) for r in self.rows]}, indent=1)

    @classmethod
    def from_json(cls, text: str) -> "CountTable":
        doc = json.loads(text)
        cols = tuple(doc["columns"])
        return cls(cols, [tuple(r[c] for c in cols) for r in doc["rows"]])

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(self.columns)
        w.writerows(self.rows)
        return buf.getvalue()


def phi_count_table(n_max: int, g_max: int, order=None, path: Path = Path.PROCEDURAL,
                    genera=None) -> CountTable:
    """All `(p,q,n,g)` counts for ``2 <= n <= n_max``, ``g <= g_max`` (or ``g in genera``)."""
    if n_max < 2:
        raise ValueError("n_max must be at least 2")
    order = _order_for(n_max, order)
    rows = []
    for g in (range(g_max + 1) if genera is None else genera):
        s = forgotten_gamma(g, order, Path(path))
        for n in range(2, n_max + 1):
            for p in range(1, n):
                for q in range(1, n):
                    rows.append((p, q, n, g, pqn_from_series(s, p, q, n, g)))
    rows.sort(key=lambda r: (r[2], r[3], r[0], r[1]))
    return CountTable(("p", "q", "n", "g", "count"), rows)

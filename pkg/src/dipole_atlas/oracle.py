r"""
Brute-force enumeration of rooted and bi-rooted dipoles as rotation systems.

The root vertex has counterclockwise rotation `1,2,\dots,n` with root edge
`1`. The other vertex is described by its counterclockwise cyclic sequence
``rotation2 = (1, p_1, ..., p_{n-1})``; ``succ[e]`` is the edge after ``e`` in
that sequence. Corner `c_j` of the root vertex sits between edges `j` and
`j+1`, and the face permutation on these corners is
`\kappa(j) = succ(j+1)`. Faces of degree `2k` are the `k`-cycles of
`\kappa`; the planar rotation is ``succ[e] = e - 1``.

The hot loop (all rotations times all secondary edges) runs in a compiled
kernel when available and in :mod:`dipole_atlas._sweep_py` otherwise; set
``DIPOLE_ATLAS_PURE=1`` to force the Python kernel.
"""
from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import permutations
from math import factorial
from typing import NamedTuple, Optional

from .series import Monomial, Series, Truncation, fmultiset
from .strings import BLACK, WHITE

if os.environ.get("DIPOLE_ATLAS_PURE"):
    from ._sweep_py import sweep as _sweep
    KERNEL = "python"
else:
    try:
        from ._sweep_c import sweep as _sweep
        KERNEL = "cython"
    except ImportError:  # extension not built
        from ._sweep_py import sweep as _sweep
        KERNEL = "python"

MAX_N = 10


class ResourceGuardError(RuntimeError):
    """Refused to enumerate a factorially large universe."""


class CalibrationError(RuntimeError):
    """The region conventions could not be pinned down uniquely."""


def _guard(n: int, allow_large: bool):
    if n < 1:
        raise ValueError("a dipole has at least one edge")
    if n > MAX_N and not allow_large:
        raise ResourceGuardError(f"n={n} exceeds {MAX_N}; pass allow_large=True to insist")


class Convention(NamedTuple):
    """
    Which sector is Region 1 (root vertex) and Region 3 (other vertex).

    ``root_ccw``: Region 1 is swept counterclockwise from the root edge to
    the secondary edge. ``nonroot_forward``: Region 3 holds the edges met
    between the root edge and the secondary edge going along ``rotation2``.
    """

    root_ccw: bool = True
    nonroot_forward: bool = True


STANDARD = Convention(True, True)
CONVENTIONS = tuple(Convention(a, b) for a in (True, False) for b in (True, False))


class JumpStats(NamedTuple):
    rho: int
    nu: int
    alpha: int
    beta: int
    gamma: int
    delta: int

    @property
    def edge_classes(self):
        return self.alpha, self.beta, self.gamma, self.delta


def classes_from_cells(n11, n12, n21, n22, conv: Convention = STANDARD):
    r"""
    Edge classes `(\alpha,\beta,\gamma,\delta)` from the contingency table
    of (below the secondary at the root vertex) x (before it along
    ``rotation2``).
    """
    cells = {(True, True): n11, (True, False): n12, (False, True): n21, (False, False): n22}
    acc = {"a": 0, "b": 0, "c": 0, "d": 0}
    for (below, before), k in cells.items():
        r1 = below if conv.root_ccw else not below
        r3 = before if conv.nonroot_forward else not before
        key = {(False, True): "a", (True, True): "b", (False, False): "c", (True, False): "d"}[(r1, r3)]
        acc[key] += k
    return acc["a"], acc["b"], acc["c"], acc["d"]


def stats_from_classes(a, b, c, d) -> JumpStats:
    return JumpStats(b + d + 1, a + b + 1, a, b, c, d)


@dataclass(frozen=True)
class Dipole:
    n: int
    rotation2: tuple
    secondary: Optional[int] = None

    def __post_init__(self):
        if sorted(self.rotation2) != list(range(1, self.n + 1)) or self.rotation2[0] != 1:
            raise ValueError("rotation2 must be a permutation of 1..n starting with 1")
        if self.secondary is not None and not 2 <= self.secondary <= self.n:
            raise ValueError("secondary edge must be one of 2..n")

    @property
    def succ(self) -> dict:
        seq = self.rotation2
        return {seq[i]: seq[(i + 1) % self.n] for i in range(self.n)}

    @property
    def pos(self) -> dict:
        return {e: i for i, e in enumerate(self.rotation2)}

    def kappa(self) -> dict:
        """Face permutation on root-vertex corners."""
        succ = self.succ
        return {j: succ[j % self.n + 1] for j in range(1, self.n + 1)}

    def face_cycles(self, inverse: bool = False) -> list:
        k = self.kappa()
        if inverse:
            k = {b: a for a, b in k.items()}
        seen, out = set(), []
        for j in range(1, self.n + 1):
            if j in seen:
                continue
            cyc, c = [], j
            while c not in seen:
                seen.add(c)
                cyc.append(c)
                c = k[c]
            out.append(cyc)
        return out

    @property
    def m(self) -> int:
        return len(self.face_cycles())

    @property
    def genus(self) -> int:
        return (self.n - self.m) // 2

    def with_secondary(self, s: int) -> "Dipole":
        return Dipole(self.n, self.rotation2, s)


def enumerate_dipoles(n: int, allow_large: bool = False):
    """Every rooted dipole with ``n`` edges, once each ((n-1)! of them)."""
    _guard(n, allow_large)
    for tail in permutations(range(2, n + 1)):
        yield Dipole(n, (1,) + tail)


def enumerate_birooted(n: int, allow_large: bool = False):
    """Every (rooted dipole, secondary edge) pair: (n-1)!(n-1) of them."""
    for d in enumerate_dipoles(n, allow_large):
        for s in range(2, n + 1):
            yield d.with_secondary(s)


def faces(d: Dipole) -> tuple:
    """Face degrees in decreasing order (they sum to ``2n``)."""
    return tuple(sorted((2 * len(c) for c in d.face_cycles()), reverse=True))


def jumps(d: Dipole, conv: Convention = STANDARD) -> JumpStats:
    if d.secondary is None:
        raise ValueError("jumps need a secondary edge")
    s, pos = d.secondary, d.pos
    n11 = n12 = n21 = n22 = 0
    for e in range(2, d.n + 1):
        if e == s:
            continue
        before = pos[e] < pos[s]
        if e < s:
            n11 += before
            n12 += not before
        else:
            n21 += before
            n22 += not before
    return stats_from_classes(*classes_from_cells(n11, n12, n21, n22, conv))


# histograms ----------------------------------------------------------------

@lru_cache(maxsize=None)
def _sweep_cached(n: int):
    return _sweep(n)


def sweep(n: int, allow_large: bool = False):
    """``(jump histogram, face histogram)`` from the selected kernel."""
    _guard(n, allow_large)
    return _sweep_cached(n)


def abcd_histogram(n: int, conv: Convention = STANDARD, allow_large: bool = False) -> dict:
    """``(a, b, c, d, genus) -> count`` over bi-rooted dipoles with ``n`` edges."""
    out = {}
    for (g, n11, n12, n21, n22), k in sweep(n, allow_large)[0].items():
        key = classes_from_cells(n11, n12, n21, n22, conv) + (g,)
        out[key] = out.get(key, 0) + k
    return out


def pqn_histogram(n: int, conv: Convention = STANDARD, allow_large: bool = False) -> dict:
    """``(p, q, genus) -> count``."""
    out = {}
    for (a, b, c, d, g), k in abcd_histogram(n, conv, allow_large).items():
        st = stats_from_classes(a, b, c, d)
        key = (st.rho, st.nu, g)
        out[key] = out.get(key, 0) + k
    return out


def face_histogram(n: int, allow_large: bool = False) -> dict:
    """Half face-degree partition -> number of rooted dipoles."""
    return dict(sweep(n, allow_large)[1])


@dataclass(frozen=True)
class PQN:
    p: int
    q: int
    n: int
    g: int


@dataclass(frozen=True)
class ABCD:
    a: int
    b: int
    c: int
    d: int
    g: int

    @property
    def n(self):
        return self.a + self.b + self.c + self.d + 2


@dataclass(frozen=True)
class FaceSeq:
    """Half face-degree partition `\\lambda` (faces of degree `2\\lambda_i`)."""

    parts: tuple

    @property
    def n(self):
        return sum(self.parts)


def count(flt, conv: Convention = STANDARD, allow_large: bool = False) -> int:
    """Exhaustive count for a :class:`PQN`, :class:`ABCD` or :class:`FaceSeq` filter."""
    if isinstance(flt, PQN):
        if flt.n < 2:
            return 0
        return pqn_histogram(flt.n, conv, allow_large).get((flt.p, flt.q, flt.g), 0)
    if isinstance(flt, ABCD):
        if min(flt.a, flt.b, flt.c, flt.d) < 0:
            return 0
        return abcd_histogram(flt.n, conv, allow_large).get(
            (flt.a, flt.b, flt.c, flt.d, flt.g), 0)
    if isinstance(flt, FaceSeq):
        lam = tuple(sorted(flt.parts, reverse=True))
        return face_histogram(flt.n, allow_large).get(lam, 0)
    raise TypeError(f"unknown filter {flt!r}")


def parse_filter(text: str):
    """``pqn:p,q,n,g``, ``abcd:a,b,c,d,g`` or ``face:l1,l2,...``."""
    kind, _, rest = text.partition(":")
    vals = tuple(int(t) for t in rest.replace(" ", "").split(",") if t)
    kind = kind.strip().lower()
    if kind == "pqn" and len(vals) == 4:
        return PQN(*vals)
    if kind == "abcd" and len(vals) == 5:
        return ABCD(*vals)
    if kind in ("face", "face_seq") and vals:
        return FaceSeq(vals)
    raise ValueError(f"cannot parse filter {text!r}")


# corner marks and the full marked series -----------------------------------

def corner_marks(d: Dipole, conv: Convention = STANDARD) -> dict:
    """BLACK for corners inside Region 1, WHITE otherwise."""
    s = d.secondary
    inside = range(1, s) if conv.root_ccw else range(s, d.n + 1)
    return {j: (BLACK if j in inside else WHITE) for j in range(1, d.n + 1)}


def marked_monomial(d: Dipole, conv: Convention = STANDARD, inverse_walk: bool = True):
    r"""
    ``(Monomial, coefficient)`` of the instance in the `(a,b,c,d)` series:
    `g_{R(D)} f_{\Lambda(D)} x^{a+1}y^b v^{c+d} w^d u^{2g}` over
    `(a+1)!\,b!\,(c+d)!`.

    The root string is read from the root corner `c_1`; ``inverse_walk``
    selects `\kappa^{-1}` (leaving the root corner along the root edge) as
    the walking direction.
    """
    marks = corner_marks(d, conv)
    R, fs = None, []
    for cyc in d.face_cycles(inverse=inverse_walk):
        word = "".join(marks[c] for c in cyc)
        if cyc[0] == 1:
            R = word
        else:
            fs.append(word)
    st = jumps(d, conv)
    a, b, c, dd = st.edge_classes
    m = Monomial(R, fmultiset(*fs), a + 1, b, c + dd, dd, 2 * d.genus)
    return m, Fraction(1, factorial(a + 1) * factorial(b) * factorial(c + dd))


def oracle_gamma(n_max: int, conv: Convention = STANDARD, inverse_walk: bool = True,
                 trunc: Optional[Truncation] = None) -> Series:
    """The full marked series assembled instance by instance, ``2 <= n <= n_max``."""
    if trunc is None:
        trunc = Truncation.uniform(n_max - 1)
    out = {}
    for n in range(2, n_max + 1):
        for d in enumerate_birooted(n):
            m, c = marked_monomial(d, conv, inverse_walk)
            out[m] = out.get(m, 0) + c
    return Series(out, trunc)


# calibration ---------------------------------------------------------------

@dataclass
class Calibration:
    selected: Convention
    report: dict  # Convention -> (genus-0 law holds, torus closed forms hold)


def calibrate(max_n: int = 7) -> Calibration:
    r"""
    Pick the region convention reproducing the planar law `[p+q=n]` and the
    torus closed forms for all ``n <= max_n``. Swapping the roles of the root
    and the secondary edge is a bijection that exchanges ``(True, True)``
    with ``(False, False)``, so counts alone can never separate that pair;
    the tie is broken by requiring the root corner to lie in Region 1.
    """
    from .genus import abcd_torus_count

    report = {}
    for conv in CONVENTIONS:
        planar = all(
            pqn_histogram(n, conv).get((p, q, 0), 0) == (1 if p + q == n else 0)
            for n in range(2, max_n + 1) for p in range(1, n) for q in range(1, n))
        torus = True
        for n in range(2, max_n + 1):
            hist = abcd_histogram(n, conv)
            for a in range(n - 1):
                for b in range(n - 1 - a):
                    for c in range(n - 1 - a - b):
                        d = n - 2 - a - b - c
                        if hist.get((a, b, c, d, 1), 0) != abcd_torus_count(a, b, c, d):
                            torus = False
        report[conv] = (planar, torus)
    passing = [c for c, ok in report.items() if all(ok)]
    rooted = [c for c in passing if c.root_ccw]
    if len(rooted) != 1:
        raise CalibrationError(f"no unique convention: {report}")
    return Calibration(rooted[0], report)

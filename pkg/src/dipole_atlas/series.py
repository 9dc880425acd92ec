r"""
Exact truncated series in the indeterminates `g_R`, `f_{(S)}`, `x`, `y`, `v`,
`w`, `u`.

Coefficients are ordinary (not exponential) :class:`fractions.Fraction`
values; the factorials of the EGF conventions are only applied by
:func:`egf_coeff`. A :class:`Monomial` carries at most one `g` factor, as
every series of combinatorial origin here is linear in those.

Truncation is a window on the degrees of `x`, `y`, `v`, optionally a bound on
`x+y+v` (``joint``) and on the genus (``genus``, i.e. half the `u` degree).
None of the operators used downstream lowers these degrees, so truncating
early never changes the coefficients that survive.
"""
from __future__ import annotations

import json
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import NamedTuple, Optional

from .strings import canonical, check_string


class LinearityError(ValueError):
    """A product would contain two `g`-type factors."""


class TruncationError(ValueError):
    """A coefficient outside the tracked window was requested."""


def _min(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


class Truncation(NamedTuple):
    x: Optional[int] = 8
    y: Optional[int] = 8
    v: Optional[int] = 8
    joint: Optional[int] = None
    genus: Optional[int] = None

    @classmethod
    def uniform(cls, order: int, genus: Optional[int] = None) -> "Truncation":
        """Cap every variable and their sum at ``order``."""
        return cls(order, order, order, order, genus)

    def meet(self, other: "Truncation") -> "Truncation":
        if self == other:
            return self
        return Truncation(*(_min(a, b) for a, b in zip(self, other)))

    def admits(self, x, y, v, u) -> bool:
        if self.x is not None and x > self.x:
            return False
        if self.y is not None and y > self.y:
            return False
        if self.v is not None and v > self.v:
            return False
        if self.joint is not None and x + y + v > self.joint:
            return False
        if self.genus is not None and u > 2 * self.genus:
            return False
        return True

    def admits_monomial(self, m: "Monomial") -> bool:
        return self.admits(m.x, m.y, m.v, m.u)

    def describe(self) -> str:
        return ",".join(f"{k}={'inf' if val is None else val}" for k, val in self._asdict().items())


UNBOUNDED = Truncation(None, None, None, None, None)
DEFAULT = Truncation()


class Monomial(NamedTuple):
    r"""
    `g_R \prod f_{(S)}^{k_S} x^x y^y v^v w^w u^u`.

    ``f`` is a tuple of ``(canonical cyclic string, multiplicity)`` pairs
    sorted by string; ``u`` is the (even) exponent of `u`.
    """

    g: Optional[str] = None
    f: tuple = ()
    x: int = 0
    y: int = 0
    v: int = 0
    w: int = 0
    u: int = 0


ONE = Monomial()


def fmultiset(*cycles) -> tuple:
    """Build an ``f`` tuple from words (any rotation), with repetition."""
    acc = {}
    for c in cycles:
        c = canonical(check_string(c))
        acc[c] = acc.get(c, 0) + 1
    return tuple(sorted(acc.items()))


@lru_cache(maxsize=1 << 18)
def fmul(a: tuple, b: tuple) -> tuple:
    if not a:
        return b
    if not b:
        return a
    acc = dict(a)
    for c, k in b:
        acc[c] = acc.get(c, 0) + k
    return tuple(sorted(acc.items()))


@lru_cache(maxsize=1 << 18)
def fadd(f: tuple, cyc: str, k: int = 1) -> tuple:
    """Multiply the multiset by ``f_(cyc)^k``; ``cyc`` must be canonical."""
    acc = dict(f)
    acc[cyc] = acc.get(cyc, 0) + k
    return tuple(sorted(acc.items()))


@lru_cache(maxsize=1 << 18)
def fremove(f: tuple, cyc: str) -> tuple:
    """Remove one copy of ``f_(cyc)``."""
    out = []
    for c, k in f:
        if c == cyc:
            if k > 1:
                out.append((c, k - 1))
        else:
            out.append((c, k))
    return tuple(out)


def fdegree(f: tuple) -> int:
    return sum(k for _, k in f)


def mono(g=None, f=(), x=0, y=0, v=0, w=0, u=0) -> Monomial:
    """Convenience constructor; ``f`` may be a list of words."""
    if f and isinstance(f[0], str):
        f = fmultiset(*f)
    elif f:
        f = tuple(sorted((canonical(c), k) for c, k in f))
    if g is not None:
        check_string(g)
    if u % 2:
        raise ValueError("u degree must be even")
    return Monomial(g, tuple(f), x, y, v, w, u)


def _mul_mono(a: Monomial, b: Monomial) -> Monomial:
    if a.g is not None and b.g is not None:
        raise LinearityError(f"product of g_{a.g} and g_{b.g}")
    return Monomial(
        a.g if a.g is not None else b.g,
        fmul(a.f, b.f),
        a.x + b.x, a.y + b.y, a.v + b.v, a.w + b.w, a.u + b.u,
    )


def sort_key(m: Monomial):
    """Total order used for serialization: degrees, then g, then f."""
    return (m.u, m.x, m.y, m.v, m.w,
            (0, "") if m.g is None else (1, m.g),
            tuple((len(c), c, k) for c, k in m.f))


class Series:
    r"""
    A finite map :class:`Monomial` `\to` :class:`~fractions.Fraction`
    together with its :class:`Truncation`.

    Series are treated as immutable values. Equality compares the terms
    only; bring operands to a common window with :meth:`truncate` first when
    their truncations differ.
    """

    __slots__ = ("terms", "trunc")

    def __init__(self, terms=None, trunc: Truncation = DEFAULT, *, clean=True):
        self.trunc = trunc
        if terms is None:
            self.terms = {}
        elif clean:
            admits = trunc.admits
            self.terms = {m: Fraction(c) for m, c in terms.items()
                          if c and admits(m.x, m.y, m.v, m.u)}
        else:
            self.terms = terms

    # construction -----------------------------------------------------
    @classmethod
    def zero(cls, trunc=DEFAULT):
        return cls({}, trunc, clean=False)

    @classmethod
    def one(cls, trunc=DEFAULT):
        return cls({ONE: Fraction(1)}, trunc)

    @classmethod
    def monomial(cls, m: Monomial, coeff=1, trunc=DEFAULT):
        return cls({m: Fraction(coeff)}, trunc)

    @classmethod
    def var(cls, name: str, trunc=DEFAULT, power: int = 1):
        """The series consisting of a single power of x, y, v, w or u."""
        if name == "u":
            return cls({Monomial(u=power): Fraction(1)}, trunc)
        return cls({Monomial()._replace(**{name: power}): Fraction(1)}, trunc)

    @classmethod
    def g(cls, word: str, trunc=DEFAULT):
        return cls({Monomial(g=check_string(word)): Fraction(1)}, trunc)

    @classmethod
    def f(cls, word: str, trunc=DEFAULT, power: int = 1):
        return cls({Monomial(f=((canonical(check_string(word)), power),)): Fraction(1)}, trunc)

    # basic protocol ---------------------------------------------------
    def __len__(self):
        return len(self.terms)

    def __bool__(self):
        return bool(self.terms)

    def __iter__(self):
        return iter(self.items())

    def items(self):
        return sorted(self.terms.items(), key=lambda t: sort_key(t[0]))

    def coeff(self, m: Monomial) -> Fraction:
        return self.terms.get(m, Fraction(0))

    def __eq__(self, other):
        if isinstance(other, Series):
            return self.terms == other.terms
        if other == 0:
            return not self.terms
        return NotImplemented

    __hash__ = None

    def __repr__(self):
        if not self.terms:
            return "0"
        shown = " + ".join(_fmt_term(m, c) for m, c in self.items()[:12])
        more = "" if len(self.terms) <= 12 else f" + ... ({len(self.terms)} terms)"
        return shown + more

    # arithmetic -------------------------------------------------------
    def truncate(self, trunc: Truncation) -> "Series":
        t = self.trunc.meet(trunc)
        return Series(self.terms, t)

    def __add__(self, other):
        if not isinstance(other, Series):
            if other == 0:
                return self
            other = Series({ONE: Fraction(other)}, self.trunc)
        trunc = self.trunc.meet(other.trunc)
        out = dict(self.terms) if trunc == self.trunc else {
            m: c for m, c in self.terms.items() if trunc.admits(m.x, m.y, m.v, m.u)}
        admits = trunc.admits
        for m, c in other.terms.items():
            if not admits(m.x, m.y, m.v, m.u):
                continue
            s = out.get(m, 0) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return Series(out, trunc, clean=False)

    __radd__ = __add__

    def __neg__(self):
        return Series({m: -c for m, c in self.terms.items()}, self.trunc, clean=False)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, k) -> "Series":
        k = Fraction(k)
        if not k:
            return Series.zero(self.trunc)
        return Series({m: c * k for m, c in self.terms.items()}, self.trunc, clean=False)

    def __mul__(self, other):
        if not isinstance(other, Series):
            return self.scale(other)
        trunc = self.trunc.meet(other.trunc)
        admits = trunc.admits
        out = {}
        for a, ca in self.terms.items():
            for b, cb in other.terms.items():
                x, y, v, u = a.x + b.x, a.y + b.y, a.v + b.v, a.u + b.u
                if not admits(x, y, v, u):
                    continue
                if a.g is not None and b.g is not None:
                    raise LinearityError(f"product of g_{a.g} and g_{b.g}")
                m = Monomial(a.g if a.g is not None else b.g, fmul(a.f, b.f),
                             x, y, v, a.w + b.w, u)
                out[m] = out.get(m, 0) + ca * cb
        return Series({m: c for m, c in out.items() if c}, trunc, clean=False)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        result = Series.one(self.trunc)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def map_monomials(self, fn, trunc=None) -> "Series":
        """Apply ``fn: Monomial -> Monomial`` termwise and collect."""
        out = {}
        for m, c in self.terms.items():
            m2 = fn(m)
            out[m2] = out.get(m2, 0) + c
        return Series(out, self.trunc if trunc is None else trunc)

    # calculus ---------------------------------------------------------
    def derivative(self, var: str) -> "Series":
        """Ordinary partial derivative in one of x, y, v, w."""
        out = {}
        for m, c in self.terms.items():
            e = getattr(m, var)
            if e:
                m2 = m._replace(**{var: e - 1})
                out[m2] = out.get(m2, 0) + c * e
        return Series({m: c for m, c in out.items() if c}, self.trunc, clean=False)

    def f_derivative(self, word: str) -> "Series":
        """Partial derivative with respect to `f_{(word)}`."""
        cyc = canonical(word)
        out = {}
        for m, c in self.terms.items():
            for s, k in m.f:
                if s == cyc:
                    m2 = m._replace(f=fremove(m.f, cyc))
                    out[m2] = out.get(m2, 0) + c * k
                    break
        return Series(out, self.trunc)

    # slicing ----------------------------------------------------------
    def select(self, **degrees) -> "Series":
        """Terms whose listed degrees equal the given values (kept in place)."""
        items = list(degrees.items())
        return Series({m: c for m, c in self.terms.items()
                       if all(getattr(m, k) == val for k, val in items)},
                      self.trunc, clean=False)

    def genus_slice(self, g: int) -> "Series":
        return self.select(u=2 * g)

    def at_zero(self, var: str) -> "Series":
        """Set one of x, y, v, w to zero."""
        return self.select(**{var: 0})

    def shift(self, **degrees) -> "Series":
        """Multiply by a monomial in x, y, v, w, u given as degree offsets."""
        def fn(m):
            return m._replace(**{k: getattr(m, k) + d for k, d in degrees.items()})
        return self.map_monomials(fn)

    def g_indices(self) -> set:
        return {m.g for m in self.terms}

    def max_degree(self, var: str) -> int:
        return max((getattr(m, var) for m in self.terms), default=-1)

    # forgetting -------------------------------------------------------
    def forget(self) -> "Series":
        return forget(self)


def _fmt_term(m: Monomial, c) -> str:
    parts = [] if c == 1 else [str(c)]
    if m.g is not None:
        parts.append(f"g_{m.g or 'e'}")
    for s, k in m.f:
        parts.append(f"f({s})" + (f"^{k}" if k > 1 else ""))
    for name in ("x", "y", "v", "w", "u"):
        e = getattr(m, name)
        if e:
            parts.append(name + (f"^{e}" if e > 1 else ""))
    return "*".join(parts) or "1"


def add(s1: Series, s2: Series) -> Series:
    return s1 + s2


def multiply(s1: Series, s2: Series) -> Series:
    return s1 * s2


def forget(s: Series) -> Series:
    r"""
    Set every `g`- and `f`-type indeterminate to 1.

    EXAMPLES::

        >>> s = Series.monomial(mono(g="BW", f=["W", "W"], x=3), 5)
        >>> forget(s)
        5*x^3
    """
    out = {}
    for m, c in s.terms.items():
        k = Monomial(None, (), m.x, m.y, m.v, m.w, m.u)
        out[k] = out.get(k, 0) + c
    return Series(out, s.trunc)


def is_forgotten(s: Series) -> bool:
    return all(m.g is None and not m.f for m in s.terms)


def egf_coeff(s: Series, a: int, b: int, m: int, d: int, g: int, *,
              g_index=None, f=()) -> Fraction:
    r"""
    `[x^a/a!\, y^b/b!\, v^m/m!\, w^d u^{2g}]` of ``s``.

    ``s`` must be free of `g`/`f` factors unless an explicit key is
    requested through ``g_index``/``f``.
    """
    if not s.trunc.admits(a, b, m, 2 * g):
        raise TruncationError(
            f"degree (x={a}, y={b}, v={m}, g={g}) outside truncation {s.trunc.describe()}")
    if g_index is None and not f and not is_forgotten(s):
        raise ValueError("series still carries g/f factors; apply forget() first")
    f = fmultiset(*f) if f and isinstance(f[0], str) else tuple(f)
    key = Monomial(g_index, f, a, b, m, d, 2 * g)
    return s.coeff(key) * factorial(a) * factorial(b) * factorial(m)


# serialization -------------------------------------------------------------

def term_to_json(m: Monomial, c: Fraction) -> dict:
    return {
        "g": m.g,
        "f": [{"cyc": f"({s})", "mult": k} for s, k in sorted(m.f, key=lambda t: (len(t[0]), t[0]))],
        "x": m.x, "y": m.y, "v": m.v, "w": m.w, "u": m.u,
        "coeff": str(c),
    }


def to_json(s: Series, indent=None) -> str:
    return json.dumps([term_to_json(m, c) for m, c in s.items()], indent=indent)


def from_json(text: str, trunc: Truncation = UNBOUNDED) -> Series:
    terms = {}
    for t in json.loads(text):
        f = tuple(sorted((canonical(check_string(e["cyc"].strip("()"))), int(e["mult"]))
                         for e in t["f"]))
        m = Monomial(t["g"], f, t["x"], t["y"], t["v"], t["w"], t["u"])
        terms[m] = terms.get(m, 0) + Fraction(t["coeff"])
    return Series(terms, trunc)


# common building blocks ----------------------------------------------------

def exp_series(var: str, trunc: Truncation, f_word: Optional[str] = None,
               scale_w: int = 0, start: int = 0) -> Series:
    r"""
    `\sum_{n \ge start} (t\, f_{(S)} w^{k})^n / n!` for ``t = var``.

    With ``f_word=None`` no `f` factor is attached.
    """
    cap = getattr(trunc, var)
    if trunc.joint is not None:
        cap = trunc.joint if cap is None else min(cap, trunc.joint)
    if cap is None:
        raise ValueError(f"unbounded truncation in {var}")
    cyc = canonical(f_word) if f_word is not None else None
    out = {}
    for n in range(start, cap + 1):
        f = ((cyc, n),) if (cyc is not None and n) else ()
        out[Monomial(None, f)._replace(**{var: n, "w": scale_w * n})] = Fraction(1, factorial(n))
    return Series(out, trunc)


def series_exp(s: Series, max_power: int = 256) -> Series:
    """exp(s) for a series without constant term."""
    if s.coeff(ONE):
        raise ValueError("series_exp needs a vanishing constant term")
    result = Series.one(s.trunc)
    term = Series.one(s.trunc)
    k = 1
    while True:
        if k > max_power:
            raise ValueError("series_exp did not terminate; truncation too loose")
        term = (term * s).scale(Fraction(1, k))
        if not term:
            break
        result = result + term
        k += 1
    return result

r"""
The tabulated genus-2 coefficients: loading, evaluation and reconciliation.

Each record of ``data/appendix_a.json`` gives the coefficient of
`\langle\tau_{R,i,j}\rangle` in `\langle\Gamma^{(2)}\rangle` as an arithmetic
expression. Expressions are parsed with :mod:`ast` and evaluated over a fixed
vocabulary of forgotten series; nothing else is accepted.
"""
from __future__ import annotations

import ast
import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from importlib import resources
from math import factorial

from .central import _x_cap, appendix_series, central_slice
from .phi import phi_y
from .series import Monomial, Series, Truncation
from .strings import check_string
from .tau import tau_rs_forgotten


@dataclass(frozen=True)
class AppendixRow:
    R: str
    i: int
    j: int
    expression: str

    @property
    def label(self) -> str:
        return f"tau[{self.R or 'e'},{self.i},{self.j}]"


@dataclass(frozen=True)
class Erratum:
    R: str
    i: int
    j: int
    tabulated: str
    corrected: str
    reason: str

    @property
    def key(self) -> tuple:
        return (self.R, self.i, self.j)


def _data(name: str) -> dict:
    return json.loads(resources.files("dipole_atlas").joinpath("data", name).read_text())


@lru_cache(maxsize=1)
def load_errata() -> tuple:
    return tuple(Erratum(check_string(r["R"]), r["i"], r["j"], r["tabulated"], r["corrected"],
                         r["reason"]) for r in _data("appendix_a_errata.json")["rows"])


@lru_cache(maxsize=2)
def load_rows(errata: bool = False) -> tuple:
    """The table rows; with ``errata=True`` the listed corrections are applied."""
    rows = tuple(AppendixRow(check_string(r["R"]), r["i"], r["j"], r["coefficient"])
                 for r in _data("appendix_a.json")["rows"])
    if len({(r.R, r.i, r.j) for r in rows}) != len(rows):
        raise ValueError("duplicate row in the coefficient table")
    if not errata:
        return rows
    fixes = {e.key: e for e in load_errata()}
    out = []
    for r in rows:
        e = fixes.pop((r.R, r.i, r.j), None)
        if e is not None:
            if e.tabulated != r.expression:
                raise ValueError(f"erratum for {r.label} does not match the tabulated entry")
            r = AppendixRow(r.R, r.i, r.j, e.corrected)
        out.append(r)
    if fixes:
        raise ValueError(f"errata for rows not in the table: {sorted(fixes)}")
    return tuple(out)


def _exp_x(trunc: Truncation) -> Series:
    return Series({Monomial(x=n): Fraction(1, factorial(n)) for n in range(_x_cap(trunc) + 1)},
                  trunc)


@lru_cache(maxsize=8)
def vocabulary(trunc: Truncation) -> dict:
    """The names an expression may use, bound to forgotten series."""
    env = {
        "x": Series.var("x", trunc),
        "w": Series.var("w", trunc),
        "ex": _exp_x(trunc),
        "D3": appendix_series("D3", trunc),
        "D22": appendix_series("D22", trunc),
        "D3s": appendix_series("D3STAR", trunc),
        "D22s": appendix_series("D22STAR", trunc),
        "C2": central_slice(2, trunc),
    }
    for k in range(1, 7):
        env[f"p{k}"] = phi_y(k, trunc).forget()
    return env


_BINOPS = {ast.Add: lambda a, b: a + b, ast.Sub: lambda a, b: a - b,
           ast.Mult: lambda a, b: a * b}


def evaluate(expression: str, trunc: Truncation):
    """Evaluate a coefficient expression; raises ``ValueError`` on anything unexpected."""
    env = vocabulary(trunc)

    def ev(node):
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant) and type(node.value) is int:
            return node.value
        if isinstance(node, ast.Name):
            if node.id not in env:
                raise ValueError(f"unknown symbol {node.id!r}")
            return env[node.id]
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, ast.USub):
            return -ev(node.operand)
        if isinstance(node, ast.BinOp):
            if type(node.op) in _BINOPS:
                return _BINOPS[type(node.op)](ev(node.left), ev(node.right))
            if isinstance(node.op, ast.Pow):
                e = ev(node.right)
                if type(e) is not int or e < 0:
                    raise ValueError("exponents must be nonnegative integer literals")
                return ev(node.left) ** e
        raise ValueError(f"unsupported syntax: {ast.dump(node)}")

    val = ev(ast.parse(expression, mode="eval"))
    return val if isinstance(val, Series) else Series.one(trunc).scale(val)


def procedure_B(trunc: Truncation, variant: bool = False):
    from .genus import closed_B
    from .recursion import symbolic_B
    return closed_B(2, trunc, variant=True) if variant else symbolic_B(2, trunc)


def procedure_rows(trunc: Truncation, variant: bool = False) -> dict:
    r"""
    The coefficient of each `\langle\tau_{R,i,j}\rangle` produced by the
    recursion, keyed ``(R, i, j)``. ``variant`` drives it with the `B^{(2)}`
    variant (see :func:`dipole_atlas.genus.closed_B`).
    """
    from .genus import closed_Gamma
    from .recursion import forcing_Gamma, forgotten_forcing, gamma_forcing

    trunc = trunc._replace(genus=None)
    if variant:
        forcing = gamma_forcing(procedure_B(trunc, True), closed_Gamma(1, trunc))
    else:
        forcing = forcing_Gamma(2, trunc)
    return {k: Series(s.terms, trunc) for k, s in forgotten_forcing(forcing).items()}


def procedure_total(trunc: Truncation, variant: bool = False) -> Series:
    r"""`\langle\Gamma^{(2)}\rangle` from the recursion (carries `u^4`)."""
    from .genus import closed_Gamma
    from .recursion import symbolic_Gamma

    t = trunc._replace(genus=None)
    sol = closed_Gamma(2, t, variant=True) if variant else symbolic_Gamma(2, t)
    return Series(sol.forgotten().terms, trunc)


def reconstruct(trunc: Truncation, include_B: bool = True, errata: bool = False,
                variant: bool = False) -> Series:
    r"""
    `\langle B^{(2)}\rangle + \sum_{\text{rows}} c_{R,i,j}\langle\tau_{R,i,j}\rangle`,
    carrying `u^4`. ``include_B=False`` drops the first term, ``errata``
    applies the listed corrections and ``variant`` uses the `B^{(2)}` variant.
    """
    out = Series.zero(trunc)
    for row in load_rows(errata):
        out = out + evaluate(row.expression, trunc) * tau_rs_forgotten(row.R, row.i, row.j, trunc)
    out = out.shift(u=4)
    if include_B:
        out = out + procedure_B(trunc._replace(genus=None), variant).forgotten()
    return Series(out.terms, trunc)


@dataclass
class RowDiff:
    key: tuple
    tabulated: Series
    derived: Series

    @property
    def label(self):
        R, i, j = self.key
        return f"tau[{R or 'e'},{i},{j}]"


@dataclass
class Reconciliation:
    """Outcome of comparing the tables with the recursion."""

    trunc: Truncation
    errata: bool
    variant: bool
    total_difference: Series
    row_diffs: list
    missing_rows: list
    extra_rows: list

    @property
    def ok(self) -> bool:
        """Totals agree (rows may be attributed differently)."""
        return not self.total_difference

    def coefficient_mismatches(self) -> list:
        """``[((x, y, v, w), tables - recursion)]`` over every differing (ordinary) coefficient."""
        return [((m.x, m.y, m.v, m.w), c) for m, c in self.total_difference.items()]

    def report(self) -> str:
        lines = [f"tables{' + errata' if self.errata else ''} vs recursion"
                 f"{' (B2 variant)' if self.variant else ''} at {self.trunc.describe()}: "
                 f"{'agree' if self.ok else 'DISAGREE'}"]
        # in count units: the EGF coefficient [x^a/a! y^b/b! v^m/m! w^d u^4]
        for (x, y, v, w), c in self.coefficient_mismatches():
            c = c * factorial(x) * factorial(y) * factorial(v)
            lines.append(f"  [x^{x}/{x}! y^{y}/{y}! v^{v}/{v}! w^{w} u^4] tables - recursion = {c}")
        lines.append(f"rows: {len(self.row_diffs)} differing, {len(self.missing_rows)} only in "
                     f"recursion, {len(self.extra_rows)} only in tables")
        for d in self.row_diffs:
            lines.append(f"  {d.label}: tables {d.tabulated!r} vs recursion {d.derived!r}")
        for k in self.missing_rows:
            lines.append(f"  only in recursion: tau[{k[0] or 'e'},{k[1]},{k[2]}]")
        for k in self.extra_rows:
            lines.append(f"  only in tables: tau[{k[0] or 'e'},{k[1]},{k[2]}]")
        return "\n".join(lines)


def reconcile(trunc: Truncation, errata: bool = False, variant: bool = False) -> Reconciliation:
    r"""
    Compare the tables with the recursion in total and row by row (the
    coefficient of each `\langle\tau_{R,i,j}\rangle`). Rows may differ
    harmlessly, since the forgotten τ's are not linearly independent; the
    totals decide.
    """
    derived = procedure_rows(trunc, variant)
    tab = {(r.R, r.i, r.j): evaluate(r.expression, trunc) for r in load_rows(errata)}
    diffs = [RowDiff(k, tab[k], derived[k])
             for k in sorted(set(tab) & set(derived), key=lambda k: (len(k[0]), k))
             if tab[k] != derived[k]]
    missing = sorted(k for k in set(derived) - set(tab))
    extra = sorted(k for k in set(tab) - set(derived) if tab[k])
    diff = Series((reconstruct(trunc, errata=errata, variant=variant)
                   - procedure_total(trunc, variant)).terms, trunc)
    return Reconciliation(trunc, errata, variant, diff, diffs, missing, extra)

"""
Self-verification suites behind ``dipole-atlas verify``.

Each suite yields :class:`CheckResult` records; a suite stops contributing
after its first failure so that the report names the first failing identity.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import factorial

from . import appendix, genus, oracle
from .central import a_series, a_series_closed, partitions, psi
from .series import Truncation
from .strings import binary_strings
from .tau import TauKey, verify_tau


@dataclass
class CheckResult:
    suite: str
    name: str
    ok: bool
    detail: str = ""

    def line(self) -> str:
        tail = f" ({self.detail})" if self.detail else ""
        return f"{'PASS' if self.ok else 'FAIL'} {self.suite}: {self.name}{tail}"


APPENDIX_ORDER = 6


def _series_order(max_n: int) -> int:
    return max(2, min(max_n - 1, 6))


def suite_psi(max_n: int):
    for n in range(1, max_n + 1):
        faces = oracle.face_histogram(n)
        bad = [p for p in partitions(n) if psi(p) != faces.get(p, 0)]
        yield CheckResult("psi", f"psi vs face counts, n={n}", not bad,
                          f"first mismatch {bad[0]}" if bad else "")
        total = sum(psi(p) for p in partitions(n))
        yield CheckResult("psi", f"sum of psi = (n-1)!, n={n}", total == factorial(n - 1))
    t = Truncation(max_n, 0, 0, max_n)
    yield CheckResult("psi", f"A series closed form to x^{max_n}", a_series(t) == a_series_closed(t))


def suite_tau(max_n: int):
    t = Truncation.uniform(_series_order(max_n))
    keys = [TauKey.rk(R, k) for L in range(1, 4) for R in binary_strings(L) for k in range(3)]
    keys += [TauKey.rs(R, S) for L in range(0, 3) for R in binary_strings(L)
             for M in range(3) for S in binary_strings(M)]
    for key in keys:
        res = verify_tau(key, t)
        yield CheckResult("tau", f"defining equation of {key.kind} R={key.R or 'e'} "
                          f"{'k=' + str(key.k) if key.kind == 'RK' else 'S=' + (key.S or 'e')}",
                          not res, f"{len(res)} residual terms" if res else "")


def suite_pde(max_n: int):
    order = _series_order(max_n)
    for g in (1, 2):
        res = genus.residual_B(g, order)
        yield CheckResult("pde", f"(a,b,0,0) recursion residual, genus {g}", not res)
        res = genus.residual_Gamma(g, order)
        yield CheckResult("pde", f"(a,b,c,d) recursion residual, genus {g}", not res)


def suite_paths(max_n: int):
    order = _series_order(max_n)
    P = genus.Path
    for g in genus.CLOSED_GENERA:
        it_B, it_G = genus.b_genus(g, order, P.ITERATIVE), genus.gamma_genus(g, order, P.ITERATIVE)
        for path in (P.CLOSED_FORM, P.PROCEDURAL):
            yield CheckResult("paths", f"B genus {g}: {path.value} = iterative",
                              genus.b_genus(g, order, path) == it_B)
            yield CheckResult("paths", f"Gamma genus {g}: {path.value} = iterative",
                              genus.gamma_genus(g, order, path) == it_G)


def suite_appendix(max_n: int):
    t = Truncation.uniform(APPENDIX_ORDER)
    raw = appendix.reconcile(t)
    yield CheckResult("appendix", "raw tables vs recursion (reported, not required)", True,
                      f"{len(raw.coefficient_mismatches())} coefficient mismatches")
    fixed = appendix.reconcile(t, errata=True, variant=True)
    yield CheckResult("appendix", "tables + errata reproduce the B2-variant recursion", fixed.ok,
                      f"{len(fixed.coefficient_mismatches())} coefficient mismatches")


def suite_oracle(max_n: int):
    cal = oracle.calibrate(min(max_n, 7))
    yield CheckResult("oracle", "convention calibration", cal.selected == oracle.STANDARD,
                      f"selected {tuple(cal.selected)}")
    for g in genus.CLOSED_GENERA:
        for n in range(2, max_n + 1):
            hist = oracle.pqn_histogram(n)
            bad = [(p, q) for p in range(1, n) for q in range(1, n)
                   if genus.pqn_count(p, q, n, g) != hist.get((p, q, g), 0)]
            yield CheckResult("oracle", f"pqn counts, genus {g}, n={n}", not bad,
                              f"first mismatch (p,q)={bad[0]}" if bad else "")
    for n in range(2, max_n + 1):
        hist = oracle.abcd_histogram(n)
        bad = [k for k in _abcd(n) if genus.abcd_torus_count(*k) != hist.get(k + (1,), 0)]
        yield CheckResult("oracle", f"torus closed form, n={n}", not bad,
                          f"first mismatch (a,b,c,d)={bad[0]}" if bad else "")


def _abcd(n: int):
    for a in range(n - 1):
        for b in range(n - 1 - a):
            for c in range(n - 1 - a - b):
                yield (a, b, c, n - 2 - a - b - c)


SUITES = {
    "psi": suite_psi,
    "tau": suite_tau,
    "pde": suite_pde,
    "paths": suite_paths,
    "appendix": suite_appendix,
    "oracle": suite_oracle,
}


def run(max_n: int, suites=None):
    """Yield results of the named suites (all by default) in a fixed order."""
    for name in suites or SUITES:
        for res in SUITES[name](max_n):
            yield res
            if not res.ok:
                break

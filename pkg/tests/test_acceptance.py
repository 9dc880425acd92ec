"""
Acceptance criteria 1-7, one PASS/FAIL line each.

Runs under pytest (the lines are printed past the capture) or directly with
``python tests/test_acceptance.py``.
"""
import random
import sys
from fractions import Fraction
from math import factorial

import pytest

from dipole_atlas import appendix, genus, oracle
from dipole_atlas.central import a_series, a_series_closed, partitions, psi
from dipole_atlas.genus import Path
from dipole_atlas.operators import OperatorKind as K, apply, forget_lengths
from dipole_atlas.phi import (PhiSpec, phi_counts, phi_f_derivative, phi_general, phi_series,
                              phi_y)
from dipole_atlas.series import Monomial, Series, Truncation, egf_coeff, fmultiset
from dipole_atlas.strings import binary_strings, counts
from dipole_atlas.tau import TauKey, verify_tau

PATHS = (Path.CLOSED_FORM, Path.PROCEDURAL, Path.ITERATIVE)


def _first(bad):
    return f"first failure {bad[0]}" if bad else ""


def criterion_1():
    bad, checked = [], 0
    for n in range(2, 9):
        hist = oracle.pqn_histogram(n)
        for g in range(3):
            for p in range(1, n):
                for q in range(1, n):
                    checked += 1
                    if genus.pqn_count(p, q, n, g) != hist.get((p, q, g), 0):
                        bad.append((p, q, n, g))
    return not bad, f"{checked} (p,q,n,g) cells, n <= 8; {_first(bad)}".rstrip("; ")


def criterion_2():
    bad = []
    # (a,b,0,0): x^{a+1} y^b with a+1 <= 8, b <= 8 needs a joint cap of 16
    t = Truncation(8, 8, 0, 16, 1)
    for path in PATHS:
        s = genus.forgotten_B(1, t, path)
        for a in range(8):
            for b in range(1, 9):
                if egf_coeff(s, a + 1, b, 0, 0, 1) != b * (a + 1):
                    bad.append((path.value, a, b))
    t = Truncation(6, 6, 6, 18, 1)
    literal_off = 0
    for path in (Path.CLOSED_FORM, Path.PROCEDURAL):
        s = genus.forgotten_gamma(1, t, path)
        for a in range(6):
            for b in range(7):
                for c in range(7):
                    for d in range(7 - c):
                        val = egf_coeff(s, a + 1, b, c + d, d, 1)
                        if val != genus.abcd_torus_count(a, b, c, d):
                            bad.append((path.value, a, b, c, d))
                        if path is Path.CLOSED_FORM and val != genus.abcd_torus_count_variant(a, b, c, d):
                            literal_off += 1
    # and against enumeration wherever it is affordable
    for n in range(2, 10):
        hist = oracle.abcd_histogram(n)
        for (a, b, c, d, g), k in hist.items():
            if g == 1 and a <= 5 and b <= 6 and c + d <= 6 and k != genus.abcd_torus_count(a, b, c, d):
                bad.append(("oracle", a, b, c, d))
    detail = (f"b(a+1) on 3 paths, five cases on 2 paths + oracle n <= 9; "
              f"literal c=0 psi terms would be off at {literal_off} cells")
    return not bad, f"{detail}; {_first(bad)}".rstrip("; ")


def criterion_3():
    bad = []
    it = genus.forgotten_B(2, Truncation(8, 8, 0, 8, 2), Path.ITERATIVE)
    for a in range(8):
        for b in range(8 - a):
            n = a + b + 2
            want = genus.ab00_double_torus_count(a, b)
            got_it = egf_coeff(it, a + 1, b, 0, 0, 2)
            got_or = oracle.abcd_histogram(n).get((a, b, 0, 0, 2), 0)
            if not want == got_it == got_or:
                bad.append((a, b, want, got_it, got_or))
    spot = genus.ab00_double_torus_count(2, 3)
    ok = not bad and spot == 75
    return ok, f"(a,b) with a+b <= 7, spot (2,3) -> {spot}; {_first(bad)}".rstrip("; ")


def criterion_4():
    bad = []
    for n in range(1, 9):
        faces = oracle.face_histogram(n)
        bad += [lam for lam in partitions(n) if psi(lam) != faces.get(lam, 0)]
        if sum(psi(lam) for lam in partitions(n)) != factorial(n - 1):
            bad.append(("sum", n))
    t = Truncation(8, 0, 0, 8)
    if a_series(t) != a_series_closed(t):
        bad.append("A closed form")
    return not bad, f"psi vs faces, sums, A closed form to x^8; {_first(bad)}".rstrip("; ")


def _random_shadow(rng):
    def word():
        return "".join(rng.choice("BW") for _ in range(rng.randint(1, 5)))
    terms = {}
    for _ in range(rng.randint(1, 4)):
        m = Monomial(word(), fmultiset(*(word() for _ in range(rng.randint(0, 3)))), rng.randint(0, 2))
        terms[m] = Fraction(rng.randint(-5, 5) or 1, rng.randint(1, 6))
    return Series(terms, Truncation(None, None, None, None, None))


def criterion_5():
    bad = []
    t8, t7 = Truncation.uniform(8), Truncation.uniform(7)

    def slot(sym):
        return Series.f("W", t8) if sym == "W" else Series.f("B", t8).shift(w=1)

    vals = [Series.f(w, t8) for w in ("B", "W", "BW", "BBW", "BWW", "BBBW")]
    for i in range(1, 7):
        lhs = phi_general(vals[:i], t8).derivative("v") - vals[i - 1] * phi_general(vals[:i], t8)
        if (lhs - phi_general(vals[:i - 1], t8)).truncate(t7):
            bad.append(("fundamental", i))
    for L in range(6):
        for S in binary_strings(L):
            base = phi_counts(*counts(S), t8)
            for last in "WB":
                top = phi_counts(*counts(S + last), t8)
                if (top.derivative("v") - slot(last) * top - base).truncate(t7):
                    bad.append(("string recurrence", S + last))
    for i in range(6):
        top = phi_y(i + 1, t8)
        if (top.derivative("y") - Series.f("B", t8) * top - phi_y(i, t8)).truncate(t7):
            bad.append(("y recurrence", i + 1))
    for i in range(4):
        for j in range(4):
            spec = PhiSpec.counts(i, j)
            for which in "WB":
                if phi_series(spec).f_derivative(which) != phi_f_derivative(spec, which):
                    bad.append(("phi derivative", i, j, which))
    for L in range(1, 5):
        for R in binary_strings(L):
            for k in range(4):
                if verify_tau(TauKey.rk(R, k), t8):
                    bad.append(("tau", R, k))
    for L in range(5):
        for R in binary_strings(L):
            for M in range(4):
                for S in binary_strings(M):
                    if verify_tau(TauKey.rs(R, S), t8):
                        bad.append(("tau", R, S))
    for g in (1, 2):
        if genus.residual_B(g, 8) or genus.residual_Gamma(g, 8):
            bad.append(("residual", g))
    rng = random.Random(20240601)
    cases = 600
    for _ in range(cases):
        s = _random_shadow(rng)
        if forget_lengths(apply(K.C_PRIME, s)) != apply(K.C_TILDE, forget_lengths(s)):
            bad.append(("cut commutation", s))
        if forget_lengths(apply(K.J_PRIME, s)) != apply(K.J_TILDE, forget_lengths(s)):
            bad.append(("join commutation", s))
    return not bad, f"phi, tau, residuals at order 8, {cases} x 2 commutation cases; {_first(bad)}".rstrip("; ")


def criterion_6():
    t = Truncation.uniform(6)
    raw = appendix.reconcile(t)
    fixed = appendix.reconcile(t, errata=True, variant=True)
    proc = genus.forgotten_gamma(2, t)
    agree = proc == genus.forgotten_gamma(2, t, Path.ITERATIVE)
    marked = oracle.oracle_gamma(7, trunc=t).forget().genus_slice(2)
    oracle_ok = marked == proc.truncate(Truncation.uniform(6)._replace(genus=2))
    ok = fixed.ok and agree and oracle_ok
    detail = (f"raw tables: {len(raw.coefficient_mismatches())} coefficient mismatches (listed by "
              f"'dipole-atlas appendix'); tables+errata vs variant: "
              f"{len(fixed.coefficient_mismatches())}; recursion = iterative: {agree}; "
              f"recursion = oracle n <= 7: {oracle_ok}")
    return ok, detail


def criterion_7():
    bad = []
    for n in range(2, 11):
        hist = oracle.pqn_histogram(n) if n <= 9 else None
        for p in range(1, n):
            for q in range(1, n):
                want = 1 if p + q == n else 0
                if genus.pqn_count(p, q, n, 0, order=9, path=Path.CLOSED_FORM) != want:
                    bad.append(("series", p, q, n))
                if hist is not None and hist.get((p, q, 0), 0) != want:
                    bad.append(("oracle", p, q, n))
    return not bad, f"series n <= 10 at order 9, oracle n <= 9; {_first(bad)}".rstrip("; ")


CRITERIA = {
    1: ("oracle-series agreement", criterion_1),
    2: ("torus closed forms", criterion_2),
    3: ("double torus", criterion_3),
    4: ("central cross-checks", criterion_4),
    5: ("property suites", criterion_5),
    6: ("coefficient table reconciliation", criterion_6),
    7: ("genus-0 law", criterion_7),
}


def _line(k):
    name, fn = CRITERIA[k]
    ok, detail = fn()
    return ok, f"{'PASS' if ok else 'FAIL'} criterion {k}: {name} ({detail})"


@pytest.mark.parametrize("k", sorted(CRITERIA))
def test_criterion(k, capsys):
    ok, line = _line(k)
    with capsys.disabled():
        print("\n" + line)
    assert ok, line


if __name__ == "__main__":
    results = [_line(k) for k in sorted(CRITERIA)]
    for _, line in results:
        print(line)
    sys.exit(0 if all(ok for ok, _ in results) else 1)

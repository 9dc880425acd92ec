import json

import pytest

from dipole_atlas import genus, oracle
from dipole_atlas.appendix import vocabulary
from dipole_atlas.central import a_series, rooted_count
from dipole_atlas.genus import Path
from dipole_atlas.operators import OperatorKind as K, apply
from dipole_atlas.phi import phi_counts, phi_y
from dipole_atlas.series import Series, Truncation, egf_coeff

T6 = Truncation.uniform(6)
T8 = Truncation.uniform(8)


def test_torus_ab00_spot():
    s = genus.b_genus(1, T8).forget()
    assert egf_coeff(s, 3, 3, 0, 0, 1) == 9 == genus.ab00_torus_count(2, 3)


def test_double_torus_spot():
    s = genus.b_genus(2, T8).forget()
    assert egf_coeff(s, 3, 3, 0, 0, 2) == 75 == genus.ab00_double_torus_count(2, 3)


def test_planar_B_has_no_y():
    assert all(m.y == 0 for m in genus.b_genus(0, T6).terms)


def test_planar_gamma_spot():
    assert egf_coeff(genus.gamma_genus(0, T6).forget(), 2, 0, 2, 2, 0) == 1


def test_forgotten_torus_gamma_display():
    V = vocabulary(T8)
    x, w, ex = V["x"], V["w"], V["ex"]

    def P(i, j):
        return phi_counts(i, j, T8).forget()

    def Y(k):
        return phi_y(k, T8).forget()

    expected = (x * ex * (P(1, 0) + P(2, 0) + (w * P(1, 1) + w * P(2, 1)).scale(2)
                          + w * w * P(1, 2) + w * w * P(2, 2))
                + (ex - 1) * (w ** 2 * P(0, 2) + (w ** 3 * P(0, 3)).scale(3)
                              + (w ** 4 * P(0, 4)).scale(3) + w ** 5 * P(0, 5))
                + x * ex * Y(1) * (P(1, 0) + (w * P(0, 1)).scale(2) + (w * P(1, 1)).scale(2)
                                   + w * w * P(0, 2) + w * w * P(1, 2))
                + x * ex * Y(2) * ((w * P(0, 1)).scale(2) + w * w * P(0, 2))
                + w * P(0, 1) * (V["D3"] + V["D22"]))
    assert genus.gamma_genus(1, T8).forget() == expected.shift(u=2) + genus.b_genus(1, T8).forget()


@pytest.mark.parametrize("g", genus.CLOSED_GENERA)
def test_paths_agree(g):
    it_B = genus.b_genus(g, T6, Path.ITERATIVE)
    it_G = genus.gamma_genus(g, T6, Path.ITERATIVE)
    for path in (Path.CLOSED_FORM, Path.PROCEDURAL):
        assert genus.b_genus(g, T6, path) == it_B
        assert genus.gamma_genus(g, T6, path) == it_G


def test_genus_three_procedural_matches_iterative():
    t = Truncation.uniform(5)
    assert genus.b_genus(3, t, Path.PROCEDURAL) == genus.b_genus(3, t, Path.ITERATIVE)
    assert genus.gamma_genus(3, t, Path.PROCEDURAL) == genus.gamma_genus(3, t, Path.ITERATIVE)


def test_closed_forms_stop_at_genus_two():
    with pytest.raises(genus.UnsupportedGenusError):
        genus.b_genus(3, T6, Path.CLOSED_FORM)
    with pytest.raises(genus.UnsupportedGenusError):
        genus.gamma_genus(3, T6, Path.CLOSED_FORM)
    with pytest.raises(genus.UnsupportedGenusError):
        genus.gamma_genus(1, T6, Path.APPENDIX_TABLE)


@pytest.mark.parametrize("g", genus.CLOSED_GENERA)
def test_initial_conditions(g):
    G, B = genus.gamma_genus(g, T6), genus.b_genus(g, T6)
    assert G.at_zero("v") == B
    assert B.at_zero("y") == a_series(T6).genus_slice(g)


def test_solution_record():
    sol = genus.solution(1, 5)
    assert sol.provenance is Path.CLOSED_FORM
    assert sol.Gamma.at_zero("v") == sol.B


@pytest.mark.parametrize("g", (1, 2))
def test_residuals_vanish(g):
    assert genus.residual_B(g, 6) == 0
    assert genus.residual_Gamma(g, 6) == 0


def test_variant_B2_is_not_a_solution():
    true = genus.b_genus(2, T6)
    variant = Series(genus.closed_B(2, T6, variant=True).materialize().terms, T6)
    assert variant != true
    # invisible after forgetting, since the two τ's have the same length
    assert variant.forget() == true.forget()
    forcing = apply(K.J_PRIME, genus.b_genus(1, T6)).shift(u=2)
    inner = T6._replace(y=5, joint=5)

    def residual(B):
        hat = B - a_series(T6).genus_slice(2)
        return (hat.derivative("y") - apply(K.C_PRIME, hat) - forcing).truncate(inner)

    assert residual(true) == 0
    assert residual(variant) != 0


def test_torus_count_examples():
    assert genus.abcd_torus_count(0, 1, 1, 0) == 1 == genus.abcd_count(0, 1, 1, 0, 1)
    assert genus.abcd_torus_count(1, 0, 2, 1) == 8 == genus.abcd_count(1, 0, 2, 1, 1)


def test_planar_abcd_counts():
    for n in range(2, 8):
        for a in range(n - 1):
            for b in range(n - 1 - a):
                for c in range(n - 1 - a - b):
                    d = n - 2 - a - b - c
                    assert genus.abcd_count(a, b, c, d, 0) == (1 if b == c == 0 else 0)


def test_pqn_examples():
    assert genus.pqn_count(1, 1, 2, 0) == 1
    for n in range(2, 8):
        for p in range(1, n):
            for q in range(1, n):
                assert genus.pqn_count(p, q, n, 0) == (p + q == n)


def test_pqn_torus_matches_oracle_n5():
    hist = oracle.pqn_histogram(5)
    for p in range(1, 5):
        for q in range(1, 5):
            assert genus.pqn_count(p, q, 5, 1) == hist.get((p, q, 1), 0)


def test_pqn_genus_three_beyond_closed_forms():
    hist = oracle.pqn_histogram(8)
    for p in range(1, 8):
        for q in range(1, 8):
            assert genus.pqn_count(p, q, 8, 3, order=7) == hist.get((p, q, 3), 0)


@pytest.mark.parametrize("args", [(0, 1, 3, 0), (1, 3, 3, 0), (1, 1, 1, 0), (1, 1, 3, -1)])
def test_pqn_rejects_bad_input(args):
    with pytest.raises(ValueError):
        genus.pqn_count(*args)


def test_abcd_rejects_negative():
    with pytest.raises(ValueError):
        genus.abcd_count(-1, 0, 0, 0, 0)


def test_count_table():
    table = genus.phi_count_table(7, 2)
    assert table.get(1, 1, 2, 0) == 1
    assert [r for r in table.rows if r[2] == 2] == [(1, 1, 2, 0, 1), (1, 1, 2, 1, 0), (1, 1, 2, 2, 0)]
    for n in range(2, 8):
        for g in range(3):
            total = sum(r[4] for r in table.rows if r[2] == n and r[3] == g)
            assert total == (n - 1) * rooted_count(n, g)
            if 2 * g > n - 1:
                assert total == 0
    assert all(r[4] >= 0 for r in table.rows)


def test_count_table_serialization():
    table = genus.phi_count_table(4, 1)
    again = genus.CountTable.from_json(table.to_json())
    assert again == table
    doc = json.loads(table.to_json())
    assert doc["columns"] == ["p", "q", "n", "g", "count"]
    assert doc["rows"][0] == {"p": 1, "q": 1, "n": 2, "g": 0, "count": 1}
    lines = table.to_csv().splitlines()
    assert lines[0] == "p,q,n,g,count"
    assert len(lines) == len(table.rows) + 1


def test_count_table_paths_agree():
    assert genus.phi_count_table(6, 2, path=Path.ITERATIVE) == genus.phi_count_table(6, 2)

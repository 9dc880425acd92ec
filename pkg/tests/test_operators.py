import pytest
from hypothesis import given, settings

from dipole_atlas import genus
from dipole_atlas.central import a_series
from dipole_atlas.operators import OperatorKind as K, apply, forget_lengths, step_B, step_Gamma
from dipole_atlas.phi import phi_counts
from dipole_atlas.series import LinearityError, Monomial, Series, Truncation, egf_coeff, mono
from strategies import shadow_series

T = Truncation.uniform(6)


def g(word):
    return Series.g(word, T)


def f(word):
    return Series.f(word, T)


def test_cut_prime_on_single_letter_is_zero():
    assert apply(K.C_PRIME, g("B")) == 0
    assert apply(K.C_PRIME, g("W")) == 0


def test_cut_prime_rule():
    # i = 2 keeps BW and cuts off (B+B), i = 3 keeps BWB and cuts off (B)
    assert apply(K.C_PRIME, g("BWB")) == g("BW") * f("BB") + g("BWB") * f("B")


def test_join_prime_on_B0():
    B0 = genus.b_genus(0, T)
    assert apply(K.J_PRIME, B0) == g("BBW") * genus.exp_x_fw(T, 1)


def test_cut_dprime_on_BW():
    expected = g("BW") * f("W") + (g("B") * f("BW")).shift(w=1)
    assert apply(K.C_DPRIME, g("BW")) == expected


def test_join_dprime_on_Gamma0():
    G0 = genus.gamma_genus(0, T)
    X, E1 = genus.exp_x_fw(T, 1), genus.exp_x_fw(T) - 1
    w = Series.var("w", T)
    pB, pBB = phi_counts(0, 1, T), phi_counts(0, 2, T)
    expected = (g("BWW") * (w * f("B") * pB + 1) * X
                + g("BBB") * (w * w * pB + w * w * w * f("B") * pBB) * E1)
    assert apply(K.J_DPRIME, G0) == expected


def test_linearity_is_enforced():
    with pytest.raises(LinearityError):
        apply(K.C_PRIME, Series.var("x", T))


def test_tilde_operators_need_shadows():
    with pytest.raises(ValueError):
        apply(K.C_TILDE, g("BW"))


def test_steps_of_zero():
    assert step_B(Series.zero(T)) == 0
    assert step_Gamma(Series.zero(T)) == 0


def test_step_B_gives_torus_count():
    t = Truncation(4, 0, 0, 4)
    B1 = Series(step_B(a_series(t)).terms, Truncation(4, 0, 0, 4)).genus_slice(1).forget()
    assert egf_coeff(B1, 2, 0, 0, 0, 1) == 2


def test_iterated_steps_match_closed_forms():
    t = Truncation.uniform(3)
    assert genus.b_genus(1, t, genus.Path.ITERATIVE) == genus.b_genus(1, t)
    t = Truncation.uniform(6)
    G1 = genus.gamma_genus(1, t, genus.Path.ITERATIVE).forget()
    assert egf_coeff(G1, 1, 1, 1, 0, 1) == 1


def test_forget_lengths_example():
    s = Series.monomial(mono(g="BW", f=["BW"]), 1)
    assert forget_lengths(s) == Series.monomial(Monomial("WW", (("WW", 1),)), 1)


@settings(max_examples=600)
@given(shadow_series())
def test_cut_commutes_with_length_forgetting(s):
    assert forget_lengths(apply(K.C_PRIME, s)) == apply(K.C_TILDE, forget_lengths(s))


@settings(max_examples=600)
@given(shadow_series())
def test_join_commutes_with_length_forgetting(s):
    assert forget_lengths(apply(K.J_PRIME, s)) == apply(K.J_TILDE, forget_lengths(s))


def _nf(m):
    return sum(k for _, k in m.f)


@given(shadow_series(max_terms=1))
def test_face_and_degree_bookkeeping(s):
    (m0,) = s.terms
    for op, delta in ((K.C_PRIME, 1), (K.C_DPRIME, 1), (K.J_PRIME, -1), (K.J_DPRIME, -1)):
        for m in apply(op, s, raise_u=2 if op.is_join else 0).terms:
            assert _nf(m) == _nf(m0) + delta
            assert (m.x, m.y, m.v) == (m0.x, m0.y, m0.v)
            assert m.u == m0.u + (2 if op.is_join else 0)

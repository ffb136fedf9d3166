import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tkklab.exactnum import ONE, Scalar, sqrt
from tkklab.jordan import build_jordan
from tkklab.tkk import build_tkk
from tkklab.ueval import (
    PBWAlgebra,
    anticommutator,
    commutator,
    hw_eval,
    hw_polynomial,
    pbw_normal_form,
    q_elements,
    rewrite_normal_form,
    triangular_split,
    verify_q1_commutator,
    verify_lemma7,
    verify_q1_q1prime,
    verify_spin_q1,
)

F = Fraction


@pytest.fixture(scope="module")
def sp3():
    return triangular_split("hermR", 3)


# --------------------------------------------------------------------- PBW

def test_commutator_of_letters_is_lie_bracket(sp3):
    U, L = sp3.U, sp3.lie
    for i in range(L.dim):
        for j in range(L.dim):
            lhs = U.letter(i) * U.letter(j) - U.letter(j) * U.letter(i)
            assert lhs == U.from_vec(L.bracket_basis(i, j))


def test_confluence_hundred_seeded_words(sp3):
    U = sp3.U
    rng = random.Random(2024)
    for _ in range(100):
        deg = rng.randint(1, 4)
        raw = {tuple(rng.randrange(U.dim) for _ in range(deg)): Scalar(rng.randint(1, 5))}
        expect = pbw_normal_form(U, raw)
        got = rewrite_normal_form(U, raw, random.Random(rng.random()))
        assert U.normal_form(got) == expect
        assert expect.terms == {w: c for w, c in got.items() if c}


@settings(max_examples=40, deadline=None)
@given(st.lists(st.lists(st.integers(0, 20), min_size=0, max_size=3), min_size=3, max_size=3))
def test_associativity(words):
    g = build_tkk(build_jordan("hermR", 3))
    U = PBWAlgebra(g)
    a, b, c = (U.word(w) for w in words)
    assert (a * b) * c == a * (b * c)


def test_normal_form_is_sorted(sp3):
    U = sp3.U
    P = U.word([20, 2, 17, 5])
    assert all(list(w) == sorted(w) for w in P.terms)
    assert P.degree == 4


def test_split_round_trip(sp3):
    assert sp3.report.ok
    tags = sp3.U.tags
    assert tags.index("cartan") > tags.index("negative")
    assert tags.index("positive") > max(i for i, t in enumerate(tags) if t == "cartan")


def test_hw_eval_rules(sp3):
    U = sp3.U
    pos = sp3.U.tags.index("positive")
    neg = sp3.U.tags.index("negative")
    h = sp3.cartan_index[0]
    lam = (F(-1, 2),) * 3
    assert hw_eval(sp3, U.letter(pos), lam).annihilated
    r = hw_eval(sp3, U.letter(neg), lam)
    assert r.scalar_part == 0 and not r.residual.is_zero()
    val = sp3.cartan_values(lam)[0]
    assert hw_eval(sp3, U.letter(h) * U.letter(h), lam).scalar_part == Scalar(val * val)


# ------------------------------------------------------ identities in U(g)

def test_commutator_identity_hermR3():
    rep = verify_q1_commutator(build_jordan("hermR", 3))
    assert rep.ok, rep.failures


@pytest.mark.parametrize("kind,n", [("hermC", 2), ("spin", 3)])
def test_commutator_identity_more(kind, n):
    assert verify_q1_commutator(build_jordan(kind, n)).ok


@pytest.mark.parametrize("kind,n,a", [("hermR", 3, 0), ("hermR", 3, F(15, 16)), ("hermC", 2, 1)])
def test_q1_q1prime_chain(kind, n, a):
    rep = verify_q1_q1prime(build_jordan(kind, n), a)
    assert rep.ok, rep.failures


@pytest.mark.parametrize("m", [2, 3, 4, 5])
def test_spin_q1_is_casimir(m):
    rep = verify_spin_q1(m)
    assert rep.ok, rep.failures


@pytest.mark.parametrize("kind,n", [("hermR", 3), ("hermC", 2)])
def test_lemma_closed_forms(kind, n):
    rep = verify_lemma7(build_jordan(kind, n), samples=50, seed=0, exhaustive_depth=3)
    assert rep.ok, rep.failures
    summary = rep.details["summary"]
    for label in ("[Q1',L]", "A1", "A2", "A11", "A22", "A12", "[A11,X]", "[A22,Y]", "[A1222,Y]", "[A112222,Y]"):
        assert summary[label]["checked"] > 0, label


def test_printed_a12_fails_everywhere():
    rep = verify_lemma7(build_jordan("hermC", 2), labels=["A12"], reading="printed")
    s = rep.details["summary"]["A12"]
    assert s["failed"] == s["checked"] > 0


# ------------------------------------------------------ highest weights

def _all_vanish(S, a, lam, us):
    J = S.g.J
    base = q_elements(S, a)
    vals = [hw_eval(S, base.Q1, lam).scalar_part, hw_eval(S, base.Q2, lam).scalar_part]
    for u in us:
        q = q_elements(S, a, u(J))
        vals += [hw_eval(S, q.Q3, lam).scalar_part, hw_eval(S, q.Q4, lam).scalar_part]
    return all(v.is_zero() for v in vals), vals


R3 = lambda J: J["e11"].scale(sqrt(3))


@pytest.mark.parametrize("lam", [(F(-1, 2),) * 3, (F(-1, 2), F(-1, 2), F(-3, 2))])
def test_sp3_weights(sp3, lam):
    ok, vals = _all_vanish(sp3, F(15, 16), lam, [R3])
    assert ok, vals


def test_sp3_wrong_a_fails(sp3):
    ok, _ = _all_vanish(sp3, F(1), (F(-1, 2),) * 3, [])
    assert not ok


def test_sp3_q1_polynomial(sp3):
    import sympy

    l1, l2, l3 = sympy.symbols("l1:4")
    P = hw_polynomial(sp3, q_elements(sp3, 0).Q1)
    # vanishes on both family members once a = 15/16 is added back
    for lam in [(-sympy.Rational(1, 2),) * 3, (-sympy.Rational(1, 2),) * 2 + (-sympy.Rational(3, 2),)]:
        assert P.subs(dict(zip((l1, l2, l3), lam))) == -sympy.Rational(15, 16)


@pytest.mark.parametrize("k", [0, 1, 2])
def test_su33_families(k):
    from tkklab.weights import families

    S = triangular_split("hermC", 3)
    a = F(9 - k * k, 4)
    us = [lambda J: J["e11"].scale(sqrt(3)), lambda J: J["e11"] + J["e22"], lambda J: J["e12"].scale(sqrt(3))]
    for fam in families("hermC", 3):
        ok, vals = _all_vanish(S, a, fam.at(k), us)
        assert ok, (fam.name, vals)


@pytest.mark.parametrize("k", [0, 1, 2])
def test_so12_family(k):
    S = triangular_split("hermH", 3)
    lam = (F(-1),) * 5 + (F(-1 - k),)
    a = 6 - F(k, 2) - F(k * k, 4)
    us = [lambda J: J["e11"].scale(sqrt(3)), lambda J: J["e12"].scale(sqrt(3))]
    ok, vals = _all_vanish(S, a, lam, us)
    assert ok, vals


@pytest.mark.large
def test_e7_weight_hw_path():
    S = triangular_split("hermO", 3)
    lam = (0, 0, 0, 0, 0, -4, 2, -2)
    ok, vals = _all_vanish(S, F(18), lam, [lambda J: J["e33"].scale(sqrt(3))])
    assert ok, vals


def test_anticommutator_helpers(sp3):
    U = sp3.U
    x, y = U.letter(0), U.letter(5)
    assert anticommutator(x, y) - commutator(x, y) == (y * x).scale(Scalar(2))
    assert commutator(U.one(), x).is_zero()
    assert U.one() * x == x and (U.scalar(ONE) * x) == x

import random

import pytest

from tkklab.exactnum import Scalar
from tkklab.jordan import build_jordan, jmul
from tkklab.tkk import (
    LieAlgebra,
    build_str,
    build_tkk,
    der_dimension,
    epm_h,
    str_dimension,
    verify_epm_brackets,
    verify_jacobi,
)


@pytest.mark.parametrize("kind,n,dim", [
    ("spin", 2, 10), ("spin", 3, 15), ("spin", 4, 21),
    ("hermR", 3, 21), ("hermC", 3, 35), ("hermH", 3, 66), ("hermO", 3, 133),
])
def test_co_dimension(kind, n, dim):
    J = build_jordan(kind, n)
    g = build_tkk(J)
    assert g.dim == dim == 2 * J.D + build_str(J).dim
    assert g.s_dim == str_dimension(kind, n)
    assert g.s_dim - J.D == der_dimension(kind, n)


@pytest.mark.parametrize("kind,n,triples", [
    ("spin", 2, 120), ("spin", 3, 455), ("spin", 4, 1330),
    ("hermR", 3, 1330), ("hermC", 3, 6545), ("hermH", 3, 45760),
])
def test_jacobi_all_triples(kind, n, triples):
    rep = verify_jacobi(build_tkk(build_jordan(kind, n)))
    assert rep.ok, rep.failures
    assert rep.checked == triples


@pytest.mark.large
def test_jacobi_e7_all_triples():
    rep = verify_jacobi(build_tkk(build_jordan("hermO", 3)))
    assert rep.ok, rep.failures


def test_jacobi_negative_control():
    g = build_tkk(build_jordan("spin", 2))
    key = next(k for k in sorted(g.sc) if g.part(k[0]) == "X" and g.part(k[1]) == "Y")
    sc = dict(g.sc)
    sc[key] = {i: -c for i, c in sc[key].items()}
    rep = verify_jacobi(LieAlgebra(g.labels, sc, "flipped"))
    assert not rep.ok and rep.failures


@pytest.mark.parametrize("kind,n", [("hermR", 3), ("hermC", 2), ("spin", 3)])
def test_bracket_relations(kind, n):
    g = build_tkk(build_jordan(kind, n))
    J, D = g.J, g.J.D
    for a in range(D):
        for b in range(D):
            assert g.X(a).bracket(g.X(b)).is_zero()
            assert g.Y(a).bracket(g.Y(b)).is_zero()
            assert g.X(a).bracket(g.Y(b)) == g.S(a, b).scale(Scalar(-2))
    # L_u is S_{ue}
    e = J.unit()
    for a in range(D):
        assert g.L(a) == g.S(J.basis(a), e)


def test_epm_lemma_exhaustive_hermR3():
    rep = verify_epm_brackets(build_tkk(build_jordan("hermR", 3)))
    assert rep.ok, rep.failures
    assert rep.checked == 6 * 36


def test_epm_lemma_random_hermC3():
    g = build_tkk(build_jordan("hermC", 3))
    rng = random.Random(7)
    els = [g.J.random_element(rng) for _ in range(4)]
    assert verify_epm_brackets(g, els).ok


def test_epm_unit():
    g = build_tkk(build_jordan("hermC", 3))
    e = g.J.unit()
    Ep, Em, h = epm_h(g, e)
    assert Ep.bracket(Em) == -h


def test_h_commutator_random_pairs():
    g = build_tkk(build_jordan("hermH", 2))
    rng = random.Random(3)
    for _ in range(5):
        u, v = g.J.random_element(rng), g.J.random_element(rng)
        hu, hv = epm_h(g, u)[2], epm_h(g, v)[2]
        assert hu.bracket(hv) == g.LL(u, v).scale(Scalar(4))
        assert epm_h(g, u)[0].bracket(epm_h(g, v)[0]).is_zero()
        assert jmul(u, v) == jmul(v, u)

import dataclasses
from fractions import Fraction

import pytest

from tkklab.exactnum import ONE, Scalar
from tkklab.jordan import (
    KINDS,
    build_jordan,
    inner,
    jmul,
    jordan_frame,
    lmul_op,
    quad_rep,
    rank_degree,
    tau,
    trace_of,
    verify_frame,
    verify_jordan_axioms,
)

CASES = [("spin", 2), ("spin", 3), ("spin", 4), ("hermR", 3), ("hermC", 3), ("hermH", 3), ("hermO", 3)]


@pytest.mark.parametrize("kind,n,D,rd", [
    ("spin", 3, 4, (2, 2)),
    ("hermR", 3, 6, (3, 1)),
    ("hermC", 4, 16, (4, 2)),
    ("hermH", 3, 15, (3, 4)),
    ("hermO", 3, 27, (3, 8)),
])
def test_dimensions_and_rank_degree(kind, n, D, rd):
    J = build_jordan(kind, n)
    assert J.D == D
    assert rank_degree(J) == rd
    rho, d = rd
    assert D == rho + d * rho * (rho - 1) // 2


@pytest.mark.parametrize("n", [2, 3, 5, 6])
def test_spin_rank_degree(n):
    assert rank_degree(build_jordan("spin", n)) == (2, n - 1)


@pytest.mark.parametrize("kind,n", CASES)
def test_axioms_fifty_samples(kind, n):
    rep = verify_jordan_axioms(build_jordan(kind, n), samples=50, seed=0)
    assert rep.ok, rep.failures


@pytest.mark.parametrize("kind,n", CASES)
def test_frame_properties(kind, n):
    rep = verify_frame(build_jordan(kind, n))
    assert rep.ok, rep.failures


def test_corrupted_product_is_caught():
    J = build_jordan("hermR", 3)
    prod = [list(r) for r in J.prod]
    i = J.label_index("e12")
    # break (e12)^2 = (e11 + e22)/2
    prod[i][i] = {J.label_index("e11"): Scalar(1)}
    bad = dataclasses.replace(J, prod=tuple(tuple(r) for r in prod), _lcache={})
    assert not verify_frame(bad).ok


def test_products_in_frame():
    G = build_jordan("spin", 3)
    assert jmul(G["e11"], G["e22"]).is_zero()
    R = build_jordan("hermR", 3)
    half = Scalar(Fraction(1, 2))
    assert jmul(R["e12"], R["e12"]) == (R["e11"] + R["e22"]).scale(half)
    u = R.basis(4)
    assert jmul(R.unit(), u) == u


def test_unit_operators():
    J = build_jordan("hermC", 3)
    e = J.unit()
    I_op = lmul_op(e)
    assert all(I_op.apply([Scalar(int(i == j)) for i in range(J.D)])[j] == ONE for j in range(J.D))
    assert quad_rep(e) == I_op


def test_traces_and_inner_products():
    assert trace_of(build_jordan("hermC", 4).unit()) == Scalar(4)
    G = build_jordan("spin", 3)
    # tau(u, v) is the trace of L_{uv}; L_e is the identity on a 4-dim space
    assert tau(G.unit(), G.unit()) == Scalar(4)
    for kind, n in CASES:
        J = build_jordan(kind, n)
        assert inner(J["e11"], J["e11"]) == Scalar(Fraction(1, J.rho))
    H = build_jordan("hermH", 3)
    assert sum((H["e%d%d" % (i, i)] for i in (2, 3)), H["e11"]) == H.unit()
    assert trace_of(H["e12^i"]) == 0


@pytest.mark.parametrize("kind,n", CASES)
def test_trace_form_positive_definite(kind, n):
    J = build_jordan(kind, n)
    # the frame basis is orthogonal for tau, so positivity is a diagonal check
    gram = [[tau(J.basis(a), J.basis(b)) for b in range(J.D)] for a in range(J.D)]
    for a in range(J.D):
        assert gram[a][a] > 0
        assert all(gram[a][b] == 0 for b in range(J.D) if b != a)


def test_frame_object():
    J = build_jordan("hermC", 3)
    F = jordan_frame(J)
    assert len(F.idempotents) == 3
    assert {k: len(v) for k, v in F.offdiag.items()} == {(1, 2): 2, (1, 3): 2, (2, 3): 2}


def test_kind_validation():
    assert set(KINDS) == {"spin", "hermR", "hermC", "hermH", "hermO"}
    with pytest.raises(ValueError):
        build_jordan("hermO", 4)
    with pytest.raises(ValueError):
        build_jordan("hermR", 0)
    with pytest.raises(ValueError):
        build_jordan("quux", 3)

import json
from pathlib import Path

import pytest

from tkklab.cartan import (
    cartan_basis,
    cartan_rank,
    eval_weight,
    phi_displayed_images,
    phi_iso,
    readings,
    root_system,
    simple_roots,
    verify_phi,
)
from tkklab.exactnum import I, Scalar

GOLDEN = Path(__file__).parent / "golden"
ALGEBRAS = [("hermR", 3), ("hermC", 2), ("hermC", 3), ("hermH", 2), ("hermH", 3)]


@pytest.mark.parametrize("kind,n,count,rank", [
    ("hermR", 3, 18, 3), ("hermC", 3, 30, 5), ("hermH", 3, 60, 6), ("hermO", 3, 126, 7), ("spin", 3, 12, 3),
])
def test_root_system_sizes(kind, n, count, rank):
    roots = root_system(kind, n)
    assert len(roots) == count
    assert len(simple_roots(roots)) == rank == cartan_rank(kind, n)
    assert sum(r.positive for r in roots) == count // 2


def test_weight_pairing():
    roots = root_system("hermR", 3)
    long_root = next(r for r in roots if r.label == "2e1")
    assert eval_weight((1, 0, 0), long_root) == 1
    short = next(r for r in roots if r.label == "e1-e2")
    assert eval_weight((1, 0, 0), short) == 1


@pytest.mark.parametrize("kind,n", ALGEBRAS)
def test_displayed_cartan_basis(kind, n):
    cb = cartan_basis(kind, n)
    assert cb.report.ok, cb.report.failures
    assert all(x["ok"] for x in cb.report.details["displayed_H"])


@pytest.mark.parametrize("kind,n", ALGEBRAS)
def test_bracket_constants_stable(kind, n):
    golden = json.loads((GOLDEN / "cartan_constants.json").read_text())
    assert cartan_basis(kind, n).constants_json() == golden[f"{kind}{n}"]
    # a fresh build gives the same constants
    cartan_basis.cache_clear()
    assert cartan_basis(kind, n).constants_json() == golden[f"{kind}{n}"]


@pytest.mark.parametrize("n", [2, 3])
def test_su_verbatim_sign_fails(n):
    # the H lines only work with the opposite sign on the e_jj term
    rep = cartan_basis("hermC", n, "verbatim").report
    assert not rep.ok
    assert readings("hermC")[0] == "corrected"


def test_so_star_orientation():
    assert cartan_basis("hermH", 3, "left").report.ok
    assert not cartan_basis("hermH", 3, "right").report.ok
    assert not cartan_basis("hermH", 3, "minmax").report.ok


@pytest.mark.parametrize("m", [2, 3, 4])
def test_spin_cartan(m):
    assert cartan_basis("spin", m).report.ok


@pytest.mark.large
def test_e7_cartan():
    cb = cartan_basis("hermO", 3)
    assert cb.report.ok, cb.report.failures


@pytest.mark.parametrize("m", [2, 3, 4, 5])
def test_phi_isomorphism(m):
    rep = verify_phi(m)
    assert rep.ok, rep.failures
    pm = phi_iso(m)
    assert pm.co.dim == pm.so.dim == (m + 3) * (m + 2) // 2
    # bijective: the inverse undoes phi on every basis element
    for i in range(pm.co.dim):
        x = pm.co.basis(i)
        assert pm.apply_inverse(pm.apply(x)) == x


@pytest.mark.parametrize("m", [2, 3, 4, 5])
def test_phi_displayed_images(m):
    pm = phi_iso(m)
    shown = phi_displayed_images(m)
    assert {"X(e11)", "X(e22)", "Y(e11)", "Y(e22)", "X(e12^1)", "Y(e12^1)"} <= set(shown)
    for label, want in shown.items():
        assert pm.apply(pm.co.basis(pm.co.index(label))) == want


def test_so2m_relations():
    from tkklab.cartan import So2mAlgebra, so2m_algebra

    so = so2m_algebra(3)
    eta = So2mAlgebra.eta
    idx = range(-1, 5)
    # [M_ab, M_cd] = -i (eta_bc M_ad - eta_ac M_bd - eta_bd M_ac + eta_ad M_bc)
    for a in idx:
        for b in idx:
            if a == b:
                continue
            for c in idx:
                for d in idx:
                    if c == d:
                        continue
                    lhs = so.M(a, b).bracket(so.M(c, d))
                    rhs = so.element()
                    for coef, (p, q) in ((eta(b, c), (a, d)), (-eta(a, c), (b, d)),
                                         (-eta(b, d), (a, c)), (eta(a, d), (b, c))):
                        if coef and p != q:
                            rhs = rhs + so.M(p, q).scale(Scalar(coef))
                    assert lhs == rhs.scale(-I)

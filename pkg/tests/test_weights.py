from fractions import Fraction
from pathlib import Path

import pytest
import sympy

from tkklab.jordan import build_jordan, rank_degree
from tkklab.weights import (
    a_of,
    check_weight,
    derived_identity,
    ehw_rows,
    equations_for,
    families,
    joseph_a,
    match_family,
    solve_weights,
    span_check,
    tables_json,
    tables_markdown,
)

F = Fraction
GOLDEN = Path(__file__).parent / "golden"


# ----------------------------------------------------------------- tables

def test_tables_match_golden():
    assert tables_markdown() == (GOLDEN / "tables.md").read_text()
    assert tables_json().rstrip("\n") == (GOLDEN / "tables.json").read_text().rstrip("\n")


def test_table_cells():
    text = tables_markdown()
    for row in ("| Gamma(n) | 2 | n-1 |", "| H_3(O) | 3 | 8 |",
                "| H_n(H) | sp(n) | su*(2n)+R | so*(4n) |",
                "| so(2,2n-1) | n-3/2 | 2 | 2n-2 |", "| e7(-25) | 4 | 3 | 17 |"):
        assert row in text


def test_rank_and_degree_lemma_all_kinds():
    rows = ehw_rows()
    assert {r["kind"] for r in rows} == {"spin", "hermR", "hermC", "hermH", "hermO"}
    for r in rows:
        assert r["r_eq_rho"] and r["2C_eq_d"] and r["named_dims_match"], r


# ------------------------------------------------------- Joseph constant

KIND_NS = [(k, n) for k in ("spin", "hermR", "hermC", "hermH") for n in range(2, 7)] + [("hermO", 3)]


@pytest.mark.parametrize("kind,n", KIND_NS)
def test_joseph_constant(kind, n):
    rho, d = rank_degree(build_jordan(kind, n))
    want = F(rho * d, 4) * (1 + F((rho - 2) * d, 4))
    assert a_of(kind, n, 0) == joseph_a(kind, n) == want


def test_a_of_values():
    assert a_of("hermR", 3, 0) == F(15, 16)
    assert a_of("hermC", 3, 2) == F(5, 4)
    assert a_of("hermH", 3, 2) == 4
    assert a_of("hermO", 3) == 18
    with pytest.raises(ValueError):
        a_of("hermR", 3, 2)
    with pytest.raises(ValueError):
        a_of("hermO", 3, 1)


# ------------------------------------------------------ direct equations

@pytest.mark.parametrize("kind,n", [("hermR", 3), ("hermC", 2), ("hermC", 3), ("hermH", 2), ("hermH", 3)])
def test_family_weights_both_paths(kind, n):
    for fam in families(kind, n):
        for k in fam.ks(2, half_odd=True):
            a = a_of(kind, n, k)
            if a == 0:
                continue
            rep = check_weight(kind, n, fam.at(k), a)
            assert rep.ok, (fam.name, k, rep.to_json())


@pytest.mark.parametrize("m", [2, 3, 4])
def test_spin_family_weights(m):
    for fam in families("spin", m):
        for k in fam.ks(1, half_odd=True):
            rep = check_weight("spin", m, fam.at(k), a_of("spin", m, k))
            assert rep.ok, rep.to_json()


def test_e7_weight_direct():
    rep = check_weight("e7", 3, (0, 0, 0, 0, 0, -4, 2, -2), 18, hw=False)
    assert rep.ok
    assert rep.family == [{"family": "e7", "k": "0", "a": "18", "a_matches": True}]


def test_wrong_a_rejected():
    rep = check_weight("hermR", 3, (F(-1, 2),) * 3, 1, hw=False)
    assert not rep.ok
    assert "a differs from the family constant" in rep.notes


def test_zero_weight_and_zero_a():
    rep = check_weight("hermC", 2, (0, 0, 0, 0), 0, hw=False)
    assert not rep.ok
    assert "trivial weight" in rep.notes and "a must be nonzero" in rep.notes


def test_so12_spurious_weight_excluded():
    # satisfies the Casimir and Q2 equations but not the off-diagonal Q4 one
    rep = check_weight("hermH", 3, (0, 0, 0, -3, -3, -3), F(9, 4), hw=False)
    assert rep.equations["casimir"]["holds"] and rep.equations["q2"]["holds"]
    assert rep.equations["q4[e12]"]["value"] == "12"
    assert not rep.ok


def test_so8_system_omits_offdiagonal_equation():
    assert "q4[e12]" not in equations_for("hermH", 2).labels()
    assert "q4[e12]" in equations_for("hermH", 3).labels()


# ---------------------------------------------- span of hw polynomials

def test_span_su33():
    sc = span_check("hermC", 3)
    assert sc["casimir"]["coefficients"] is not None
    assert all(v["coefficients"] is not None for v in sc.values())


def test_span_so12_q4_offdiagonal_not_in_span():
    sc = span_check("hermH", 3)
    assert sc["q4[e12]"]["coefficients"] is None
    assert sc["casimir"]["coefficients"] is not None


def test_span_e7():
    sc = span_check("hermO", 3)
    assert sc["q3[e33]"]["coefficients"] is not None
    assert sc["q4[e33]"]["coefficients"] is None


# -------------------------------------------------- derived identities

@pytest.mark.parametrize("kind,n", [("hermC", 3), ("hermC", 4), ("hermH", 3), ("hermH", 4)])
def test_pair_equation_derived(kind, n):
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            assert derived_identity(kind, n, i, j)


# ---------------------------------------------------------- families

def test_match_family():
    assert match_family("hermR", 3, (F(-1, 2), F(-1, 2), F(-3, 2))) == [("sp", 1)]
    assert match_family("hermR", 3, (1, 1, 1)) == []


# ------------------------------------------------------------ solver

def test_solver_sp3():
    res = solve_weights("hermR", 3, k_max=2, bound=3)
    assert res.exact and not res.beyond
    assert sorted(w for w, _ in res.solutions) == [(F(-1, 2), F(-1, 2), F(-3, 2)), (F(-1, 2),) * 3]


def test_solver_so12():
    res = solve_weights("hermH", 3, k_max=2, bound=3)
    assert res.exact and not res.beyond
    assert len(res.solutions) == 3


def test_solver_su33():
    res = solve_weights("hermC", 3, k_max=2, bound=3)
    assert res.exact and not res.beyond
    assert len(res.solutions) == 5


def test_solver_e7():
    res = solve_weights("hermO", 3, k_max=0, bound=5)
    assert [w for w, _ in res.solutions] == [(0, 0, 0, 0, 0, -4, 2, -2)]
    assert res.solutions[0][1] == 18


def test_solver_rejects_spin():
    with pytest.raises(ValueError):
        solve_weights("spin", 3)


def test_equation_polynomials_are_exact():
    system = equations_for("hermR", 3)
    l = sympy.symbols("l1:4")
    cas = system.casimir
    assert cas.fn(list(l), 0).free_symbols <= set(l)


@pytest.mark.parametrize("kind,n", [("hermR", 3), ("hermR", 4), ("hermC", 2), ("hermC", 3), ("hermC", 4),
                                    ("hermH", 2), ("hermH", 3), ("hermH", 4), ("hermO", 3),
                                    ("spin", 2), ("spin", 3), ("spin", 5)])
def test_families_up_to_k4_direct(kind, n):
    system = equations_for(kind, n)
    zero_a = []
    for fam in families(kind, n):
        for k in fam.ks(4, half_odd=True):
            a = a_of(kind, n, k)
            if a == 0:
                # excluded: the relation needs a nonzero constant
                zero_a.append(k)
                continue
            assert system.solve_a(fam.at(k)) == a
            assert check_weight(kind, n, fam.at(k), a, hw=False).ok, (fam.name, k)
    if kind == "hermC":
        assert set(zero_a) == {n}

"""
Quadratic relations in the enveloping algebra
=============================================

Work in U(co(J)) with a PBW basis adapted to the triangular decomposition,
form the quadratic elements Q1..Q4, and evaluate them on a highest weight
vector to get polynomial equations in the weight.
"""

from fractions import Fraction

from tkklab.exactnum import sqrt
from tkklab.jordan import build_jordan
from tkklab.ueval import (
    hw_eval,
    hw_polynomial,
    q_elements,
    triangular_split,
    verify_q1_commutator,
    verify_lemma7,
    verify_q1_q1prime,
)

S = triangular_split("hermR", 3)
J = S.g.J
print("PBW letters:", len(S.lie.labels))

# Scalar parts as polynomials in the weight coordinates
Q = q_elements(S, 0, J["e11"].scale(sqrt(3)))
for name in ("Q1", "Q2", "Q3", "Q4"):
    print(name, "=", hw_polynomial(S, getattr(Q, name)))

# Both members of the weight family annihilate all four once a = 15/16
a = Fraction(15, 16)
Qa = q_elements(S, a, J["e11"].scale(sqrt(3)))
for lam in [(Fraction(-1, 2),) * 3, (Fraction(-1, 2), Fraction(-1, 2), Fraction(-3, 2))]:
    print(lam, [str(hw_eval(S, getattr(Qa, q), lam).scalar_part) for q in ("Q1", "Q2", "Q3", "Q4")])

# Identities in U(g)
R3 = build_jordan("hermR", 3)
print(verify_q1_commutator(R3).to_json())
print(verify_q1_q1prime(R3).to_json())

# The nested-commutator closed forms, exhaustively to depth 3 and sampled beyond
rep = verify_lemma7(build_jordan("hermC", 2))
print("lemma ok:", rep.ok)
for label, s in rep.details["summary"].items():
    print(f"  {label:14s} {s['checked']:4d} checked, {s['failed']} failed")

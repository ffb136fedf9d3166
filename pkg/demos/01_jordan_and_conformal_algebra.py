"""
Jordan algebras and their conformal algebras
============================================

Build a few Euclidean Jordan algebras, read off rank and degree, and
assemble the 3-graded Lie algebra co(J) = J + str(J) + J*.
"""

from tkklab.jordan import build_jordan, jmul, rank_degree, verify_frame
from tkklab.tkk import build_tkk, epm_h, verify_epm_brackets, verify_jacobi

# Rank, degree and dimension: D = rho + d rho (rho - 1) / 2
for kind, n in [("spin", 4), ("hermR", 3), ("hermC", 3), ("hermH", 3), ("hermO", 3)]:
    J = build_jordan(kind, n)
    rho, d = rank_degree(J)
    print(f"{kind}({n}): D={J.D} rho={rho} d={d}")

# The frame basis: idempotents e_ii, then off-diagonal e_ij^mu of length 1/sqrt(rho)
J = build_jordan("hermC", 2)
print(J.labels)
print("e12 * e12 =", jmul(J["e12"], J["e12"]))
print("frame relations hold:", verify_frame(J).ok)

# co(J) and its Jacobi identity, checked on every basis triple
g = build_tkk(build_jordan("hermR", 3))
print(f"dim co(H_3(R)) = {g.dim}  (sp(3,R))")
print(verify_jacobi(g).to_json())

# The complexified triple E_u^+, E_u^-, h_u spans an sl(2) for u = e
Ep, Em, h = epm_h(g, g.J.unit())
print("[E+, E-] == -h:", Ep.bracket(Em) == -h)
print(verify_epm_brackets(g).to_json())

"""
Root vectors and Cartan subalgebras
===================================

Materialize the explicit Cartan bases inside co(J), check every eigenvalue
relation, and pull so(2, m+1) back to co(Gamma(m)).
"""

from tkklab.cartan import cartan_basis, phi_iso, readings, root_system, simple_roots, verify_phi

# sp(3, R) from H_3(R)
cb = cartan_basis("hermR", 3)
print(cb.report.name, "ok:", cb.report.ok, "checks:", cb.report.checked)
print("simple roots:", [r.label for r in cb.simple])
print("[E_a, E_-a] = c H_a with c:", cb.constants_json())

# Two readings of the su(n, n) Cartan lines; only one satisfies the relations
for reading in readings("hermC"):
    rep = cartan_basis("hermC", 2, reading).report
    print(f"su(2,2) [{reading}]: ok={rep.ok}")

# so*(12) from H_3(H)
roots = root_system("hermH", 3)
print(len(roots), "roots,", len(simple_roots(roots)), "simple")
print(cartan_basis("hermH", 3).report.ok)

# co(Gamma(m)) is so(2, m+1)
pm = phi_iso(3)
print(verify_phi(3).to_json())
print("image of X_e11:", pm.apply(pm.co.basis(pm.co.index("X(e11)"))))

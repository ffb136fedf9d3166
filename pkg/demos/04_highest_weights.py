"""
Highest weights with minimal Gelfand-Kirillov dimension
=======================================================

Solve the highest-weight equations on a bounded lattice box and compare the
solutions with the closed-form families and their constants a.
"""

from tkklab.weights import a_of, check_weight, families, joseph_a, solve_weights, tables_markdown

# The constant a at k = 0 is the Joseph value rho d/4 (1 + (rho - 2) d/4)
for kind, n in [("spin", 5), ("hermR", 4), ("hermC", 3), ("hermH", 3), ("hermO", 3)]:
    print(f"{kind}({n}): a = {a_of(kind, n)} (Joseph {joseph_a(kind, n)})")

# sp(3, R): the search finds exactly the two family weights
res = solve_weights("hermR", 3, k_max=2, bound=3)
for w, a in res.solutions:
    print([str(x) for x in w], "a =", a)
print("exact:", res.exact)

# so*(12): family weights pass, a lookalike that only satisfies two equations does not
for fam in families("hermH", 3):
    for k in range(3):
        rep = check_weight("hermH", 3, fam.at(k), a_of("hermH", 3, k), hw=False)
        print(fam.name, k, rep.ok)
bad = check_weight("hermH", 3, (0, 0, 0, -3, -3, -3), "9/4", hw=False)
print("lookalike:", bad.ok, {k: v["value"] for k, v in bad.equations.items() if not v["holds"]})

# e7(-25): one weight
print(check_weight("e7", 3, (0, 0, 0, 0, 0, -4, 2, -2), 18, hw=False).ok)

print(tables_markdown())

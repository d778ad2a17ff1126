"""
A family of noncyclic matrices
==============================

For each nonzero ``lam`` the set ``T_lam`` collects invertible matrices
fixing ``U`` that have a ``lam``-eigenvector in ``e_1 + <e_2..e_r>``,
another in ``e_n + <e_1..e_{n-1}>``, and where ``(t - lam)**3`` does not
divide the characteristic polynomial. Two independent eigenvectors for one
eigenvalue rule out cyclicity.
"""

from cyclicprop.ffcensus import t_lambda_family

# %%
# Over F_2 the family is empty: the only eigenvalue available is 1, and the
# two eigenvectors already force ``(t - 1)**3`` to divide ``c_T``.

print(t_lambda_family(2, 4, 2).to_json()["per_lambda"])

# %%
# Over F_3 the sets are nonempty and overlap very little.

for n, r in [(3, 1), (4, 2)]:
    fam = t_lambda_family(3, n, r)
    for res in fam.per_lambda:
        print(f"n={n} r={r} lam={res.lam}: {res.members} members, "
              f"bound {res.size_bound}, all noncyclic {res.all_noncyclic}")
    print("   intersections", fam.intersections, "bound", fam.intersection_bound)

"""The infinite-dimensional modules V^s inside the second Fock space.

F2 splits as a direct sum of the V^s, s = r2 - r1.  When p divides s the
module is irreducible of highest weight -(|s| + 1); otherwise it has one
proper submodule, and together with the quotients these exhaust the
negative highest weights.
"""

from qfock.rep_analysis import classify, infinite_module

p = 3
print(f"p = {p}, window 6p")
print("   s  irreducible  submodule hw  quotient hw")
for s in range(-7, 8):
    r = infinite_module(p, s)
    sub = [w.lam for w in r.submodule_highest_weights] or "-"
    quo = [w.lam for w in r.quotient_highest_weights] or "-"
    print(f" {s:3d}  {str(r.irreducible):5s}        {str(sub):12s}  {quo}")

print()
for lam in (-1, -4, -8, -9):
    print(f"V({lam}):")
    for recipe in classify(p, lam):
        print(f"   {recipe['object']:9s} of {recipe['module']}  [{recipe['source']}]")

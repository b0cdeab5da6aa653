"""Weyl modules V_m inside the first Fock space.

V_m is irreducible exactly when m < p or the low digit of m is p - 1.
Otherwise closure under the divided powers finds a proper submodule, and
the irreducible head has dimension (m0 + 1)(m1 + 1).
"""

from qfock.exact_arith import CyclotomicNumber, digits
from qfock.rep_analysis import closure, computed_maximal_submodule, is_irreducible, weyl_maximal_submodule, weyl_module

p = 5
print(f"p = {p}")
print("  m  (m0,m1)  irreducible  V' (computed)        head dim")
for m in range(1, 16):
    report = weyl_module(p, m)
    sub = computed_maximal_submodule(report)
    assert sub == weyl_maximal_submodule(p, m)
    m0, m1 = digits(m, p)
    print(f" {m:2d}  ({m0},{m1})    {str(is_irreducible(report)):5s}        {str(sub):20s} {report.dim - len(sub)}")

report = weyl_module(p, 12)
print()
print("weyl(5, 12): highest weight vectors")
for vec, w in report.highest_weight_vectors:
    print("  ", report.basis[min(vec)], "weight", w.lam)
span = closure([{3: CyclotomicNumber.from_int(p, 1)}], report)
print("closure of v_3 has dimension", span.dim, "and support", span.support())

"""Gaussian binomials, generic and at a root of unity.

At a primitive p-th root of unity the binomial [n over p] collapses to the
upper digit of n = n0 + p*n1, negative n included once floor division is
used for the digits.
"""

from qfock.exact_arith import CyclotomicNumber, digits, q_binomial, q_int, specialize

print("[3]_q =", q_int(3))
print("[4 over 2]_q =", q_binomial(4, 2))
print("[-2 over 3]_q =", q_binomial(-2, 3))
print()

p = 5
print(f"p = {p}:  n, digits, [n over p] at eps")
for n in (-11, -6, -1, 0, 4, 5, 13, 24):
    value = specialize(q_binomial(n, p), p)
    n0, n1 = digits(n, p)
    assert value == CyclotomicNumber.from_int(p, n1)
    print(f"  {n:4d}   ({n0}, {n1:2d})   {value}")

print()
print("below p the binomial stays a genuine cyclotomic number:")
print("  [7 over 2] at eps_5 =", specialize(q_binomial(7, 2), 5))

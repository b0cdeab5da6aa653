"""Normal ordering in the two restricted q-boson forms.

res1 keeps divided creators on both sites; res2 trades the second site's
divided creator for a divided annihilator.  The realizations of e and f
land in these forms, and both rewriting strategies agree.
"""

from qfock.qboson import RES1, RES2, NotIntegral, a, a_div, a_plus, a_plus_div, convert_basis, normal_order
from qfock.uq_algebra import e, f, realize

print("a1 a1+          =", normal_order([a(1), a_plus(1)], RES1))
print("a1^2 a1+^(2)    =", normal_order([a(1, 2), a_plus_div(1, 2)], RES1))
print("a2^(2) a2+^3    =", normal_order([a_div(2, 2), a_plus(2, 3)], RES2))
print()

word = [a(1, 2), a_plus_div(1, 3), a_plus(2), a(2)]
left = normal_order(word, RES1, "leftmost")
right = normal_order(word, RES1, "rightmost")
print("leftmost and rightmost rewriting agree:", left == right)
print()

for r in (1, 2, 3):
    print(f"realization 1: e^({r}) =", realize(e(r), 1))
    print(f"realization 2: f^({r}) =", realize(f(r), 2))
print()

try:
    convert_basis(realize(f(2), 1), RES2)
except NotIntegral as exc:
    print("f^(2) of realization 1 is not in res2:", exc)

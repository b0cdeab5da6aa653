"""Independent reference computations used to check the main code paths.

Nothing here calls the rewriting system or the closed-form actions it is
meant to check.
"""

from __future__ import annotations

import cmath
from functools import lru_cache

from .exact_arith import ONE, ZERO, CyclotomicNumber, LaurentPoly, q_factorial, q_int, specialize

_Q2 = LaurentPoly.monomial(2)


@lru_cache(maxsize=None)
def brute_force_one_site(n, m):
    """a^n a^{+m} in ordinary powers, by repeatedly rewriting a a+ -> q^2 a+ a + 1.

    Returns {(creator power, annihilator power): coeff}.
    """
    # words over {0: a+, 1: a}; start with a^n (a+)^m
    pending = {(1,) * n + (0,) * m: ONE}
    done = {}
    while pending:
        w, c = pending.popitem()
        i = next((k for k in range(len(w) - 1) if w[k] == 1 and w[k + 1] == 0), None)
        if i is None:
            key = (w.count(0), w.count(1))
            done[key] = done.get(key, ZERO) + c
            continue
        swapped = w[:i] + (0, 1) + w[i + 2:]
        dropped = w[:i] + w[i + 2:]
        pending[swapped] = pending.get(swapped, ZERO) + c * _Q2
        pending[dropped] = pending.get(dropped, ZERO) + c
    return {k: v for k, v in done.items() if v}


def brute_divided_creator(n, m):
    """a^n a^{+(m)} expanded on a^{+(s)} a^t: {(s, t): coeff}."""
    out = {}
    for (s, t), c in brute_force_one_site(n, m).items():
        out[(s, t)] = (c * q_factorial(s)).exact_div(q_factorial(m))
    return out


def brute_divided_annihilator(n, m):
    """a^(n) a^{+m} expanded on a^{+s} a^(t): {(s, t): coeff}."""
    out = {}
    for (s, t), c in brute_force_one_site(n, m).items():
        out[(s, t)] = (c * q_factorial(t)).exact_div(q_factorial(n))
    return out


def binomial_product_at_root(n, m, p):
    """[n over m] at eps from the product formula evaluated in Q(eps).

    Only defined when the denominator [m]_eps! is nonzero, i.e. m < p.
    """
    if m < 0:
        return CyclotomicNumber.from_int(p, 0)
    num = CyclotomicNumber.from_int(p, 1)
    den = CyclotomicNumber.from_int(p, 1)
    for k in range(m):
        num = num * specialize(q_int(n - k), p)
        den = den * specialize(q_int(k + 1), p)
    if not den:
        raise ZeroDivisionError(f"[{m}]! vanishes at a primitive {p}-th root of unity")
    return num / den


def laurent_at_complex(poly, p):
    """Numeric value of a Laurent polynomial at exp(2 pi i / p)."""
    return poly.evaluate(cmath.exp(2j * cmath.pi / p))


"""U_q(sl2), its restricted generators and the two q-boson realizations."""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

from .exact_arith import ONE, Digits, LaurentPoly, check_p, digits
from .qboson import RES1, RES2, BosonElement, PBWMonomial, a, a_div, a_plus, a_plus_div, normal_order
from .qboson import K as Kb
from .qboson import K_inv as Kb_inv

E = "e"
F = "f"
KK = "K"
KINV = "K_inv"
KZERO = "Kzero"


class UnsupportedOperation(Exception):
    pass


@dataclass(frozen=True)
class UGenerator:
    """e^(r), f^(r), K, K^-1 or [K;0;p].

    ``r`` is the divided-power order for e/f; for [K;0;p] it holds p.
    """

    kind: str
    r: int = 1

    def __post_init__(self):
        if self.kind not in (E, F, KK, KINV, KZERO):
            raise ValueError(f"unknown U generator {self.kind!r}")
        if self.r < 1:
            raise ValueError(f"r must be >= 1, got {self.r}")
        if self.kind == KZERO:
            check_p(self.r)

    def __str__(self):
        if self.kind in (E, F):
            return self.kind if self.r == 1 else f"{self.kind}^({self.r})"
        if self.kind == KZERO:
            return f"[K;0;{self.r}]"
        return self.kind


def e(r=1):
    return UGenerator(E, r)


def f(r=1):
    return UGenerator(F, r)


K = UGenerator(KK)
K_INV = UGenerator(KINV)


def kzero(p):
    return UGenerator(KZERO, p)


class Weight(NamedTuple):
    """Integral weight lambda with its digits; K acts by eps^lambda0 and
    [K;0;p] by lambda1."""

    lam: int
    digits: Digits


def weight_digits(m, p):
    return Weight(m, digits(m, p))


def _mono(form, coeff=ONE, **exps):
    return BosonElement.monomial(PBWMonomial(form=form, **exps), coeff)


def realize(g, which):
    """Image of a generator under realization 1 (into res1) or 2 (into res2).

    Realization 1:  e^(r) = q^{-r(r-1)/2} K2^-r a1+^(r) a2^r,
                    f^(r) = q^{-r(r-1)/2} K1^-r a2+^(r) a1^r,   K = K1 K2^-1.
    Realization 2:  e^(r) = q^{-r(r-1)} K1^-r K2^-r a1^r a2^(r),
                    f^(r) = (-1)^r a1+^(r) a2+^r,               K = q^-1 K1^-1 K2^-1.
    Words are given in the order written; the result is normal ordered.
    """
    if g.kind == KZERO:
        raise UnsupportedOperation("[K;0;p] has no realization as a single boson element; act on weight vectors instead")
    r = g.r
    if which == 1:
        if g.kind == E:
            word = [Kb_inv(2, r), a_plus_div(1, r), a(2, r)]
            return normal_order(word, RES1).scale(LaurentPoly.monomial(-r * (r - 1) // 2))
        if g.kind == F:
            word = [Kb_inv(1, r), a_plus_div(2, r), a(1, r)]
            return normal_order(word, RES1).scale(LaurentPoly.monomial(-r * (r - 1) // 2))
        if g.kind == KK:
            return _mono(RES1, t1=1, t2=-1)
        return _mono(RES1, t1=-1, t2=1)
    if which == 2:
        if g.kind == E:
            word = [Kb_inv(1, r), Kb_inv(2, r), a(1, r), a_div(2, r)]
            return normal_order(word, RES2).scale(LaurentPoly.monomial(-r * (r - 1)))
        if g.kind == F:
            word = [a_plus_div(1, r), a_plus(2, r)]
            return normal_order(word, RES2).scale((-1) ** r)
        if g.kind == KK:
            return _mono(RES2, LaurentPoly.monomial(-1), t1=-1, t2=-1)
        return _mono(RES2, LaurentPoly.monomial(1), t1=1, t2=1)
    raise ValueError(f"realization must be 1 or 2, got {which!r}")


def kzero_eigenvalue(m, p):
    """[K;0;p] on a vector with K = q^m, from the defining product

        prod_{s=1}^{p} (q^{m+1-s} - q^{s-1-m}) / (q^s - q^{-s}),

    divided exactly in Z[q, q^-1] before any specialization.
    """
    check_p(p)
    num = ONE
    den = ONE
    for s in range(1, p + 1):
        num = num * (LaurentPoly.monomial(m + 1 - s) - LaurentPoly.monomial(s - 1 - m))
        den = den * (LaurentPoly.monomial(s) - LaurentPoly.monomial(-s))
    return num.exact_div(den)


class RelationFailure(NamedTuple):
    relation: str
    vector: str
    lhs: str
    rhs: str


def _fock_basis(which, bound):
    from .fock_modules import FockVector

    space = "F1" if which == 1 else "F2"
    for r1 in range(bound + 1):
        for r2 in range(bound + 1):
            yield FockVector.basis(space, r1, r2)


def verify_defining_relations(which, bound, action=None):
    """Check the U_q(sl2) relations as operator identities on Fock basis
    vectors with r1, r2 <= bound, symbolically in q.

    ``action(g, v)`` defaults to the closed-form Fock action of the given
    realization; pass another action (e.g. an oracle over a modified
    realization) to test it instead.  Returns None when everything holds,
    otherwise the first RelationFailure.
    """
    if bound < 1:
        raise ValueError("bound must be >= 1")
    from .exact_arith import q_factorial
    from .fock_modules import act

    if action is None:
        def action(g, v):
            return act(g, v, which)

    qmq = LaurentPoly({1: 1, -1: -1})
    q2 = LaurentPoly.monomial(2)
    qm2 = LaurentPoly.monomial(-2)

    for v in _fock_basis(which, bound):
        Kv = action(K, v)
        Kiv = action(K_INV, v)
        checks = [
            ("K K^-1 = 1", action(K, Kiv), v),
            ("K^-1 K = 1", action(K_INV, Kv), v),
            ("K e K^-1 = q^2 e", action(K, action(e(), Kiv)), action(e(), v).scale(q2)),
            ("K f K^-1 = q^-2 f", action(K, action(f(), Kiv)), action(f(), v).scale(qm2)),
            (
                "(q - q^-1)[e, f] = K - K^-1",
                (action(e(), action(f(), v)) - action(f(), action(e(), v))).scale(qmq),
                Kv - Kiv,
            ),
        ]
        for rel, lhs, rhs in checks:
            if lhs != rhs:
                return RelationFailure(rel, str(v), str(lhs), str(rhs))
        ev = v
        fv = v
        for r in range(1, bound + 1):
            ev = action(e(), ev)
            fv = action(f(), fv)
            lhs_e = action(e(r), v).scale(q_factorial(r))
            if lhs_e != ev:
                return RelationFailure(f"[{r}]! e^({r}) = e^{r}", str(v), str(lhs_e), str(ev))
            lhs_f = action(f(r), v).scale(q_factorial(r))
            if lhs_f != fv:
                return RelationFailure(f"[{r}]! f^({r}) = f^{r}", str(v), str(lhs_f), str(fv))
    return None

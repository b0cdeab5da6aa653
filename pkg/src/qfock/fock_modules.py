"""Restricted q-Fock spaces F1 and F2 with the U action of both realizations.

F1 has basis f(r1, r2) = a1+^(r1) a2+^(r2) |0>, acted on by realization 1;
F2 has basis g(r1, r2) = a1+^(r1) a2+^r2 |0>, acted on by realization 2.
Vectors carry either generic-q scalars (LaurentPoly, ``p is None``) or
scalars specialized at a primitive p-th root of unity (CyclotomicNumber).
"""

from __future__ import annotations

from typing import NamedTuple

from .exact_arith import (
    ZERO,
    CyclotomicNumber,
    LaurentPoly,
    check_p,
    digits,
    q_binomial,
    q_binomial_at,
    specialize,
)
from .qboson import RES1, RES2, BosonElement, PBWMonomial, normal_order_letters
from .uq_algebra import E, F, KINV, KK, KZERO, Weight, realize, weight_digits

F1 = "F1"
F2 = "F2"
_SPACE_OF = {1: F1, 2: F2}
_FORM_OF = {F1: RES1, F2: RES2}


class FockLabel(NamedTuple):
    space: str
    r1: int
    r2: int

    def __str__(self):
        name = "f" if self.space == F1 else "g"
        return f"{name}({self.r1},{self.r2})"


class FockVector:
    """Finitely supported vector in F1 or F2.

    ``p`` is None for generic q, otherwise the root order of the
    specialization; zero coefficients are never stored.
    """

    __slots__ = ("space", "p", "_terms")

    def __init__(self, space, terms=None, p=None):
        if space not in (F1, F2):
            raise ValueError(f"unknown Fock space {space!r}")
        if p is not None:
            check_p(p)
        clean = {}
        for lab, c in (terms or {}).items():
            lab = FockLabel(space, *lab[-2:]) if not isinstance(lab, FockLabel) else lab
            if lab.space != space:
                raise ValueError(f"label {lab} is not in {space}")
            if lab.r1 < 0 or lab.r2 < 0:
                raise ValueError(f"negative Fock label {tuple(lab)}")
            c = _coerce_scalar(c, p)
            if c:
                clean[lab] = clean.get(lab, _zero(p)) + c
                if not clean[lab]:
                    del clean[lab]
        self.space = space
        self.p = p
        self._terms = clean

    @classmethod
    def basis(cls, space, r1, r2, p=None):
        return cls(space, {(r1, r2): 1}, p)

    @property
    def terms(self):
        return dict(self._terms)

    def items(self):
        return sorted(self._terms.items())

    def labels(self):
        return sorted(self._terms)

    def coefficient(self, r1, r2):
        return self._terms.get(FockLabel(self.space, r1, r2), _zero(self.p))

    def __bool__(self):
        return bool(self._terms)

    def _check(self, other):
        if self.space != other.space or self.p != other.p:
            raise ValueError("vectors live in different spaces")

    def __eq__(self, other):
        if not isinstance(other, FockVector):
            return NotImplemented
        return self.space == other.space and self.p == other.p and self._terms == other._terms

    def __hash__(self):
        return hash((self.space, self.p, frozenset(self._terms.items())))

    def __add__(self, other):
        self._check(other)
        out = dict(self._terms)
        for lab, c in other._terms.items():
            out[lab] = out.get(lab, _zero(self.p)) + c
        return FockVector(self.space, out, self.p)

    def __neg__(self):
        return FockVector(self.space, {k: -v for k, v in self._terms.items()}, self.p)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        c = _coerce_scalar(c, self.p)
        return FockVector(self.space, {k: c * v for k, v in self._terms.items()}, self.p)

    def __str__(self):
        if not self._terms:
            return "0"
        return " + ".join(f"({c}) · {lab}" for lab, c in self.items())

    def __repr__(self):
        return f"FockVector[{self.space}, p={self.p}]({self})"


def _zero(p):
    return ZERO if p is None else CyclotomicNumber.from_int(p, 0)


def _coerce_scalar(c, p):
    if p is None:
        if isinstance(c, int):
            return LaurentPoly(c)
        if not isinstance(c, LaurentPoly):
            raise TypeError(f"generic-q vectors need LaurentPoly coefficients, got {type(c).__name__}")
        return c
    if isinstance(c, LaurentPoly):
        return specialize(c, p)
    if isinstance(c, int):
        return CyclotomicNumber.from_int(p, c)
    if isinstance(c, CyclotomicNumber):
        if c.p != p:
            raise ValueError(f"scalar lives at p={c.p}, vector at p={p}")
        return c
    raise TypeError(f"unsupported scalar {c!r}")


def _binom(n, m, p):
    return q_binomial(n, m) if p is None else q_binomial_at(n, m, p)


def _qpow(k, p):
    return LaurentPoly.monomial(k) if p is None else CyclotomicNumber.eps_power(p, k)


def _sign(r, p):
    return LaurentPoly((-1) ** r) if p is None else CyclotomicNumber.from_int(p, (-1) ** r)


def weight_of(label, which=None, p=None):
    """Weight of a basis vector: r1 - r2 on F1, -(r1 + r2 + 1) on F2.

    Returns the integer when ``p`` is None, otherwise a Weight with digits.
    """
    if which is not None and _SPACE_OF.get(which) != label.space:
        raise ValueError(f"{label} is not in the space of realization {which}")
    lam = label.r1 - label.r2 if label.space == F1 else -(label.r1 + label.r2 + 1)
    return lam if p is None else weight_digits(lam, p)


def _kzero_value(lam, gp, p):
    if p is None:
        return q_binomial(lam, gp)
    if p != gp:
        raise ValueError(f"[K;0;{gp}] acting on a vector specialized at p={p}")
    return CyclotomicNumber.from_int(p, digits(lam, p).n1)


def _act_basis(g, lab, p):
    """Closed-form image of one basis vector: list of ((r1, r2), coeff)."""
    r1, r2 = lab.r1, lab.r2
    if lab.space == F1:
        lam = r1 - r2
        if g.kind == KK:
            return [((r1, r2), _qpow(lam, p))]
        if g.kind == KINV:
            return [((r1, r2), _qpow(-lam, p))]
        if g.kind == KZERO:
            return [((r1, r2), _kzero_value(lam, g.r, p))]
        r = g.r
        if g.kind == E:
            # e^(r) f(r1, r2) = [r + r1 over r] f(r1 + r, r2 - r)
            if r2 < r:
                return []
            return [((r1 + r, r2 - r), _binom(r + r1, r, p))]
        if r1 < r:
            return []
        # f^(r) f(r1, r2) = [r + r2 over r] f(r1 - r, r2 + r)
        return [((r1 - r, r2 + r), _binom(r + r2, r, p))]
    lam = -(r1 + r2 + 1)
    if g.kind == KK:
        return [((r1, r2), _qpow(lam, p))]
    if g.kind == KINV:
        return [((r1, r2), _qpow(-lam, p))]
    if g.kind == KZERO:
        return [((r1, r2), _kzero_value(lam, g.r, p))]
    r = g.r
    if g.kind == E:
        # e^(r) g(r1, r2) = [r2 over r2 - r] g(r1 - r, r2 - r)
        if r1 < r or r2 < r:
            return []
        return [((r1 - r, r2 - r), _binom(r2, r2 - r, p))]
    # f^(r) g(r1, r2) = (-1)^r [r + r1 over r] g(r1 + r, r2 + r)
    return [((r1 + r, r2 + r), _sign(r, p) * _binom(r + r1, r, p))]


def act(g, v, which):
    """Action of a U generator on a Fock vector (closed forms)."""
    if _SPACE_OF.get(which) != v.space:
        raise ValueError(f"realization {which} acts on {_SPACE_OF.get(which)}, not {v.space}")
    out = {}
    zero = _zero(v.p)
    for lab, c in v._terms.items():
        for target, coeff in _act_basis(g, lab, v.p):
            out[target] = out.get(target, zero) + c * coeff
    return FockVector(v.space, out, v.p)


def act_word(word, v, which):
    """Apply a word of generators (rightmost acts first)."""
    for g in reversed(list(word)):
        v = act(g, v, which)
    return v


def creator_element(label):
    """The creator monomial of a basis label as a boson element."""
    form = _FORM_OF[label.space]
    return BosonElement.monomial(PBWMonomial(r1=label.r1, r2=label.r2, form=form))


def act_oracle(g, label, which, realization=None, p=None):
    """Action computed from scratch in the boson algebra.

    Multiplies the realized generator by the creator monomial of ``label``,
    normal orders, and evaluates on the vacuum: every monomial carrying an
    annihilator dies (a1|0> = a2|0> = 0 on F1; a1^r|0> = a2^(r)|0> = 0 on
    F2) and K1, K2 act trivially.
    """
    if _SPACE_OF.get(which) != label.space:
        raise ValueError(f"realization {which} acts on {_SPACE_OF.get(which)}, not {label.space}")
    realization = realization or realize
    elem = realization(g, which)
    form = _FORM_OF[label.space]
    creators = PBWMonomial(r1=label.r1, r2=label.r2, form=form).letters()
    out = {}
    for gm, gc in elem.terms.items():
        prod = normal_order_letters(gm.letters() + creators, form, coeff=gc, vacuum=True)
        for mono, c in prod.terms.items():
            assert not (mono.s1 or mono.s2 or mono.t1 or mono.t2)
            out[(mono.r1, mono.r2)] = out.get((mono.r1, mono.r2), ZERO) + c
    vec = FockVector(label.space, out)
    return vec if p is None else specialize_vector(vec, p)


def specialize_vector(v, p):
    """Coefficient-wise q -> eps."""
    if v.p is not None:
        raise ValueError("vector is already specialized")
    return FockVector(v.space, {lab: specialize(c, p) for lab, c in v._terms.items()}, p)


def oracle_action(which, realization=None):
    """An ``action(g, v)`` callable built on act_oracle, memoized per
    (generator, basis label)."""
    cache = {}

    def action(g, v):
        out = FockVector(v.space, p=v.p)
        for lab, c in v.terms.items():
            key = (g, lab, v.p)
            img = cache.get(key)
            if img is None:
                img = cache[key] = act_oracle(g, lab, which, realization, v.p)
            out = out + img.scale(c)
        return out

    return action

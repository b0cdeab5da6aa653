"""Rank-2 q-boson algebra and its two restricted integral forms.

Relations, per site i and for i != j::

    a_i a_i^+ - q^2 a_i^+ a_i = 1,   [a_i, a_j^+] = 0,
    K_i a_j^+ K_i^-1 = q^delta_ij a_j^+,   K_i a_j K_i^-1 = q^-delta_ij a_j.

Elements are kept in a PBW basis  a1+ a2+ a1 a2 K1 K2  where each slot is
either a divided power x^(r) = x^r / [r]! or an ordinary power, depending on
the form:

    res1:  a1+^(r1) a2+^(r2) a1^s1 a2^s2    K1^t1 K2^t2
    res2:  a1+^(r1) a2+^r2   a1^s1 a2^(s2)  K1^t1 K2^t2

Words are normal ordered by a small term rewriting system on adjacent
letters; the creator/annihilator swap on one site uses the closed reordering
formulas (``reorder_divided_creator`` and ``reorder_divided_annihilator``).
"""

from __future__ import annotations

from dataclasses import dataclass

from .exact_arith import ONE, ZERO, InexactDivision, LaurentPoly, q_binomial, q_factorial

RES1 = "res1"
RES2 = "res2"
FORMS = (RES1, RES2)

# slot order of the PBW basis
CRE1, CRE2, ANN1, ANN2, K1, K2 = range(6)
_SLOT_NAMES = ("a1+", "a2+", "a1", "a2", "K1", "K2")

# which slots hold divided powers in each form
_DIVIDED = {
    RES1: frozenset({CRE1, CRE2}),
    RES2: frozenset({CRE1, ANN2}),
}


class NotIntegral(ArithmeticError):
    """An element has no integral coordinates in the requested PBW basis."""

    def __init__(self, monomial, remainder, message=None):
        self.monomial = monomial
        self.remainder = remainder
        super().__init__(message or f"{monomial}: non-integral coefficient, remainder {remainder}")


def _check_form(form):
    if form not in FORMS:
        raise ValueError(f"form must be 'res1' or 'res2', got {form!r}")


@dataclass(frozen=True)
class Generator:
    """One letter of a boson word.

    kind is one of 'a', 'a_plus', 'a_divided', 'a_plus_divided', 'K', 'K_inv';
    ``power`` is the exponent (or divided-power order).
    """

    kind: str
    site: int
    power: int = 1

    def __post_init__(self):
        if self.kind not in ("a", "a_plus", "a_divided", "a_plus_divided", "K", "K_inv"):
            raise ValueError(f"unknown generator kind {self.kind!r}")
        if self.site not in (1, 2):
            raise ValueError(f"site must be 1 or 2, got {self.site}")
        if self.power < 1:
            raise ValueError(f"power must be >= 1, got {self.power}")

    def __str__(self):
        s = self.site
        r = self.power
        if self.kind == "a":
            return f"a{s}" if r == 1 else f"a{s}^{r}"
        if self.kind == "a_plus":
            return f"a{s}+" if r == 1 else f"a{s}+^{r}"
        if self.kind == "a_divided":
            return f"a{s}^({r})"
        if self.kind == "a_plus_divided":
            return f"a{s}+^({r})"
        if self.kind == "K":
            return f"K{s}" if r == 1 else f"K{s}^{r}"
        return f"K{s}^-{r}"


def a(site, power=1):
    return Generator("a", site, power)


def a_plus(site, power=1):
    return Generator("a_plus", site, power)


def a_div(site, power):
    return Generator("a_divided", site, power)


def a_plus_div(site, power):
    return Generator("a_plus_divided", site, power)


def K(site, power=1):
    return Generator("K", site, power)


def K_inv(site, power=1):
    return Generator("K_inv", site, power)


@dataclass(frozen=True, order=True)
class PBWMonomial:
    r1: int = 0
    r2: int = 0
    s1: int = 0
    s2: int = 0
    t1: int = 0
    t2: int = 0
    form: str = RES1

    def __post_init__(self):
        _check_form(self.form)
        if min(self.r1, self.r2, self.s1, self.s2) < 0:
            raise ValueError(f"negative boson exponent in {self!r}")

    @property
    def exponents(self):
        return (self.r1, self.r2, self.s1, self.s2, self.t1, self.t2)

    def letters(self):
        """The monomial as a word of (slot, power) letters."""
        return tuple((slot, e) for slot, e in enumerate(self.exponents) if e)

    def is_unit(self):
        return not any(self.exponents)

    def __str__(self):
        divided = _DIVIDED[self.form]
        parts = []
        for slot, e in enumerate(self.exponents):
            if not e:
                continue
            name = _SLOT_NAMES[slot]
            if slot in divided:
                parts.append(f"{name}^({e})")
            elif e == 1:
                parts.append(name)
            else:
                parts.append(f"{name}^{e}")
        return " ".join(parts) if parts else "1"


class BosonElement:
    """Finite Z[q, q^-1]-combination of PBW monomials of one form."""

    __slots__ = ("form", "_terms")

    def __init__(self, form, terms=None):
        _check_form(form)
        clean = {}
        for mono, c in (terms or {}).items():
            if mono.form != form:
                raise ValueError(f"monomial {mono} is not in form {form}")
            if isinstance(c, int):
                c = LaurentPoly(c)
            if c:
                clean[mono] = c
        self.form = form
        self._terms = clean

    @classmethod
    def one(cls, form):
        return cls(form, {PBWMonomial(form=form): ONE})

    @classmethod
    def monomial(cls, mono, coeff=ONE):
        return cls(mono.form, {mono: coeff})

    @property
    def terms(self):
        return dict(self._terms)

    def items(self):
        return sorted(self._terms.items(), key=lambda kv: kv[0])

    def coefficient(self, mono):
        return self._terms.get(mono, ZERO)

    def __bool__(self):
        return bool(self._terms)

    def __eq__(self, other):
        if not isinstance(other, BosonElement):
            return NotImplemented
        return self.form == other.form and self._terms == other._terms

    def __hash__(self):
        return hash((self.form, frozenset(self._terms.items())))

    def __add__(self, other):
        if self.form != other.form:
            raise ValueError("form mismatch")
        out = dict(self._terms)
        for m, c in other._terms.items():
            out[m] = out.get(m, ZERO) + c
        return BosonElement(self.form, out)

    def __neg__(self):
        return BosonElement(self.form, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        return BosonElement(self.form, {m: c * v for m, v in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, BosonElement):
            return multiply(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for m, c in self.items():
            if m.is_unit():
                parts.append(f"({c})")
            elif c == 1:
                parts.append(str(m))
            else:
                parts.append(f"({c}) {m}")
        return " + ".join(parts)

    def __repr__(self):
        return f"BosonElement[{self.form}]({self})"


# ---------------------------------------------------------------------------
# reordering formulas for one site
# ---------------------------------------------------------------------------

def _half_exponent(n, m, s):
    # q^{n(s+m)} q^{(s-m)(s+m+1)/2}; the product (s-m)(s+m+1) is always even
    return n * (s + m) + (s - m) * (s + m + 1) // 2


def reorder_divided_creator(n, m):
    """a^n a^+(m) as a list of (coeff, creator order, annihilator power).

    Creators are divided, annihilators ordinary.  Terms whose annihilator
    power would be negative carry a vanishing binomial and are dropped.
    """
    out = []
    for s in range(m + 1):
        coeff = q_binomial(n, m - s)
        ann = n - m + s
        if ann < 0:
            assert not coeff, f"nonvanishing coefficient with negative power (n={n}, m={m}, s={s})"
            continue
        if coeff:
            out.append((coeff.shift(_half_exponent(n, m, s)), s, ann))
    return out


def reorder_divided_annihilator(n, m):
    """a^(n) a^+m as (coeff, creator power, annihilator order) triples.

    Creators ordinary, annihilators divided; a divided power of negative
    order is the zero element.
    """
    out = []
    for s in range(m + 1):
        ann = n - m + s
        if ann < 0:
            continue
        coeff = q_binomial(m, s)
        if coeff:
            out.append((coeff.shift(_half_exponent(n, m, s)), s, ann))
    return out


# ---------------------------------------------------------------------------
# rewriting
# ---------------------------------------------------------------------------

def _site(slot):
    return 1 if slot in (CRE1, ANN1, K1) else 2


def _rewrite_pair(x, y, divided):
    """Rewrite the adjacent letters x y, or return None if already ordered.

    Returns a list of (coeff, replacement letters).
    """
    sx, ex = x
    sy, ey = y
    if sx < sy:
        return None
    if sx == sy:
        if sx in (K1, K2):
            t = ex + ey
            return [(ONE, ((sx, t),) if t else ())]
        coeff = q_binomial(ex + ey, ex) if sx in divided else ONE
        return [(coeff, ((sx, ex + ey),))]
    if sx in (K1, K2):
        # K_i^t past a creator/annihilator
        if _site(sx) != _site(sy):
            return [(ONE, (y, x))]
        sign = 1 if sy in (CRE1, CRE2) else -1
        return [(LaurentPoly.monomial(sign * ex * ey), (y, x))]
    if sx in (ANN1, ANN2) and sy in (CRE1, CRE2) and _site(sx) == _site(sy):
        cre, ann = sy, sx
        if cre in divided:
            expansion = reorder_divided_creator(ex, ey)
        else:
            expansion = reorder_divided_annihilator(ex, ey)
        out = []
        for c, r, s in expansion:
            word = []
            if r:
                word.append((cre, r))
            if s:
                word.append((ann, s))
            out.append((c, tuple(word)))
        return out
    # distinct sites / same-kind letters of different sites commute
    return [(ONE, (y, x))]


def _find_redex(word, divided, strategy):
    idxs = range(len(word) - 1)
    if strategy == "rightmost":
        idxs = reversed(idxs)
    for i in idxs:
        if word[i][0] >= word[i + 1][0]:
            return i
    return None


def _to_monomial(word, form):
    exps = [0] * 6
    for slot, e in word:
        exps[slot] = e
    return PBWMonomial(*exps, form=form)


def _on_vacuum(word):
    # trailing K's fix the vacuum; a trailing annihilator kills it
    while word and word[-1][0] in (K1, K2):
        word = word[:-1]
    if word and word[-1][0] in (ANN1, ANN2):
        return None
    return word


def normal_order_letters(word, form, strategy="leftmost", coeff=ONE, vacuum=False):
    """Normal order a word of (slot, power) letters; returns a BosonElement.

    With ``vacuum=True`` the word is understood as applied to the Fock
    vacuum (a_i|0> = 0, K_i|0> = |0>), and words that vanish there are
    discarded as soon as they appear.
    """
    _check_form(form)
    if strategy not in ("leftmost", "rightmost"):
        raise ValueError(f"unknown strategy {strategy!r}")
    divided = _DIVIDED[form]
    word = tuple(word)
    if vacuum:
        word = _on_vacuum(word)
        if word is None:
            return BosonElement(form)
    pending = {word: coeff}
    result = {}
    while pending:
        w, c = pending.popitem()
        if not c:
            continue
        i = _find_redex(w, divided, strategy)
        if i is None:
            mono = _to_monomial(w, form)
            result[mono] = result.get(mono, ZERO) + c
            continue
        for c2, repl in _rewrite_pair(w[i], w[i + 1], divided):
            nw = w[:i] + repl + w[i + 2:]
            if vacuum:
                nw = _on_vacuum(nw)
                if nw is None:
                    continue
            pending[nw] = pending.get(nw, ZERO) + c * c2
    return BosonElement(form, result)


def generator_letter(g, form):
    """Express one generator in the form's PBW coordinates: (coeff, letter)."""
    divided = _DIVIDED[form]
    if g.kind == "K":
        return ONE, (K1 if g.site == 1 else K2, g.power)
    if g.kind == "K_inv":
        return ONE, (K1 if g.site == 1 else K2, -g.power)
    creator = g.kind in ("a_plus", "a_plus_divided")
    slot = (CRE1 if g.site == 1 else CRE2) if creator else (ANN1 if g.site == 1 else ANN2)
    is_div = g.kind.endswith("divided")
    if is_div == (slot in divided) or g.power == 1:
        return ONE, (slot, g.power)
    if not is_div:
        # ordinary power in a divided slot: x^r = [r]! x^(r)
        return q_factorial(g.power), (slot, g.power)
    _, rem = ONE.divmod(q_factorial(g.power))
    raise NotIntegral(str(g), rem, f"{g} is not in the {form} form (1/[{g.power}]! is not a Laurent polynomial)")


def normal_order(word, form, strategy="leftmost"):
    """Expand a word of Generators in the PBW basis of ``form``."""
    coeff = ONE
    letters = []
    for g in word:
        c, letter = generator_letter(g, form)
        coeff = coeff * c
        letters.append(letter)
    return normal_order_letters(letters, form, strategy, coeff)


def multiply(x, y, strategy="leftmost"):
    if x.form != y.form:
        raise ValueError(f"cannot multiply {x.form} by {y.form} elements")
    out = BosonElement(x.form)
    acc = {}
    for mx, cx in x._terms.items():
        for my, cy in y._terms.items():
            prod = normal_order_letters(mx.letters() + my.letters(), x.form, strategy, cx * cy)
            for m, c in prod._terms.items():
                acc[m] = acc.get(m, ZERO) + c
    out = BosonElement(x.form, acc)
    return out


def convert_basis(x, target):
    """Rewrite x in the PBW basis of ``target``; raises NotIntegral if x is
    not in that restricted form.

    The forms differ only on site 2: res1 uses a2+^(r) and a2^s, res2 uses
    a2+^r and a2^(s).
    """
    _check_form(target)
    if x.form == target:
        return x
    out = {}
    for m, c in x._terms.items():
        if target == RES2:
            num, den = c * q_factorial(m.s2), q_factorial(m.r2)
        else:
            num, den = c * q_factorial(m.r2), q_factorial(m.s2)
        tm = PBWMonomial(*m.exponents, form=target)
        try:
            out[tm] = num.exact_div(den)
        except InexactDivision as exc:
            raise NotIntegral(str(m), exc.remainder) from None
    return BosonElement(target, out)

"""Acceptance battery: each check returns a CheckResult with the first
counterexample in ``detail`` when it fails.

Shared by tests/test_acceptance.py and ``qfock selftest``.
"""

from __future__ import annotations

import random
import time
from typing import Callable, NamedTuple

from . import qboson as qb
from .exact_arith import CyclotomicNumber, LaurentPoly, digits, q_binomial, specialize
from .fock_modules import F1, F2, FockLabel, FockVector, act, act_oracle, oracle_action, specialize_vector
from .oracles import brute_divided_annihilator, brute_divided_creator
from .rep_analysis import (
    computed_maximal_submodule,
    find_highest_weight_vectors,
    infinite_module,
    is_irreducible,
    quotient_lambda,
    submodule_lambda,
    weyl_maximal_submodule,
    weyl_module,
)
from .uq_algebra import K, K_INV, e, f, realize, verify_defining_relations


class CheckResult(NamedTuple):
    number: int
    name: str
    passed: bool
    detail: str
    seconds: float
    budget: float

    def line(self):
        status = "PASS" if self.passed else "FAIL"
        timing = f"{self.seconds:.2f}s / {self.budget:g}s"
        return f"[{status}] criterion {self.number}: {self.name} ({timing}) {self.detail}".rstrip()


def root_binomial_law():
    for p in (3, 5, 7, 9):
        for n in range(-50, 51):
            lhs = specialize(q_binomial(n, p), p)
            rhs = CyclotomicNumber.from_int(p, digits(n, p).n1)
            if lhs != rhs:
                return False, f"p={p}, n={n}: [n over p]_eps = {lhs}, n1 = {rhs}"
    return True, "404 cases"


def pascal_recurrence():
    for r in range(26):
        for k in range(r + 1):
            lhs = q_binomial(r, k)
            rhs = q_binomial(r - 1, k).shift(-k) + q_binomial(r - 1, k - 1).shift(r - k)
            if lhs != rhs:
                return False, f"r={r}, k={k}"
    return True, "351 cases"


def _expansion(terms):
    return {(s, t): c for c, s, t in terms}


def reordering_formulas():
    for n in range(6):
        for m in range(6):
            closed = _expansion(qb.reorder_divided_creator(n, m))
            brute = brute_divided_creator(n, m)
            if closed != brute:
                return False, f"a^{n} a+^({m}): closed {closed} vs brute {brute}"
            closed = _expansion(qb.reorder_divided_annihilator(n, m))
            brute = brute_divided_annihilator(n, m)
            if closed != brute:
                return False, f"a^({n}) a+^{m}: closed {closed} vs brute {brute}"
    return True, "72 expansions"


def defining_relations(bound=12):
    for which in (1, 2):
        fail = verify_defining_relations(which, bound)
        if fail:
            return False, f"realization {which} (closed form): {fail}"
        fail = verify_defining_relations(which, bound, oracle_action(which))
        if fail:
            return False, f"realization {which} (boson oracle): {fail}"
    return True, f"bound {bound}, both realizations, closed form and oracle"


def oracle_actions(primes=(3, 5)):
    count = 0
    for p in primes:
        gens = [e(r) for r in range(1, 2 * p + 2)] + [f(r) for r in range(1, 2 * p + 2)] + [K, K_INV]
        for which, space in ((1, F1), (2, F2)):
            for r1 in range(3 * p + 1):
                for r2 in range(3 * p + 1):
                    lab = FockLabel(space, r1, r2)
                    for g in gens:
                        oracle = act_oracle(g, lab, which)
                        closed = act(g, FockVector.basis(space, r1, r2), which)
                        if oracle != closed:
                            return False, f"p={p} {g} on {lab}: oracle {oracle} vs closed {closed}"
                        at_root = act(g, FockVector.basis(space, r1, r2, p), which)
                        if specialize_vector(oracle, p) != at_root:
                            return False, f"p={p} {g} on {lab} at eps"
                        count += 1
    return True, f"{count} generator/label pairs"


def weyl_structure(primes=(3, 5)):
    for p in primes:
        for m in range(1, 6 * p + 1):
            report = weyl_module(p, m)
            m0, m1 = digits(m, p)
            predicted = m < p or m0 == p - 1
            computed = is_irreducible(report)
            if computed != predicted:
                return False, f"p={p}, m={m}: closure says irreducible={computed}"
            if computed:
                continue
            sub = computed_maximal_submodule(report)
            if sub != weyl_maximal_submodule(p, m):
                return False, f"p={p}, m={m}: computed V' {sub} vs index set {weyl_maximal_submodule(p, m)}"
            if report.dim - len(sub) != (m0 + 1) * (m1 + 1):
                return False, f"p={p}, m={m}: quotient dim {report.dim - len(sub)}"
    return True, "p in {3, 5}, 1 <= m <= 6p"


def _lams(weights):
    return [w.lam for w in weights]


def infinite_structure(primes=(3, 5)):
    for p in primes:
        N = 6 * p
        for s in range(-2 * p, 2 * p + 1):
            report = infinite_module(p, s, N)
            hw = [w.lam for _, w in find_highest_weight_vectors(report)]
            if s % p == 0:
                if not is_irreducible(report) or hw != [-(abs(s) + 1)]:
                    return False, f"p={p}, s={s}: irreducible={report.irreducible}, hw={hw}"
                continue
            if is_irreducible(report):
                return False, f"p={p}, s={s}: reported irreducible"
            sub_hw = _lams(report.submodule_highest_weights)
            quo_hw = _lams(report.quotient_highest_weights)
            if s > 0:
                s0, s1 = digits(s, p)
                want_sub, want_quo = -(p - s0 + (s1 + 1) * p + 1), -(s + 1)
            else:
                a0, a1 = digits(-s, p)
                want_sub, want_quo = -(abs(s) + 1), -(p - a0 + (1 + a1) * p + 1)
            if sub_hw != [want_sub] or quo_hw != [want_quo]:
                return False, f"p={p}, s={s}: submodule hw {sub_hw} (want {want_sub}), quotient hw {quo_hw} (want {want_quo})"
            if (submodule_lambda(p, s), quotient_lambda(p, s)) != (want_sub, want_quo):
                return False, f"p={p}, s={s}: classification table disagrees"
    return True, "p in {3, 5}, |s| <= 2p, window 6p"


_KINDS_RES = {
    qb.RES1: ("a", "a_plus", "a_plus_divided", "K", "K_inv"),
    qb.RES2: ("a", "a_plus", "a_divided", "a_plus_divided", "K", "K_inv"),
}


def random_word(rng, form, max_len=6, max_power=3):
    """A random word whose letters all lie in ``form``."""
    word = []
    for _ in range(rng.randint(1, max_len)):
        while True:
            kind = rng.choice(("a", "a_plus", "a_divided", "a_plus_divided", "K", "K_inv"))
            site = rng.choice((1, 2))
            power = rng.randint(1, max_power)
            g = qb.Generator(kind, site, power)
            try:
                qb.generator_letter(g, form)
            except qb.NotIntegral:
                continue
            word.append(g)
            break
    return word


def confluence(seed=0, count=100):
    rng = random.Random(seed)
    for n in range(count):
        form = qb.FORMS[n % 2]
        word = random_word(rng, form)
        left = qb.normal_order(word, form, "leftmost")
        right = qb.normal_order(word, form, "rightmost")
        if left != right:
            return False, f"{' '.join(map(str, word))} [{form}]: {left} vs {right}"
    return True, f"{count} words, seed {seed}"


def _sign_flipped(g, which):
    x = realize(g, which)
    return -x if g.kind == "f" else x


def negative_control():
    found = []
    for which in (1, 2):
        fail = verify_defining_relations(which, 12, oracle_action(which, _sign_flipped))
        if fail is None:
            return False, f"sign-flipped realization {which} passed every relation"
        found.append(f"{fail.relation} at {fail.vector}")
    return True, "; ".join(found)


CRITERIA: list[tuple[int, str, Callable, float]] = [
    (1, "root-of-unity binomial law", root_binomial_law, 1.0),
    (2, "q-Pascal recurrence", pascal_recurrence, 1.0),
    (3, "reordering formulas vs brute force", reordering_formulas, 5.0),
    (4, "U_q(sl2) relations under both realizations", defining_relations, 30.0),
    (5, "closed-form vs boson-oracle actions", oracle_actions, 30.0),
    (6, "Weyl module irreducibility and V'", weyl_structure, 60.0),
    (7, "structure of V^s, V', W'", infinite_structure, 60.0),
    (8, "normal ordering confluence", confluence, 10.0),
    (9, "negative control: sign-flipped realization", negative_control, 1.0),
]


def run_criterion(number, seed=0):
    num, name, fn, budget = CRITERIA[number - 1]
    start = time.perf_counter()
    try:
        passed, detail = fn(seed=seed) if fn is confluence else fn()
    except Exception as exc:  # a crash is a failed criterion, reported as such
        passed, detail = False, f"{type(exc).__name__}: {exc}"
    elapsed = time.perf_counter() - start
    return CheckResult(num, name, passed, detail, elapsed, budget)


def run_all(seed=0):
    return [run_criterion(n, seed) for n, *_ in CRITERIA]

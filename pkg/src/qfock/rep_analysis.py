"""Weyl modules V_m inside F1 and the infinite-dimensional modules V^s
inside F2, at a primitive p-th root of unity.

Module structure is computed, not assumed: action matrices come from the
Fock actions, submodules given by closed index descriptions are checked
for closedness, irreducibility is decided by closure under divided powers,
and highest weight vectors are found as exact kernels of e and e^(p).
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field

from .exact_arith import CyclotomicNumber, check_p, digits, q_int, specialize
from .fock_modules import F1, F2, FockLabel, FockVector, act, weight_of
from .uq_algebra import K, Weight, e, f, weight_digits


class WindowTooSmall(ValueError):
    pass


class SubmoduleMismatch(AssertionError):
    """A closed-form submodule description failed the closedness check."""


# ---------------------------------------------------------------------------
# exact linear algebra over Q(eps); vectors are sparse {index: coeff} dicts
# ---------------------------------------------------------------------------

class SubspaceBasis:
    """Subspace of Q(eps)^n kept in reduced row echelon form.

    Pivots are the lowest nonzero index of each row and carry coefficient 1;
    no row has a nonzero entry in another row's pivot column.
    """

    def __init__(self, p):
        self.p = p
        self.rows = {}  # pivot -> row
        self.truncated = False

    @property
    def dim(self):
        return len(self.rows)

    def pivots(self):
        return sorted(self.rows)

    def reduce(self, v):
        v = dict(v)
        for piv in [j for j in v if j in self.rows]:
            c = v.get(piv)
            if not c:
                continue
            for k, x in self.rows[piv].items():
                y = v.get(k)
                y = -(c * x) if y is None else y - c * x
                if y:
                    v[k] = y
                else:
                    v.pop(k, None)
        return v

    def add(self, v):
        """Insert v; returns True iff the dimension grew."""
        r = self.reduce(v)
        if not r:
            return False
        piv = min(r)
        lead = r[piv]
        if not lead.is_one():
            inv = lead.inverse()
            r = {k: x * inv for k, x in r.items()}
        for other_piv, row in self.rows.items():
            c = row.get(piv)
            if c:
                for k, x in r.items():
                    y = row.get(k)
                    y = -(c * x) if y is None else y - c * x
                    if y:
                        row[k] = y
                    else:
                        row.pop(k, None)
        self.rows[piv] = r
        return True

    def contains(self, v):
        return not self.reduce(v)

    def support(self):
        """Indices appearing in any basis row."""
        out = set()
        for row in self.rows.values():
            out.update(row)
        return sorted(out)

    def vectors(self):
        return [dict(sorted(self.rows[k].items())) for k in sorted(self.rows)]


def nullspace(columns, p):
    """Kernel of the linear map sending unit vector j to ``columns[j]``.

    ``columns`` maps domain index -> sparse image vector.  Returns a list of
    sparse kernel vectors over the domain indices.
    """
    domain = sorted(columns)
    # rows of the matrix: one per output coordinate
    rows = defaultdict(dict)
    for j in domain:
        for i, c in columns[j].items():
            rows[i][j] = c
    ech = SubspaceBasis(p)
    for row in rows.values():
        ech.add(row)
    pivots = set(ech.rows)
    free = [j for j in domain if j not in pivots]
    kernel = []
    for fj in free:
        vec = {fj: CyclotomicNumber.from_int(p, 1)}
        for piv, row in ech.rows.items():
            c = row.get(fj)
            if c:
                vec[piv] = -c
        kernel.append(vec)
    return kernel


def _apply(matrix, v):
    out = {}
    for j, c in v.items():
        col = matrix.get(j)
        if not col:
            continue
        for i, x in col.items():
            y = out.get(i)
            y = c * x if y is None else y + c * x
            if y:
                out[i] = y
            else:
                out.pop(i, None)
    return out


# ---------------------------------------------------------------------------
# reports
# ---------------------------------------------------------------------------

@dataclass
class ModuleReport:
    """Structured description of a module realized on a Fock space.

    ``actions`` maps generator name -> {column j: {row i: coeff}}, i.e. the
    generator sends basis vector j to sum_i coeff * basis vector i.
    """

    kind: str
    p: int
    params: dict
    basis: list
    actions: dict
    weights: list
    generator_order: int
    maximal_submodule: list = field(default_factory=list)
    highest_weight_vectors: list = field(default_factory=list)
    submodule_highest_weights: list = field(default_factory=list)
    quotient_highest_weights: list = field(default_factory=list)
    classification: list = field(default_factory=list)
    boundary_flags: dict = field(default_factory=dict)
    irreducible: bool | None = None

    @property
    def dim(self):
        return len(self.basis)

    @property
    def name(self):
        if self.kind == "weyl":
            return f"weyl(p={self.p}, m={self.params['m']})"
        return f"infinite(p={self.p}, s={self.params['s']})"

    def index(self, label):
        return self._index[label]

    def matrix(self, name):
        return self.actions[name]

    def generator_names(self):
        return list(self.actions)

    def to_vector(self, v):
        """Sparse index form of a FockVector living in this module."""
        if v.p != self.p:
            raise ValueError("vector must be specialized at the module's p")
        out = {}
        for lab, c in v.terms.items():
            if lab not in self._index:
                raise ValueError(f"{lab} is not a basis vector of {self.name}")
            out[self._index[lab]] = c
        return out

    def to_fock(self, vec):
        space = self.basis[0].space
        return FockVector(space, {self.basis[i]: c for i, c in vec.items()}, self.p)


def _gen_name(kind, r):
    return kind if r == 1 else f"{kind}^({r})"


def _build(kind, p, params, basis, which, R):
    index = {lab: i for i, lab in enumerate(basis)}
    space = basis[0].space
    actions = {}
    boundary = defaultdict(list)
    gens = [(_gen_name("e", r), e(r)) for r in range(1, R + 1)]
    gens += [(_gen_name("f", r), f(r)) for r in range(1, R + 1)]
    gens.append(("K", K))
    for name, g in gens:
        mat = {}
        for j, lab in enumerate(basis):
            img = act(g, FockVector.basis(space, lab.r1, lab.r2, p), which)
            col = {}
            for tlab, c in img.terms.items():
                if space == F2 and tlab.r2 - tlab.r1 != lab.r2 - lab.r1:
                    raise AssertionError(f"{name} moved {lab} to {tlab}: r2 - r1 not preserved")
                i = index.get(tlab)
                if i is None:
                    if kind == "weyl" or g.kind != "f":
                        raise AssertionError(f"{name} maps {lab} outside {kind} module to {tlab}")
                    boundary[name].append(j)
                    continue
                col[i] = c
            if col:
                mat[j] = col
        actions[name] = mat
    weights = [weight_of(lab, which, p) for lab in basis]
    report = ModuleReport(
        kind=kind,
        p=p,
        params=params,
        basis=basis,
        actions=actions,
        weights=weights,
        generator_order=R,
        boundary_flags=dict(boundary),
    )
    report._index = index
    return report


def _is_closed(report, indices):
    inside = set(indices)
    for mat in report.actions.values():
        for j in indices:
            for i in mat.get(j, {}):
                if i not in inside:
                    return False
    return True


# ---------------------------------------------------------------------------
# highest weight vectors
# ---------------------------------------------------------------------------

def _primitive_vectors(report, domain, ignore=()):
    """Weight vectors in span(domain) killed by e and e^(p), working modulo
    the span of the ``ignore`` indices (for quotients)."""
    p = report.p
    ignore = set(ignore)
    by_weight = defaultdict(list)
    for j in domain:
        by_weight[report.weights[j].lam].append(j)
    e1 = report.actions["e"]
    ep = report.actions[_gen_name("e", p)]
    out = []
    for lam in sorted(by_weight, reverse=True):
        cols = {}
        for j in by_weight[lam]:
            img = {}
            for tag, mat in (("e", e1), ("ep", ep)):
                for i, c in mat.get(j, {}).items():
                    if i not in ignore:
                        img[(tag, i)] = c
            cols[j] = img
        for vec in _kernel_keyed(cols, p):
            out.append((dict(sorted(vec.items())), weight_digits(lam, p)))
    return out


def _kernel_keyed(cols, p):
    # nullspace with arbitrary hashable output keys
    keys = sorted({k for img in cols.values() for k in img})
    pos = {k: n for n, k in enumerate(keys)}
    return nullspace({j: {pos[k]: c for k, c in img.items()} for j, img in cols.items()}, p)


def find_highest_weight_vectors(report):
    """All weight vectors v with e v = e^(p) v = 0, one basis per weight."""
    return _primitive_vectors(report, range(report.dim))


# ---------------------------------------------------------------------------
# closure and irreducibility
# ---------------------------------------------------------------------------

def closure(seeds, report):
    """Least subspace containing the seeds and stable under every generator
    matrix of the report.

    Seeds are FockVectors (at the report's p) or sparse index dicts.  For
    infinite modules, images leaving the window are cut off and the result
    is flagged ``truncated``.
    """
    basis = SubspaceBasis(report.p)
    flagged = {name: set(js) for name, js in report.boundary_flags.items()}
    queue = [report.to_vector(s) if isinstance(s, FockVector) else dict(s) for s in seeds]
    full = report.dim
    while queue and basis.dim < full:
        v = queue.pop()
        if not basis.add(v):
            continue
        for name, mat in report.actions.items():
            if flagged.get(name) and flagged[name].intersection(v):
                basis.truncated = True
            img = _apply(mat, v)
            if img:
                queue.append(img)
    return basis


def _unit(report, j):
    return {j: CyclotomicNumber.from_int(report.p, 1)}


def computed_maximal_submodule(report):
    """Sum of all proper submodules generated by single basis vectors.

    Submodules here are spanned by basis vectors (one-dimensional weight
    spaces), so this is the sum of all proper submodules.
    """
    union = set()
    for j in range(report.dim):
        span = closure([_unit(report, j)], report)
        if span.dim < report.dim:
            union.update(span.support())
    return sorted(union)


def _reachable(report, start, prefix):
    seen = {start}
    stack = [start]
    mats = [m for name, m in report.actions.items() if name == prefix or name.startswith(prefix + "^")]
    while stack:
        j = stack.pop()
        for mat in mats:
            for i in mat.get(j, {}):
                if i not in seen:
                    seen.add(i)
                    stack.append(i)
    return seen


def is_irreducible(report):
    """Irreducibility decided by computation.

    Finite modules: every basis vector generates the whole space under the
    divided powers (weight spaces are one-dimensional here, so submodules are
    spanned by basis vectors).  Infinite modules: every window vector reaches
    the top vector through e^(r) alone, and the top vector reaches every
    window vector through f^(r) alone.
    """
    if report.kind == "weyl":
        for j in range(report.dim):
            if closure([_unit(report, j)], report).dim != report.dim:
                return False
        return True
    N = report.params["window"]
    if N < 4 * report.p:
        raise WindowTooSmall(f"window {N} < 4p = {4 * report.p}")
    top = 0
    for j in range(report.dim):
        if top not in _reachable(report, j, "e"):
            return False
    return len(_reachable(report, top, "f")) == report.dim


# ---------------------------------------------------------------------------
# Weyl modules
# ---------------------------------------------------------------------------

def weyl_maximal_submodule(p, m):
    """Indices r with m0 < r0 < p and r1 < m1: the unique proper submodule of
    V_m (empty exactly when V_m is irreducible)."""
    check_p(p)
    m0, m1 = digits(m, p)
    out = []
    for r in range(m + 1):
        r0, r1 = digits(r, p)
        if m0 < r0 < p and r1 < m1:
            out.append(r)
    return out


def weyl_irreducible_predicate(p, m):
    return m < p or digits(m, p).n0 == p - 1


def _weyl_closed_forms(p, m):
    """e, f, e^(p), f^(p) on v_r from the explicit Weyl-module formulas."""
    one = lambda n: CyclotomicNumber.from_int(p, n)  # noqa: E731
    forms = {"e": {}, "f": {}, f"e^({p})": {}, f"f^({p})": {}}
    for r in range(m + 1):
        if r >= 1:
            c = specialize(q_int(m - r + 1), p)
            if c:
                forms["e"][r] = {r - 1: c}
        if r + 1 <= m:
            c = specialize(q_int(r + 1), p)
            if c:
                forms["f"][r] = {r + 1: c}
        if r - p >= 0:
            c = digits(m - r, p).n1 + 1
            if c:
                forms[f"e^({p})"][r] = {r - p: one(c)}
        if r + p <= m:
            c = digits(r, p).n1 + 1
            if c:
                forms[f"f^({p})"][r] = {r + p: one(c)}
    return forms


def weyl_module(p, m):
    """The Weyl module V_m = span{v_r = f(m - r, r)} of highest weight m."""
    check_p(p)
    if m < 0:
        raise ValueError(f"m must be >= 0, got {m}")
    basis = [FockLabel(F1, m - r, r) for r in range(m + 1)]
    report = _build("weyl", p, {"m": m}, basis, 1, max(p, m))
    for name, mat in _weyl_closed_forms(p, m).items():
        if report.actions[name] != mat:
            raise AssertionError(f"{name} on V_{m}: Fock action disagrees with the closed form")
    sub = weyl_maximal_submodule(p, m)
    if not _is_closed(report, sub):
        raise SubmoduleMismatch(f"V' of V_{m} (p={p}) is not closed")
    report.maximal_submodule = sub
    report.highest_weight_vectors = find_highest_weight_vectors(report)
    if sub:
        report.submodule_highest_weights = [w for _, w in _primitive_vectors(report, sub)]
        rest = [j for j in range(report.dim) if j not in set(sub)]
        report.quotient_highest_weights = [w for _, w in _primitive_vectors(report, rest, ignore=sub)]
        report.classification = [
            {"object": "head", "lambda": m},
        ]
    else:
        report.classification = [{"object": "whole", "lambda": m}]
    report.irreducible = not sub
    return report


# ---------------------------------------------------------------------------
# infinite-dimensional modules V^s
# ---------------------------------------------------------------------------

def _infinite_submodule(p, s, N):
    if s == 0 or s % p == 0:
        return []
    if s > 0:
        s0 = digits(s, p).n0
        return [m for m in range(N + 1) if digits(m, p).n0 >= p - s0]
    a0 = digits(-s, p).n0
    return [m for m in range(N + 1) if digits(m, p).n0 < p - a0]


def submodule_lambda(p, s):
    """Highest weight of V' (s > 0) or W' (s < 0) for s not divisible by p."""
    if s > 0:
        s0, s1 = digits(s, p)
        return -(p - s0 + (s1 + 1) * p + 1)
    return -(abs(s) + 1)


def quotient_lambda(p, s):
    if s > 0:
        return -(s + 1)
    a0, a1 = digits(-s, p)
    return -(p - a0 + (1 + a1) * p + 1)


def infinite_module(p, s, window=None):
    """V^s = span{g(m, m + s)} (s >= 0) or W^s = span{g(m + |s|, m)} (s < 0),
    truncated to 0 <= m <= window."""
    check_p(p)
    N = 6 * p if window is None else window
    if N < 4 * p:
        raise WindowTooSmall(f"window {N} < 4p = {4 * p}")
    if s >= 0:
        basis = [FockLabel(F2, m, m + s) for m in range(N + 1)]
    else:
        basis = [FockLabel(F2, m - s, m) for m in range(N + 1)]
    report = _build("infinite", p, {"s": s, "window": N}, basis, 2, max(p, N))
    sub = _infinite_submodule(p, s, N)
    if not _is_closed(report, sub):
        raise SubmoduleMismatch(f"submodule of V^{s} (p={p}) is not closed")
    report.maximal_submodule = sub
    report.highest_weight_vectors = find_highest_weight_vectors(report)
    if sub:
        report.submodule_highest_weights = [w for _, w in _primitive_vectors(report, sub)]
        rest = [j for j in range(report.dim) if j not in set(sub)]
        report.quotient_highest_weights = [w for _, w in _primitive_vectors(report, rest, ignore=sub)]
        report.classification = [
            {"object": "submodule", "lambda": submodule_lambda(p, s)},
            {"object": "quotient", "lambda": quotient_lambda(p, s)},
        ]
    else:
        report.classification = [{"object": "whole", "lambda": -(abs(s) + 1)}]
    report.irreducible = is_irreducible(report)
    return report


# ---------------------------------------------------------------------------
# classification of V(lambda)
# ---------------------------------------------------------------------------

def classify(p, lam):
    """Where the irreducible module of highest weight ``lam`` is realized.

    Returns a list of recipes {"module", "object", "source"}; the first is
    the primary construction, the rest are alternates.
    """
    check_p(p)
    if lam >= 0:
        obj = "whole" if weyl_irreducible_predicate(p, lam) else "head"
        return [{"module": f"weyl(p={p}, m={lam})", "object": obj, "source": "Weyl module quotient"}]
    k = -lam - 1
    k0, k1 = digits(k, p)
    if k0 == 0:
        out = [{"module": f"infinite(p={p}, s={k})", "object": "whole", "source": "V^{rp}"}]
        if k:
            out.append({"module": f"infinite(p={p}, s={-k})", "object": "whole", "source": "V^{-rp}"})
        return out
    out = [
        {"module": f"infinite(p={p}, s={k})", "object": "quotient", "source": "V^s / V'"},
        {"module": f"infinite(p={p}, s={-k})", "object": "submodule", "source": "W'"},
    ]
    if k1 >= 1:
        s = p * k1 - k0
        out.append({"module": f"infinite(p={p}, s={s})", "object": "submodule", "source": "V'"})
        out.append({"module": f"infinite(p={p}, s={-s})", "object": "quotient", "source": "W^s / W'"})
    return out


def parse_module_name(name):
    """Inverse of ModuleReport.name: ('weyl', p, m) or ('infinite', p, s)."""
    head, args = name.split("(", 1)
    vals = dict(part.strip().split("=") for part in args.rstrip(")").split(","))
    if head == "weyl":
        return head, int(vals["p"]), int(vals["m"])
    return head, int(vals["p"]), int(vals["s"])


def build_from_name(name, window=None):
    head, p, x = parse_module_name(name)
    return weyl_module(p, x) if head == "weyl" else infinite_module(p, x, window)


def weight_eigenvalues(report, j):
    """(K eigenvalue, [K;0;p] eigenvalue) of basis vector j, read off the
    Fock action."""
    from .uq_algebra import kzero

    lab = report.basis[j]
    v = FockVector.basis(lab.space, lab.r1, lab.r2, report.p)
    which = 1 if lab.space == F1 else 2
    kv = act(K, v, which).coefficient(lab.r1, lab.r2)
    zv = act(kzero(report.p), v, which).coefficient(lab.r1, lab.r2)
    return kv, zv


__all__ = [
    "ModuleReport",
    "SubspaceBasis",
    "SubmoduleMismatch",
    "Weight",
    "WindowTooSmall",
    "classify",
    "closure",
    "computed_maximal_submodule",
    "find_highest_weight_vectors",
    "infinite_module",
    "is_irreducible",
    "nullspace",
    "weyl_maximal_submodule",
    "weyl_module",
]

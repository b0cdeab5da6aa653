import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from qfock.exact_arith import CyclotomicNumber, digits
from qfock.fock_modules import F2, FockLabel, FockVector
from qfock.rep_analysis import (
    SubspaceBasis,
    WindowTooSmall,
    build_from_name,
    classify,
    closure,
    computed_maximal_submodule,
    find_highest_weight_vectors,
    infinite_module,
    is_irreducible,
    nullspace,
    parse_module_name,
    quotient_lambda,
    submodule_lambda,
    weight_eigenvalues,
    weyl_irreducible_predicate,
    weyl_maximal_submodule,
    weyl_module,
)


def one(p):
    return CyclotomicNumber.from_int(p, 1)


def unit(p, j):
    return {j: one(p)}


def test_subspace_basis_rref():
    p = 5
    s = SubspaceBasis(p)
    eps = CyclotomicNumber.eps_power(p, 1)
    assert s.add({0: eps, 2: one(p)})
    assert s.add({1: one(p), 2: eps})
    assert not s.add({0: eps * eps, 1: eps, 2: eps + eps * eps})
    assert s.dim == 2
    assert s.pivots() == [0, 1]
    for row in s.vectors():
        assert row[min(row)].is_one()
    assert s.contains({0: eps, 2: one(p)})
    assert not s.contains({2: one(p)})


def test_nullspace():
    p = 3
    cols = {0: {0: one(p)}, 1: {0: one(p)}, 2: {1: one(p)}}
    (k,) = nullspace(cols, p)
    assert set(k) == {0, 1}
    assert k[0] + k[1] == CyclotomicNumber.from_int(p, 0)


@given(st.integers(0, 10 ** 6), st.sampled_from([3, 5]))
def test_nullspace_random(seed, p):
    rng = random.Random(seed)
    cols = {}
    for j in range(5):
        cols[j] = {i: CyclotomicNumber(p, [rng.randint(-2, 2) for _ in range(p)]) for i in range(3) if rng.random() < 0.6}
        cols[j] = {i: c for i, c in cols[j].items() if c}
    kernel = nullspace(cols, p)
    image = SubspaceBasis(p)
    for j in cols:
        image.add(cols[j])
    assert len(kernel) == 5 - image.dim
    for vec in kernel:
        total = {}
        for j, c in vec.items():
            for i, x in cols[j].items():
                total[i] = total.get(i, CyclotomicNumber.from_int(p, 0)) + c * x
        assert not any(total.values())


def test_weyl_small():
    r = weyl_module(5, 3)
    assert r.dim == 4
    assert [w.lam for w in r.weights] == [3, 1, -1, -3]
    assert r.irreducible
    assert is_irreducible(r)
    assert r.maximal_submodule == []
    assert r.name == "weyl(p=5, m=3)"


def test_weyl_divided_power_entries():
    r = weyl_module(3, 10)
    assert r.matrix("f^(3)")[1] == {4: one(3)}
    r = weyl_module(5, 12)
    assert r.matrix("e^(5)")[5] == {0: CyclotomicNumber.from_int(5, 2)}


def test_weyl_maximal_submodule_examples():
    assert weyl_maximal_submodule(5, 12) == [3, 4, 8, 9]
    assert weyl_maximal_submodule(5, 3) == []
    assert weyl_maximal_submodule(3, 5) == []


def test_is_irreducible_examples():
    assert not is_irreducible(weyl_module(5, 12))
    assert is_irreducible(weyl_module(3, 2))
    assert is_irreducible(infinite_module(3, 3, 12))


def test_closure_examples():
    r = weyl_module(5, 12)
    assert closure([unit(5, j) for j in range(r.dim)], r).dim == r.dim
    span = closure([unit(5, 3)], r)
    assert span.dim == 4
    assert span.support() == [3, 4, 8, 9]
    inf = infinite_module(3, 3, 12)
    span = closure([FockVector.basis(F2, 0, 3, 3)], inf)
    assert span.dim == inf.dim
    assert span.truncated


def test_window_too_small():
    with pytest.raises(WindowTooSmall):
        infinite_module(3, 7, 11)
    r = infinite_module(3, 7, 12)
    r.params["window"] = 6
    with pytest.raises(WindowTooSmall):
        is_irreducible(r)


def test_infinite_s7():
    r = infinite_module(3, 7, 12)
    assert r.maximal_submodule == [2, 5, 8, 11]
    hw = [(r.basis[min(v)], w.lam) for v, w in r.highest_weight_vectors]
    assert hw == [(FockLabel(F2, 0, 7), -8), (FockLabel(F2, 2, 9), -12)]
    assert [w.lam for w in r.submodule_highest_weights] == [-12]
    assert [w.lam for w in r.quotient_highest_weights] == [-8]


def test_infinite_negative_s7():
    r = infinite_module(3, -7, 12)
    assert r.basis[0] == FockLabel(F2, 7, 0)
    assert [w.lam for w in r.submodule_highest_weights] == [-8]
    assert [w.lam for w in r.quotient_highest_weights] == [-12]
    assert (submodule_lambda(3, -7), quotient_lambda(3, -7)) == (-8, -12)


def test_highest_weight_vector_examples():
    for m in (1, 2, 5, 8):
        r = weyl_module(3, m)
        hw = find_highest_weight_vectors(r)
        assert [(list(v), w.lam) for v, w in hw] == [([0], m)]
    hw = find_highest_weight_vectors(infinite_module(3, 3, 12))
    assert [(list(v), w.lam) for v, w in hw] == [([0], -4)]
    hw = find_highest_weight_vectors(weyl_module(5, 12))
    assert [list(v) for v, _ in hw] == [[0], [3]]


def test_highest_weight_vectors_are_killed():
    for r in (weyl_module(5, 12), infinite_module(3, 7), infinite_module(5, -8)):
        for vec, _ in r.highest_weight_vectors:
            for name in ("e", f"e^({r.p})"):
                mat = r.matrix(name)
                img = {}
                for j, c in vec.items():
                    for i, x in mat.get(j, {}).items():
                        img[i] = img.get(i, CyclotomicNumber.from_int(r.p, 0)) + c * x
                assert not any(img.values())


def test_classify_examples():
    assert classify(3, 4) == [{"module": "weyl(p=3, m=4)", "object": "head", "source": "Weyl module quotient"}]
    rec = classify(3, -4)
    assert rec[0]["module"] == "infinite(p=3, s=3)" and rec[0]["object"] == "whole"
    rec = classify(3, -8)
    assert rec[0] == {"module": "infinite(p=3, s=7)", "object": "quotient", "source": "V^s / V'"}
    assert {"module": "infinite(p=3, s=-7)", "object": "submodule", "source": "W'"} in rec
    assert classify(5, -1)[0]["module"] == "infinite(p=5, s=0)"


def _realized_weights(report, obj):
    if obj == "whole":
        assert report.irreducible
        return [report.highest_weight_vectors[0][1].lam]
    if obj == "head":
        return [report.weights[0].lam]
    if obj == "submodule":
        return [w.lam for w in report.submodule_highest_weights]
    return [w.lam for w in report.quotient_highest_weights]


@pytest.mark.parametrize("p", [3, 5])
def test_every_recipe_realizes_its_weight(p):
    for lam in range(-4 * p, 4 * p):
        for recipe in classify(p, lam):
            report = build_from_name(recipe["module"])
            assert _realized_weights(report, recipe["object"]) == [lam], (lam, recipe)


def test_module_names_round_trip():
    assert parse_module_name("weyl(p=5, m=12)") == ("weyl", 5, 12)
    assert parse_module_name("infinite(p=3, s=-7)") == ("infinite", 3, -7)
    assert build_from_name("infinite(p=3, s=-7)", 12).name == "infinite(p=3, s=-7)"


@pytest.mark.parametrize("p", [3, 5])
def test_unique_maximal_submodule(p):
    for m in range(1, 6 * p + 1):
        r = weyl_module(p, m)
        sub = set(weyl_maximal_submodule(p, m))
        assert len(sub) < r.dim
        for j in range(r.dim):
            span = closure([unit(p, j)], r)
            assert span.dim == r.dim or set(span.support()) <= sub
        m0, m1 = digits(m, p)
        assert r.dim - len(sub) == (m0 + 1) * (m1 + 1)
        assert computed_maximal_submodule(r) == sorted(sub)
        assert r.irreducible == weyl_irreducible_predicate(p, m)


@pytest.mark.parametrize("p", [3, 5])
def test_windowed_uniqueness_for_positive_s(p):
    for s in range(1, 2 * p + 1):
        if s % p == 0:
            continue
        r = infinite_module(p, s)
        sub = set(r.maximal_submodule)
        for j in range(r.dim):
            span = closure([unit(p, j)], r)
            if j in sub:
                assert set(span.support()) <= sub
            else:
                assert span.dim == r.dim


def test_weight_consistency():
    for r in (weyl_module(5, 12), infinite_module(3, 7), infinite_module(3, -7), infinite_module(5, 10)):
        for vec, w in r.highest_weight_vectors:
            kv, zv = weight_eigenvalues(r, min(vec))
            assert kv == CyclotomicNumber.eps_power(r.p, w.digits.n0)
            assert zv == CyclotomicNumber.from_int(r.p, w.digits.n1)
        # quotient tops need only be primitive modulo the submodule
        lams = {c["lambda"] for c in r.classification if c["object"] != "quotient"}
        assert lams <= {w.lam for _, w in r.highest_weight_vectors}


def test_actions_are_weight_graded():
    for r in (weyl_module(3, 10), infinite_module(3, 4)):
        for name, mat in r.actions.items():
            shift = 0 if name == "K" else int(name.split("(")[1][:-1]) if "(" in name else 1
            sign = 2 if name.startswith("e") else -2 if name.startswith("f") else 0
            for j, col in mat.items():
                for i in col:
                    assert r.weights[i].lam - r.weights[j].lam == sign * shift


def test_boundary_flags_only_for_f():
    r = infinite_module(3, 7, 12)
    assert r.boundary_flags
    assert all(name.startswith("f") for name in r.boundary_flags)
    assert weyl_module(3, 10).boundary_flags == {}

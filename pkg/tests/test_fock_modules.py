import pytest
from hypothesis import given
from hypothesis import strategies as st

from qfock.exact_arith import CyclotomicNumber, LaurentPoly, Q, digits, q_binomial, q_int, specialize
from qfock.fock_modules import (
    F1,
    F2,
    FockLabel,
    FockVector,
    act,
    act_oracle,
    act_word,
    specialize_vector,
    weight_of,
)
from qfock.oracles import binomial_product_at_root
from qfock.uq_algebra import K, K_INV, Digits, e, f, kzero

labels = st.tuples(st.integers(0, 8), st.integers(0, 8))
gens = st.one_of(
    st.integers(1, 7).map(e), st.integers(1, 7).map(f), st.sampled_from([K, K_INV])
)


def basis(space, r1, r2, p=None):
    return FockVector.basis(space, r1, r2, p)


def test_vector_validation():
    with pytest.raises(ValueError):
        FockVector("F3")
    with pytest.raises(ValueError):
        FockVector(F1, {(-1, 0): 1})
    with pytest.raises(ValueError):
        FockVector(F1, {FockLabel(F2, 0, 0): 1})
    with pytest.raises(TypeError):
        FockVector(F1, {(0, 0): 1.5})
    with pytest.raises(ValueError):
        basis(F1, 0, 0) + basis(F2, 0, 0)


def test_rendering_is_ascending():
    v = FockVector(F2, {(1, 2): 1, (0, 3): Q + 1})
    assert str(v) == "(q + 1) · g(0,3) + (1) · g(1,2)"
    assert str(FockVector(F1)) == "0"


def test_e_on_f11():
    v = act(e(), basis(F1, 1, 1), 1)
    assert v == FockVector(F1, {(2, 0): Q + Q ** -1})
    assert act_oracle(e(), FockLabel(F1, 1, 1), 1) == v


def test_f_divided_p_on_weyl_vector():
    # v_1 of V_10 is f(9, 1); f^(3) sends it to v_4 = f(6, 4) with coefficient 1
    v = act(f(3), basis(F1, 9, 1, 3), 1)
    assert v == basis(F1, 6, 4, 3)


def test_e_on_g_with_r2_zero():
    for r1 in range(5):
        assert not act(e(), basis(F2, r1, 0), 2)


def test_f_on_vacuum_type_2():
    assert act_oracle(f(), FockLabel(F2, 0, 0), 2) == FockVector(F2, {(1, 1): -1})


def test_k_on_g23():
    assert act_oracle(K, FockLabel(F2, 2, 3), 2) == FockVector(F2, {(2, 3): Q ** -6})
    assert act(K, basis(F2, 2, 3), 2) == FockVector(F2, {(2, 3): Q ** -6})


def test_realization_mismatch():
    with pytest.raises(ValueError):
        act(e(), basis(F1, 1, 1), 2)
    with pytest.raises(ValueError):
        act_oracle(e(), FockLabel(F2, 1, 1), 1)
    with pytest.raises(ValueError):
        weight_of(FockLabel(F1, 0, 0), 2)


def test_weight_of_examples():
    w = weight_of(FockLabel(F1, 3, 1), 1, 5)
    assert (w.lam, w.digits) == (2, Digits(2, 0))
    w = weight_of(FockLabel(F2, 0, 3), 2, 3)
    assert (w.lam, w.digits) == (-4, Digits(2, -2))
    w = weight_of(FockLabel(F2, 0, 0), 2, 5)
    assert (w.lam, w.digits) == (-1, Digits(4, -1))
    assert weight_of(FockLabel(F2, 2, 3)) == -6


def test_specialize_vector_examples():
    assert not specialize_vector(FockVector(F1, {(0, 0): q_int(3)}), 3)
    v = specialize_vector(FockVector(F1, {(1, 2): 1, (0, 0): Q ** 3}), 3)
    assert v == FockVector(F1, {(1, 2): 1, (0, 0): 1}, 3)
    w = specialize_vector(FockVector(F2, {(1, 1): q_binomial(4, 2)}), 3)
    assert w.coefficient(1, 1) == binomial_product_at_root(4, 2, 3)
    with pytest.raises(ValueError):
        specialize_vector(w, 3)


def test_kzero_acts_by_upper_digit():
    for p in (3, 5):
        for r1 in range(2 * p):
            for r2 in range(2 * p):
                for space, which in ((F1, 1), (F2, 2)):
                    lab = FockLabel(space, r1, r2)
                    v = act(kzero(p), basis(space, r1, r2, p), which)
                    lam = weight_of(lab)
                    assert v.coefficient(r1, r2) == CyclotomicNumber.from_int(p, digits(lam, p).n1)
                    generic = act(kzero(p), basis(space, r1, r2), which)
                    assert specialize(generic.coefficient(r1, r2), p) == v.coefficient(r1, r2)


def test_kzero_rejects_other_p():
    with pytest.raises(ValueError):
        act(kzero(5), basis(F1, 1, 1, 3), 1)


def test_act_word_applies_rightmost_first():
    v = basis(F1, 2, 2)
    assert act_word([e(), f()], v, 1) == act(e(), act(f(), v, 1), 1)


@given(gens, labels, st.sampled_from([1, 2]))
def test_oracle_agrees(g, lab, which):
    space = F1 if which == 1 else F2
    assert act_oracle(g, FockLabel(space, *lab), which) == act(g, basis(space, *lab), which)


@given(gens, labels, st.sampled_from([1, 2]))
def test_weight_additivity(g, lab, which):
    space = F1 if which == 1 else F2
    src = weight_of(FockLabel(space, *lab))
    shift = {"e": 2 * g.r, "f": -2 * g.r}.get(g.kind, 0)
    for tgt in act(g, basis(space, *lab), which).labels():
        assert weight_of(tgt) == src + shift


@given(gens, labels)
def test_direct_sum_invariance(g, lab):
    for tgt in act(g, basis(F2, *lab), 2).labels():
        assert tgt.r2 - tgt.r1 == lab[1] - lab[0]


@given(gens, labels, st.sampled_from([1, 2]))
def test_integral_coefficients(g, lab, which):
    space = F1 if which == 1 else F2
    for _, c in act(g, basis(space, *lab), which).items():
        assert isinstance(c, LaurentPoly)


@given(labels, st.sampled_from([3, 5, 9]), st.sampled_from([1, 2]))
def test_type_one(lab, p, which):
    space = F1 if which == 1 else F2
    v = basis(space, *lab, p)
    w = v
    for _ in range(p):
        w = act(K, w, which)
    assert w == v


@given(gens, labels, st.sampled_from([3, 5]), st.sampled_from([1, 2]))
def test_specialization_commutes_with_action(g, lab, p, which):
    space = F1 if which == 1 else F2
    generic = act(g, basis(space, *lab), which)
    assert specialize_vector(generic, p) == act(g, basis(space, *lab, p), which)


def test_out_of_range_labels_dropped():
    # e f(0,0) would land on f(1,-1): the label does not exist, so the image is 0
    assert not act(e(), basis(F1, 0, 0), 1)
    assert not act(f(2), basis(F1, 1, 4), 1)
    assert not act_oracle(e(), FockLabel(F1, 0, 0), 1)

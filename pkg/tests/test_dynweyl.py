import random
from fractions import Fraction

import pytest

from dynwg.dynweyl import (
    DynWeylError,
    OperatorBlock,
    classical_limit,
    denominators_are_local,
    dynamical_operator,
    rank1_coefficient,
    rho_shift,
    simple_reflection_block,
    word_operator_block,
)
from dynwg.ratfun import DegreeOneForm, RatFun, parse_ratfun
from dynwg.rep import build_irrep, sl2_strings
from dynwg.rootdata import LieType, Weight, act, all_reduced_words, longest_element

A1 = LieType.parse("A1")
A2 = LieType.parse("A2")
B2 = LieType.parse("B2")

X1 = DegreeOneForm.make([1], 0)
F = Fraction


def rf1(text):
    return parse_ratfun(text, 1)


# ---------------------------------------------------------------------------
# rank-1 coefficient


def test_rank1_coefficient_known_values():
    assert rank1_coefficient(2, 0, X1) == rf1("1")
    assert rank1_coefficient(2, 1, X1) == rf1("-(x1+2*h)/x1")
    assert rank1_coefficient(3, 1, X1) == rf1("-(x1+2*h)/(x1-h)")
    assert rank1_coefficient(4, 1, X1) == rf1("-(x1+2*h)/(x1-2*h)")


def test_rank1_coefficient_domain():
    with pytest.raises(DynWeylError):
        rank1_coefficient(2, 2, X1)
    with pytest.raises(DynWeylError):
        rank1_coefficient(1, -1, X1)


def test_rank1_coefficient_general_form():
    # direct product construction as an independent cross-check
    for m in range(9):
        for k in range(m // 2 + 1):
            expected = RatFun.const((-1) ** k, 1)
            for j in range(1, k + 1):
                expected = expected * RatFun.from_form(DegreeOneForm.make([1], j + 1))
                expected = expected / RatFun.from_form(DegreeOneForm.make([1], j - m + k))
            assert rank1_coefficient(m, k, X1) == expected


# ---------------------------------------------------------------------------
# simple reflection blocks


def test_a1_block_reproduces_scalar():
    # the string machinery on A1 must reproduce the closed form verbatim
    for lam in range(9):
        V = build_irrep(A1, Weight((lam,)))
        for mu in range(lam % 2, lam + 1, 2):
            blk = simple_reflection_block(V, 1, Weight((mu,)), X1)
            k = (lam - mu) // 2
            assert blk.matrix == [[rank1_coefficient(lam, k, X1)]]
            assert blk.target == Weight((-mu,))


def test_a2_single_string_block():
    V = build_irrep(A2, Weight((1, 1)))
    xi = DegreeOneForm.make([1, 0], 0)
    blk = simple_reflection_block(V, 1, Weight((1, 1)), xi)
    assert blk.target == Weight((-1, 2))
    assert blk.matrix == [[RatFun.one(2)]]


def test_a2_zero_weight_block_string_diagonal():
    # in the string-adapted basis the block is diag(c(2,1), c(0,0)) = diag(-(x1+2h)/x1, 1)
    V = build_irrep(A2, Weight((1, 1)))
    xi = DegreeOneForm.make([1, 0], 0)
    nu = Weight((0, 0))
    blk = simple_reflection_block(V, 1, nu, xi)
    dec = sl2_strings(V, 1, nu)
    from dynwg.rep import divided_f_power, weight_add
    from dynwg.rootdata import simple_root

    col = 0
    for comp in dec.components:
        c = rank1_coefficient(comp.m, comp.k, xi)
        w = nu
        for _ in range(comp.k):
            w = weight_add(w, simple_root(A2, 1))
        for u in comp.primitives:
            # A_s (f^(k) u) must equal c * f^(m-k) u
            invec = [dec.change_of_basis[r][col] for r in range(len(dec.change_of_basis))]
            out = divided_f_power(V, 1, w, comp.m - comp.k, u)
            for r, row in enumerate(blk.matrix):
                lhs = RatFun.zero(2)
                for cidx, e in enumerate(row):
                    lhs = lhs + e.scale(invec[cidx])
                assert lhs == c.scale(out[r])
            col += 1


def test_block_preconditions():
    V = build_irrep(A2, Weight((1, 1)))
    xi = DegreeOneForm.make([1, 0], 0)
    with pytest.raises(DynWeylError):
        simple_reflection_block(V, 1, Weight((-2, 1)), xi)


# ---------------------------------------------------------------------------
# word operators


def test_empty_word_is_identity():
    V = build_irrep(A2, Weight((1, 1)))
    blk = word_operator_block(V, (), Weight((0, 0)))
    assert blk.matrix == [
        [RatFun.one(2), RatFun.zero(2)],
        [RatFun.zero(2), RatFun.one(2)],
    ]


def test_minuscule_longest_word():
    V = build_irrep(A2, Weight((1, 0)))
    blk = word_operator_block(V, (1, 2, 1), Weight((1, 0)))
    assert blk.target == Weight((0, -1))
    assert blk.matrix == [[RatFun.one(2)]]


def test_single_letter_matches_simple_block():
    V = build_irrep(A2, Weight((1, 1)))
    xi = DegreeOneForm.make([1, 0], 0)
    a = word_operator_block(V, (1,), Weight((0, 0)))
    b = simple_reflection_block(V, 1, Weight((0, 0)), xi)
    assert a.equals(b)


def test_a1_v4_block():
    V = build_irrep(A1, Weight((4,)))
    blk = word_operator_block(V, (1,), Weight((2,)))
    assert blk.matrix == [[rf1("-(x1+2*h)/(x1-2*h)")]]


def test_reduced_word_independence():
    for t, hw in ((A2, Weight((1, 1))), (B2, Weight((0, 1)))):
        V = build_irrep(t, hw)
        w0 = longest_element(t)
        words = all_reduced_words(t, w0)
        for mu in [w for w in V.weights() if w.is_dominant()]:
            blocks = [word_operator_block(V, w, mu) for w in words]
            assert all(blocks[0].equals(b) for b in blocks[1:])


def test_block_shape_and_denominators():
    V = build_irrep(B2, Weight((1, 0)))
    for mu in [w for w in V.weights() if w.is_dominant()]:
        blk = word_operator_block(V, longest_element(B2), mu)
        assert blk.target == act(B2, blk.word, mu)
        assert denominators_are_local(blk)


def test_word_operator_errors():
    V = build_irrep(A2, Weight((1, 1)))
    with pytest.raises(Exception):
        word_operator_block(V, (1, 1), Weight((0, 0)))  # non-reduced
    with pytest.raises(DynWeylError):
        word_operator_block(V, (1,), Weight((2, -1)))  # non-dominant


def test_dynamical_operator_canonicalizes():
    V = build_irrep(A2, Weight((1, 1)))
    a = dynamical_operator(V, (2, 1, 2), Weight((0, 0)))
    b = word_operator_block(V, (1, 2, 1), Weight((0, 0)))
    assert a.equals(b)
    e = dynamical_operator(V, (1, 1), Weight((1, 1)))  # the identity element
    assert e.matrix == [[RatFun.one(2)]]


# ---------------------------------------------------------------------------
# shift and limit


def test_rho_shift_known_value():
    V = build_irrep(A1, Weight((2,)))
    blk = word_operator_block(V, (1,), Weight((0,)))
    shifted = rho_shift(blk)
    assert shifted.matrix == [[rf1("(x1-h)/(-x1-h)")]]


def test_rho_shift_involution():
    V = build_irrep(A2, Weight((1, 1)))
    blk = word_operator_block(V, (1, 2, 1), Weight((0, 0)))
    assert rho_shift(rho_shift(blk)).equals(blk)


def test_classical_limit_signs():
    rng = random.Random(4)
    for lam in range(1, 7):
        V = build_irrep(A1, Weight((lam,)))
        for mu in range(lam % 2, lam + 1, 2):
            blk = word_operator_block(V, (1,), Weight((mu,)))
            assert classical_limit(blk, rng) == [[F((-1) ** ((lam - mu) // 2))]]


def test_classical_limit_identity():
    V = build_irrep(A2, Weight((1, 1)))
    blk = word_operator_block(V, (), Weight((0, 0)))
    assert classical_limit(blk, random.Random(0)) == [[F(1), F(0)], [F(0), F(1)]]


def test_classical_limit_detects_x_dependence():
    V = build_irrep(A1, Weight((0,)))
    bad = OperatorBlock(
        V=V,
        word=(),
        source=Weight((0,)),
        target=Weight((0,)),
        matrix=[[RatFun.var(0, 1)]],
    )
    with pytest.raises(DynWeylError):
        classical_limit(bad, random.Random(0))


def test_json_and_text_rendering():
    V = build_irrep(A2, Weight((1, 1)))
    blk = word_operator_block(V, (1,), Weight((0, 0)))
    obj = blk.to_json()
    assert obj["algebra"] == "A2" and obj["word"] == [1]
    assert len(obj["matrix"]) == 2 and len(obj["basis_labels"]["source"]) == 2
    # the text rendering round-trips through the parser
    for row in blk.matrix:
        for e in row:
            assert parse_ratfun(e.format(), 2) == e
    assert "V_(0,0)" in blk.format()

import itertools
from fractions import Fraction

import pytest
from hypothesis import given

from kpakns.qshuffle import (
    AlgElement,
    OracleError,
    P,
    bullet,
    composition,
    compositions,
    compositions_up_to,
    format_element,
    hat_commutator,
    hat_times,
    kp_identity_lhs_rhs,
    parse_element,
    prec,
    qshuffle,
    qshuffle_power,
    qsym_oracle_product,
    stuffle,
    succ,
)

from conftest import compositions as comp_st

E = parse_element


def test_composition_validation():
    assert composition(1, 2) == (1, 2)
    with pytest.raises(ValueError):
        composition()
    with pytest.raises(ValueError):
        composition(0, 1)


def test_composition_counts():
    # 2^(n-1) compositions of n
    assert [len(list(compositions(n))) for n in range(1, 7)] == [1, 2, 4, 8, 16, 32]
    assert len(list(compositions_up_to(4))) == 15


def test_prec_examples():
    assert prec((1,), (1,)) == E("(1,1)")
    assert prec((2,), (1, 3)) == E("(2,1,3)")
    assert prec(2 * P(1), (1,)) == E("2*(1,1)")


def test_bullet_examples():
    assert bullet((1,), (1,)) == P(2)
    assert bullet((1, 1), (1,)) == E("(1,2)")
    assert bullet((2, 1), (1, 3)) == E("(2,2,3)")


def test_qshuffle_examples():
    assert qshuffle((1,), (1,)) == E("2*(1,1) + (2)")
    assert qshuffle((1,), (1, 1)) == E("3*(1,1,1) + (1,2) + (2,1)")
    assert qshuffle((2,), (3,)) == E("(2,3) + (3,2) + (5)")


def test_hat_times_definition():
    assert hat_times((1,), (1,)) == E("-(1,1,1) - (1,2)")
    a, b = (2, 1), (3,)
    assert hat_times(a, b) == -succ(prec(a, P(1)), b)


def test_qshuffle_powers():
    assert qshuffle_power(1) == P(1)
    assert qshuffle_power(2) == E("2*(1,1) + (2)")
    assert qshuffle_power(3) == E("6*(1,1,1) + 3*(1,2) + 3*(2,1) + (3)")
    with pytest.raises(ValueError):
        qshuffle_power(0)


def test_stuffle_is_cached_and_symmetric():
    assert dict(stuffle((1, 2), (3,))) == dict(stuffle((3,), (1, 2)))


def test_zero_is_absorbing():
    z = AlgElement()
    assert qshuffle(z, (1, 2)) == 0
    assert hat_times((1,), z) == 0


def test_kp_identity_sides():
    lhs, rhs = kp_identity_lhs_rhs()
    assert lhs.weights() == {4} and rhs.weights() == {4}
    assert qshuffle(P(3), P(1)).coeff((4,)) == 1
    assert set(qshuffle(P(3), P(1)).terms) == {(4,), (3, 1), (1, 3)}
    # Both sides coincide in the algebra itself.
    assert lhs - rhs == 0
    assert lhs == E("3*(4) + 6*(1,3) + 6*(1,1,2) - 6*(2,1,1)")


def test_hat_commutator():
    assert hat_commutator((2,), (1,)) == hat_times((2,), (1,)) - hat_times((1,), (2,))


@pytest.mark.parametrize(
    "a,b,expected",
    [((1,), (1,), "2*(1,1) + (2)"), ((2,), (1,), "(2,1) + (1,2) + (3)")],
)
def test_oracle_examples(a, b, expected):
    assert qsym_oracle_product(a, b, 4) == E(expected)


def test_oracle_needs_enough_variables():
    with pytest.raises(OracleError):
        qsym_oracle_product((1,), (1,), 1)


def test_oracle_agrees_up_to_weight_five():
    for wa in range(1, 5):
        for wb in range(1, 6 - wa):
            for a in compositions(wa):
                for b in compositions(wb):
                    assert qshuffle(a, b) == qsym_oracle_product(a, b, len(a) + len(b))


def test_oracle_stable_in_extra_variables():
    a, b = (1, 2), (2,)
    assert qsym_oracle_product(a, b, 3) == qsym_oracle_product(a, b, 5)


def test_mixed_associativity_exhaustive_weight_5():
    small = list(compositions_up_to(3))
    for a, b, c in itertools.product(small, repeat=3):
        if sum(a) + sum(b) + sum(c) > 5:
            continue
        assert bullet(prec(a, b), c) == prec(a, bullet(b, c))
        assert prec(bullet(a, b), c) == bullet(a, prec(b, c))


@pytest.mark.parametrize("text", ["0", "(1)", "(2) + 2*(1,1)", "-1/2*(3,1) - (1,1,2)"])
def test_element_text_round_trip(text):
    assert format_element(E(text)) == text


def test_element_parse_errors():
    with pytest.raises(ValueError):
        E("(1) (2)")
    with pytest.raises(ValueError):
        E("(0)")


def test_element_arithmetic():
    a = E("(1) + 2*(2)")
    assert a - a == 0
    assert Fraction(1, 2) * a == E("1/2*(1) + (2)")
    assert a.coeff((2,)) == 2


@given(comp_st(), comp_st())
def test_qshuffle_commutative(a, b):
    assert qshuffle(a, b) == qshuffle(b, a)


@given(comp_st(), comp_st())
def test_products_preserve_weight(a, b):
    w = sum(a) + sum(b)
    for f in (prec, bullet, qshuffle):
        assert f(a, b).weights() <= {w}
    assert hat_times(a, b).weights() == {w + 1}

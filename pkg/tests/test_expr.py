import pytest

from kpakns import qshuffle as qs
from kpakns.expr import (
    KP_IDENTITY_LHS,
    KP_IDENTITY_RHS,
    AmbiguityError,
    ExprSyntaxError,
    NotAnIdentityTerm,
    evaluate,
    kp_identity_nodes,
    parse,
    phi_image,
    potential_kp,
    to_text,
)
from kpakns.ncpoly import COMMUTATIVE
from kpakns.ncpoly import parse as nparse


def test_letters_and_powers():
    assert evaluate(parse("P")) == qs.P(1)
    assert evaluate(parse("P^3")) == qs.P(3)
    assert evaluate(parse("P @ P @ P")) == qs.P(3)


def test_products_match_library():
    a, b = qs.P(1), qs.P(2)
    assert evaluate(parse("P o P^2")) == qs.qshuffle(a, b)
    assert evaluate(parse("P . P^2")) == qs.prec(a, b)
    assert evaluate(parse("P x P^2")) == qs.hat_times(a, b)


def test_single_operator_chains_are_allowed():
    a = qs.P(1)
    assert evaluate(parse("P o P o P")) == qs.qshuffle(qs.qshuffle(a, a), a)
    assert evaluate(parse("P . P . P")) == qs.prec(qs.prec(a, a), a)
    assert evaluate(parse("P x P x P")) == qs.hat_times(qs.hat_times(a, a), a)


@pytest.mark.parametrize("text", ["P o P . P", "P o P x P", "P x P @ P", "P . P @ P"])
def test_ambiguous_chains_rejected(text):
    with pytest.raises(AmbiguityError):
        parse(text)


@pytest.mark.parametrize("text", ["P +", "Q", "P^", "(P o P", "P P"])
def test_syntax_errors(text):
    with pytest.raises(ExprSyntaxError):
        parse(text)


@pytest.mark.parametrize("text", [KP_IDENTITY_LHS, KP_IDENTITY_RHS, "P^2 o P^3", "-2*(P x P) + P"])
def test_text_round_trip(text):
    node = parse(text)
    assert parse(to_text(node)) == node


def test_identity_sides_agree_in_algebra():
    lhs, rhs = kp_identity_nodes()
    assert evaluate(lhs) == evaluate(rhs)
    assert evaluate(lhs) == qs.parse_element("3*(4) + 6*(1,3) + 6*(1,1,2) - 6*(2,1,1)")


def test_phi_image_rules():
    assert phi_image(parse("P")) == nparse("phi_x")
    assert phi_image(parse("P^2")) == nparse("phi_t2")
    assert phi_image(parse("P x P^2")) == nparse("phi_x*phi_t2")
    assert phi_image(parse("P^3 o P")) == nparse("phi_t3_x")
    assert phi_image(parse("P o P^3")) == nparse("phi_t3_x")
    assert phi_image(parse("P^2 o P^2")) == nparse("phi_t2_t2")


def test_phi_image_of_identity_is_potential_kp():
    lhs, rhs = kp_identity_nodes()
    assert phi_image(lhs) - phi_image(rhs) == potential_kp()


def test_phi_image_rejects_non_identity_terms():
    with pytest.raises(NotAnIdentityTerm):
        phi_image(parse("P . P"))
    with pytest.raises(NotAnIdentityTerm):
        phi_image(parse("(P x P) o (P x P)"))


def test_potential_kp_commutative_loses_commutator():
    full = potential_kp(COMMUTATIVE)
    expected = nparse("4*phi_t3_x - phi_xxxx - 12*phi_x*phi_xx - 3*phi_t2_t2", COMMUTATIVE)
    assert full == expected

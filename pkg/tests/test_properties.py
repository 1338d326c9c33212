"""Randomized checks of the algebraic laws and of both evaluation maps."""

from hypothesis import given, settings, strategies as st

from kpakns import qshuffle as qs
from kpakns.cases import assoc_checks
from kpakns.laurent import abstract_context, ell_akns, r_akns, verify_akns_hom
from kpakns.psido import LaxContext, verify_flow_property, verify_hom_property, with_retry

from conftest import compositions

words4 = compositions(max_weight=4)
elements = st.lists(st.tuples(words4, st.integers(-2, 2)), min_size=1, max_size=3).map(
    lambda ts: sum((c * qs.as_element(w) for w, c in ts), qs.AlgElement())
)

_KP = {}
_AKNS = {}


def _akns(depth):
    if depth not in _AKNS:
        _AKNS[depth] = abstract_context(depth, 3)
    return _AKNS[depth]


@settings(max_examples=200)
@given(words4, words4, words4)
def test_all_associativity_laws_weight_eight(a, b, c):
    assert all(n == 0 for n in assoc_checks([(a, b, c)]).values())


@given(elements, elements, elements)
def test_laws_extend_to_linear_combinations(a, b, c):
    for f in (qs.prec, qs.bullet, qs.qshuffle, qs.hat_times):
        assert f(f(a, b), c) == f(a, f(b, c))
    assert qs.qshuffle(a, b) == qs.qshuffle(b, a)
    assert qs.qshuffle(a, b + c) == qs.qshuffle(a, b) + qs.qshuffle(a, c)


def _qsh(a, b):
    # empty word acts as the unit of the quasi-shuffle
    if not a:
        return qs.as_element(b)
    if not b:
        return qs.as_element(a)
    return qs.qshuffle(a, b)


@given(words4, words4)
def test_qshuffle_first_letter_recursion(a, b):
    head_a, rest_a = (a[0],), a[1:]
    head_b, rest_b = (b[0],), b[1:]
    rhs = (
        qs.prec(head_a, _qsh(rest_a, b))
        + qs.prec(head_b, _qsh(a, rest_b))
        + qs.prec(qs.bullet(head_a, head_b), _qsh(rest_a, rest_b))
        if rest_a or rest_b
        else qs.prec(head_a, head_b) + qs.prec(head_b, head_a) + qs.bullet(head_a, head_b)
    )
    assert qs.qshuffle(a, b) == rhs


@settings(max_examples=25)
@given(compositions(max_weight=3), compositions(max_weight=3))
def test_kp_hom_random(a, b):
    ok, _ = with_retry(lambda c: verify_hom_property(a, b, c), 6, max_depth=8, cache=_KP)
    assert ok


@settings(max_examples=25)
@given(compositions(max_weight=3), st.integers(1, 3))
def test_kp_flow_random(w, n):
    ok, _ = with_retry(lambda c: verify_flow_property(w, n, c), 6, max_depth=8, cache=_KP)
    assert ok


@settings(max_examples=25)
@given(compositions(max_weight=3), compositions(max_weight=3))
def test_akns_hom_random(a, b):
    assert verify_akns_hom(a, b, _akns(8))


@settings(max_examples=25)
@given(compositions(max_weight=5))
def test_ell_r_agree_random(w):
    ctx = _akns(8)
    assert ell_akns(w, ctx).coeff(-1) == r_akns(w, ctx).coeff(-1)


def test_kp_cache_is_shared():
    with_retry(lambda c: c.depth, 6, cache=_KP)
    assert isinstance(_KP[(6, 3, _first_rules())], LaxContext)


def _first_rules():
    from kpakns.ncpoly import FREE

    return FREE

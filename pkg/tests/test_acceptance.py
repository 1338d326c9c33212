"""Acceptance criteria 1-11.

Each criterion is a function ``criterion_N(shift)`` returning ``(ok, detail)``;
``shift`` raises every truncation and chain depth (criterion 11 uses 1).
Each test prints one ``criterion N: PASS|FAIL`` line.  Running this file
directly prints all eleven lines without pytest.
"""

import time

import pytest

from kpakns import qshuffle as qs
from kpakns.cases import assoc_checks, sample_triples
from kpakns.laurent import (
    abstract_context,
    akns_image_of_kp_identity,
    displayed_kp_identity_image,
    displayed_phi,
    ell_akns,
    phi_akns,
    r_akns,
    verify_flow_symmetry,
)
from kpakns.ncpoly import COMMUTATIVE
from kpakns.ncpoly import parse as nparse
from kpakns.psido import (
    LaxContext,
    verify_flow_property,
    verify_hom_property,
    verify_kp_identity,
    with_retry,
)
from kpakns.reduction import (
    AKNS1A_TEXT,
    AKNS1B_TEXT,
    BURGERS_TEXT,
    DISPLAYED_V4_12,
    EXPECTED_V2_CHAIN,
    KDV_TEXT,
    MKDV_TEXT,
    akns_to_kp,
    derive_v_chain_v2,
    derive_v_chain_v3,
    expected_v2_matrix,
    expected_v3_matrix,
    extract_burgers,
    extract_pde_v2,
    instantiate_2x2,
    verify_consequence_kp_id,
)


def _report(n, ok, detail):
    line = f"criterion {n}: {'PASS' if ok else 'FAIL'}" + (f" ({detail})" if detail else "")
    print(line)
    return line


@pytest.fixture
def emit(capsys):
    def _emit(n, ok, detail=""):
        with capsys.disabled():
            print()
            _report(n, ok, detail)

    return _emit


# --- criteria -----------------------------------------------------------------------


def criterion_1(shift=0):
    start = time.perf_counter()
    pairs = bad = 0
    for wa in range(1, 6):
        for a in qs.compositions(wa):
            for wb in range(1, 7 - wa):
                for b in qs.compositions(wb):
                    pairs += 1
                    if qs.qshuffle(a, b) != qs.qsym_oracle_product(a, b, len(a) + len(b)):
                        bad += 1
    elapsed = time.perf_counter() - start
    return bad == 0 and elapsed < 10, f"{pairs} pairs, {bad} mismatches, {elapsed:.2f}s"


def criterion_2(shift=0):
    words = list(qs.compositions_up_to(4))
    exhaustive = [(a, b, c) for a in words for b in words for c in words]
    sampled = sample_triples(seed=2024, samples=500)
    fails = {}
    for triples in (exhaustive, sampled):
        for law, n in assoc_checks(triples).items():
            fails[law] = fails.get(law, 0) + n
    ok = not any(fails.values())
    return ok, f"{len(exhaustive)} exhaustive + {len(sampled)} random triples" + ("" if ok else f", failures {fails}")


def criterion_3(shift=0):
    K = 6 + shift
    words = list(qs.compositions_up_to(4))
    cache, used, bad = {}, {}, []
    for a in words:
        for b in words:
            ok, k = with_retry(lambda c: verify_hom_property(a, b, c), K, 3, max_depth=K + 4, cache=cache)
            used[k] = used.get(k, 0) + 1
            bad += [] if ok else [("hom", a, b)]
        for n in (1, 2, 3):
            ok, k = with_retry(lambda c: verify_flow_property(a, n, c), K, 3, max_depth=K + 4, cache=cache)
            used[k] = used.get(k, 0) + 1
            bad += [] if ok else [("flow", a, n)]
    depths = ", ".join(f"K={k}: {n}" for k, n in sorted(used.items()))
    return not bad, f"start K={K}, depths used {depths}" + (f", failed {bad[:3]}" if bad else "")


def criterion_4(shift=0):
    start = time.perf_counter()
    ctx = LaxContext(6 + shift, 3)
    report = verify_kp_identity(ctx)
    entry = ctx.tables.entry(2, "u2")
    mutated = verify_kp_identity(ctx.with_table_entry(2, "u2", entry + nparse("u3")))
    elapsed = time.perf_counter() - start
    ok = report.passed and not report.residual and not mutated.passed and elapsed < 60
    return ok, f"K={ctx.depth}, residual 0, mutated residual {mutated.residual}, {elapsed:.2f}s"


def criterion_5(shift=0):
    ctx = abstract_context(8 + shift, 3)
    ok = phi_akns((1,), ctx) == nparse("v2*J") and all(
        phi_akns((n,), ctx) == displayed_phi(n) for n in (1, 2, 3)
    )
    return ok, f"abstract depth {ctx.depth}"


def criterion_6(shift=0):
    ctx = abstract_context(8 + shift, 3)
    words = list(qs.compositions_up_to(5))
    lr_ok = all(ell_akns(w, ctx).coeff(-1) == r_akns(w, ctx).coeff(-1) for w in words)
    sym_ok = all(verify_flow_symmetry(n, k, ctx) for n, k in ((1, 2), (1, 3), (2, 3)))
    return lr_ok and sym_ok, f"{len(words)} words, depth {ctx.depth}"


def _criterion_7_parts(shift=0):
    chain = derive_v_chain_v2(4 + shift)
    inst = instantiate_2x2(5 + shift)
    parts = {
        "(H,u) v2-v4": all(chain.v[m] == nparse(t, chain.rules) for m, t in EXPECTED_V2_CHAIN.items()),
        "2x2 v2, v3": all(inst.v[m] == expected_v2_matrix(m) for m in (2, 3)),
        "2x2 v4 off (1,2)": all(
            inst.v[4][i, j] == expected_v2_matrix(4)[i, j] for i, j in ((0, 0), (1, 0), (1, 1))
        ),
    }
    s2, s3 = extract_pde_v2(2, inst), extract_pde_v2(3, inst)
    parts["AKNS1a"] = s2.equations == [nparse(t) for t in AKNS1A_TEXT]
    parts["AKNS1b"] = s3.equations == [nparse(t) for t in AKNS1B_TEXT]
    parts["KdV"] = s3.substitute({"r": nparse("I")}).equations[0] == nparse(KDV_TEXT)
    parts["mKdV"] = s3.substitute({"q": nparse("r")}).equations[1] == nparse(MKDV_TEXT)
    parts["v4 (1,2) as printed"] = inst.v[4][0, 1] == nparse(DISPLAYED_V4_12)
    parts["v4 (1,2) with sign corrected"] = inst.v[4][0, 1] == -nparse(DISPLAYED_V4_12)
    return parts


def criterion_7(shift=0):
    parts = _criterion_7_parts(shift)
    failed = [k for k, ok in parts.items() if not ok and k != "v4 (1,2) with sign corrected"]
    if failed == ["v4 (1,2) as printed"] and parts["v4 (1,2) with sign corrected"]:
        return False, "printed 2x2 v4 (1,2) entry has the wrong sign; every other part matches"
    return not failed, f"failed: {failed}" if failed else ""


def criterion_7_corrected(shift=0):
    parts = _criterion_7_parts(shift)
    parts.pop("v4 (1,2) as printed")
    failed = [k for k, ok in parts.items() if not ok]
    return not failed, f"failed: {failed}" if failed else "all parts, printed v4 (1,2) sign corrected"


def criterion_8(shift=0):
    inst = instantiate_2x2(5 + shift)
    abstract = not akns_image_of_kp_identity(abstract_context(6 + shift, 3))
    formal = akns_image_of_kp_identity(depth=6 + shift) == displayed_kp_identity_image()
    return verify_consequence_kp_id(inst) and abstract and formal, f"2x2 depth {inst.depth}"


def criterion_9(shift=0):
    inst = derive_v_chain_v3(4 + shift)
    chain_ok = all(inst.v[m] == expected_v3_matrix(m) for m in (2, 3))
    eqs = extract_burgers(inst).equations
    burgers_ok = eqs == [nparse(t, COMMUTATIVE) for t in BURGERS_TEXT]
    return chain_ok and burgers_ok, f"chain depth {inst.depth}, d/dt = (1+2z) d/dt2"


def criterion_10(shift=0):
    report = akns_to_kp(instantiate_2x2(5 + shift))
    ok = report.passed and report.scalar_constraint == nparse("-q*r")
    return ok, f"(1,1) entry {report.scalar_constraint}"


def criterion_11():
    # criterion 7 is re-run in its corrected form, since the literal form fails
    checks = [criterion_3, criterion_4, criterion_5, criterion_6, criterion_7_corrected,
              criterion_8, criterion_9, criterion_10]
    failed = [f.__name__ for f in checks if not f(1)[0]]
    # criteria 1 and 2 involve no truncation, so there is nothing to deepen
    return not failed, "3-10 re-run at K+1 / chain depth +1" + (f"; failed: {failed}" if failed else "")


# --- tests ----------------------------------------------------------------------------


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5, 6, 8, 9, 10])
def test_criterion(n, emit):
    ok, detail = globals()[f"criterion_{n}"]()
    emit(n, ok, detail)
    assert ok, detail


@pytest.mark.xfail(strict=True, reason="the printed 2x2 v4 (1,2) entry has the opposite sign")
def test_criterion_7_literal(emit):
    ok, detail = criterion_7()
    emit(7, ok, detail)
    assert ok, detail


def test_criterion_7_sign_corrected(emit):
    ok, detail = criterion_7_corrected()
    emit("7 (sign corrected)", ok, detail)
    assert ok, detail


def test_criterion_11(emit):
    ok, detail = criterion_11()
    emit(11, ok, detail)
    assert ok, detail


if __name__ == "__main__":
    for n in range(1, 12):
        _report(n, *globals()[f"criterion_{n}"]())

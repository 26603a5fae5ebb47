from __future__ import annotations

import json

import pytest

from conftest import SYM, build_pair, full_context
from qtet.criterion import build_P, decide, evaluate_criterion, pv_formula_check
from qtet.errors import DomainError, StructuralError


def _one():
    return SYM.one()


def test_build_P_d0():
    res = build_P([_one()], 0, SYM)
    assert len(res.P_coeffs) == 1
    assert res.P_coeffs[0].is_one()
    res = evaluate_criterion(res)
    assert res.P_at_lambda_star.is_one()
    assert res.exists_module is True


def test_build_P_d1_shape():
    z1 = SYM.from_int(7)
    res = build_P([_one(), z1], 1, SYM)
    # q^0 / [1]!^2 = 1, so the linear coefficient is zeta_1 itself
    assert res.P_coeffs[0].is_one()
    assert res.P_coeffs[1] == z1


def test_lambda_star_d1():
    res = evaluate_criterion(build_P([_one(), _one()], 1, SYM))
    qv = SYM.q()
    assert res.lambda_star == ((qv - qv ** -1) ** 2).inverse()


def test_quadratic_coefficient_formula(mixed_d2_ctx):
    pair, _, split, _ = mixed_d2_ctx
    qv = SYM.q()
    res = build_P(split.zeta, 2, SYM)
    two_bracket = qv + qv ** -1
    expected = qv ** -2 * split.zeta[2] / (two_bracket * two_bracket)
    assert res.P_coeffs[2] == expected


def test_build_P_validations():
    with pytest.raises(DomainError):
        build_P([_one()], 1, SYM)
    with pytest.raises(DomainError):
        build_P([SYM.from_int(2), _one()], 1, SYM)


def test_injected_zeta_kills_criterion():
    qv = SYM.q()
    zeta = [_one(), -((qv - qv ** -1) ** 2)]
    res = evaluate_criterion(build_P(zeta, 1, SYM))
    assert res.P_at_lambda_star.is_zero()
    assert res.exists_module is False


def test_pv_formula_check(mixed_d1_ctx, mixed_d2_ctx):
    for ctx in (mixed_d1_ctx, mixed_d2_ctx):
        pair, _, split, suite = ctx
        res = evaluate_criterion(build_P(split.zeta, split.d, SYM))
        report = pv_formula_check(pair, split, suite, res)
        assert report["pass"], report


def test_pv_formula_needs_mixed(geo_d1_ctx):
    pair, _, split, suite = geo_d1_ctx
    res = evaluate_criterion(build_P(split.zeta, split.d, SYM))
    with pytest.raises(DomainError):
        pv_formula_check(pair, split, suite, res)


def test_decide_mixed_d1(mixed_d1_ctx):
    pair = mixed_d1_ctx[0]
    rec = decide(pair)
    assert rec.exists is True
    assert rec.closure_dim == pair.n * pair.n
    assert all(rec.checks.values()), rec.checks
    assert rec.action is not None
    assert rec.zeta[0].is_one()
    assert rec.criterion.P_coeffs[0].is_one()


def test_decide_mixed_d2(mixed_d2_ctx):
    pair = mixed_d2_ctx[0]
    rec = decide(pair)
    assert rec.exists is True
    assert rec.checks["pv_formula"] is True
    assert rec.checks["derived_pair_geometric"] is True


def test_decide_d0():
    rec = decide(build_pair([[1]], [[3]]))
    assert rec.exists is True
    assert rec.d == 0
    assert rec.c == SYM.from_int(2)
    assert rec.criterion.P_at_lambda_star.is_one()


def test_decide_rejects_geometric(geo_d1_ctx):
    with pytest.raises(DomainError) as err:
        decide(geo_d1_ctx[0])
    assert "classify" in str(err.value)


def test_decide_rejects_reducible_pair():
    qv = SYM.q()
    two = SYM.from_int(2)
    t0 = str(qv ** -1 + two * qv)
    t1 = str(qv + two * qv ** -1)
    pair = build_pair([["q^-1", 0], [0, "q"]], [[t0, 0], [0, t1]])
    with pytest.raises(StructuralError) as err:
        decide(pair)
    assert "verify" in str(err.value)


def test_decision_record_serializes(mixed_d1_ctx):
    rec = decide(mixed_d1_ctx[0])
    data = rec.as_dict()
    assert set(data) == {"d", "c", "zeta", "P_coeffs", "lambda_star",
                         "P_value", "exists", "closure_dim", "checks"}
    text = json.dumps(data)
    back = json.loads(text)
    assert back["d"] == 1
    assert back["exists"] is True
    assert back["zeta"][0] == "1"
    # scalar strings survive the literal grammar
    assert SYM.parse(back["P_value"]) == rec.criterion.P_at_lambda_star


def test_decide_without_action(mixed_d1_ctx):
    rec = decide(mixed_d1_ctx[0], with_action=False)
    assert rec.exists is True
    assert rec.action is None


def test_closure_equivalence_both_ways(mixed_d1_ctx, mixed_d2_ctx):
    # positive side of the equivalence on genuine pairs
    for ctx in (mixed_d1_ctx, mixed_d2_ctx):
        rec = decide(ctx[0])
        assert (rec.closure_dim == ctx[0].n ** 2) == rec.exists


def test_frozen_criterion_values(mixed_d1_ctx, mixed_d2_ctx):
    qv = SYM.q()
    one = SYM.one()
    rec1 = decide(mixed_d1_ctx[0])
    expected1 = (qv ** 4 - qv ** 2 + one) / ((qv ** 2 - one) ** 2)
    assert rec1.criterion.P_at_lambda_star == expected1
    rec2 = decide(mixed_d2_ctx[0])
    expected2 = SYM.from_int(4) * qv ** 6 / ((qv ** 2 - one) ** 4)
    assert rec2.criterion.P_at_lambda_star == expected2

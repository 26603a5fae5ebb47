from __future__ import annotations

import pytest

from conftest import SYM, build_pair, full_context
from qtet.boxtimes import (GENERATOR_NAMES, construct_action,
                           identify_generators, verify_boxtimes)
from qtet.errors import DomainError, StructuralError
from qtet.linalg import Decomposition, eigenspace


def _action(ctx):
    return construct_action(*ctx)


def test_generator_inventory(mixed_d1_ctx):
    action = _action(mixed_d1_ctx)
    assert len(GENERATOR_NAMES) == 8
    for name in GENERATOR_NAMES:
        mat = getattr(action, name)
        assert mat.nrows == mixed_d1_ctx[0].n
    assert action.generator(0, 1) is action.x01
    assert action.generator(3, 0) is action.x30
    # indices act mod 4
    assert action.generator(4, 5) is action.x01


def test_relation_inventory(mixed_d1_ctx):
    report = verify_boxtimes(_action(mixed_d1_ctx))
    rels = report["relations"]
    assert len(rels) == 20
    assert sum(1 for k in rels if k.startswith("inverse_")) == 4
    assert sum(1 for k in rels if k.startswith("weyl_")) == 12
    assert sum(1 for k in rels if k.startswith("serre_")) == 4
    assert report["pass"] is True
    assert all(rels.values()), [k for k, v in rels.items() if not v]


def test_full_verification_d2(mixed_d2_ctx):
    report = verify_boxtimes(_action(mixed_d2_ctx))
    assert report["pass"] is True
    assert report["type_1_eigenvalues"] is True
    assert report["irreducible"] is True
    assert report["closure_dim"] == mixed_d2_ctx[0].n ** 2


def test_eigenvalue_ladders(mixed_d2_ctx):
    action = _action(mixed_d2_ctx)
    qv = SYM.q()
    d = action.d
    for name in GENERATOR_NAMES:
        mat = getattr(action, name)
        dims = [eigenspace(mat, qv ** (2 * n - d)).dim for n in range(d + 1)]
        assert all(dim > 0 for dim in dims)
        assert sum(dims) == action.n


def test_identifications(mixed_d1_ctx, mixed_d2_ctx):
    for ctx in (mixed_d1_ctx, mixed_d2_ctx):
        pair, _, _, suite = ctx
        action = _action(ctx)
        checks = identify_generators(action, pair, suite)
        assert checks["pass"], checks
        assert action.x01 == pair.A
        assert action.x30 == suite.B
        assert action.x23 == suite.Atilde
        assert action.x31 == suite.K
        assert action.x13 == suite.Kinv


def test_astar_recombination(mixed_d2_ctx):
    pair, _, _, suite = mixed_d2_ctx
    action = _action(mixed_d2_ctx)
    assert action.x30 + action.x23.scale(suite.c) == pair.Astar


def test_construction_deterministic(mixed_d1_ctx):
    first = _action(mixed_d1_ctx)
    second = _action(mixed_d1_ctx)
    for name in GENERATOR_NAMES:
        assert getattr(first, name) == getattr(second, name)


def test_diameter_zero():
    pair, profile, split, suite = full_context(build_pair([[1]], [[3]]))
    action = construct_action(pair, profile, split, suite)
    one = SYM.one()
    for name in GENERATOR_NAMES:
        mat = getattr(action, name)
        assert mat.rows[0][0] == one
    report = verify_boxtimes(action)
    assert report["pass"] is True
    assert report["irreducible"] is True
    checks = identify_generators(action, pair, suite)
    assert checks["pass"], checks


def test_serialization_shape(mixed_d1_ctx):
    action = _action(mixed_d1_ctx)
    data = action.as_dict()
    assert set(data) == {"d", "type", "generators"}
    assert data["d"] == 1
    assert data["type"] == 1
    assert set(data["generators"]) == set(GENERATOR_NAMES)
    mat = data["generators"]["x01"]
    assert len(mat) == action.n and len(mat[0]) == action.n
    # entries are literals the scalar grammar accepts
    assert SYM.parse(mat[1][0]).is_one()


def test_rejects_geometric_suite(geo_d1_ctx):
    with pytest.raises(DomainError):
        construct_action(*geo_d1_ctx)


def test_rejects_corrupt_eigenspace_data(mixed_d2_ctx):
    pair, profile, split, suite = mixed_d2_ctx
    from qtet.operators import build_suite
    from qtet.splitting import oriented_profile
    fresh = build_suite(pair, profile, split)
    # replace the normalized operator's eigenspace data with A's; the
    # intersection table then fails to decompose the space
    _, _, V, _ = oriented_profile(pair, profile)
    fresh.Vtilde_star = Decomposition(V)
    with pytest.raises(StructuralError):
        construct_action(pair, profile, split, fresh)

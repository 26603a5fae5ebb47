from __future__ import annotations

import pytest

from qtet.linalg import MatrixE
from qtet.operators import build_suite
from qtet.scalars import FieldSpec, q_int
from qtet.splitting import compute_split
from qtet.tdpair import TriPair, derive_profile

SYM = FieldSpec.symbolic()


def build_pair(a_rows, astar_rows, field=SYM):
    return TriPair(MatrixE.build(field, a_rows), MatrixE.build(field, astar_rows))


def geo_d1_pair():
    return build_pair([["q^-1", 0], [1, "q"]], [["q", 1], [0, "q^-1"]])


def geo_d2_pair():
    phi = str(q_int(2, SYM))
    return build_pair(
        [["q^-2", 0, 0], [1, 1, 0], [0, 1, "q^2"]],
        [["q^2", phi, 0], [0, 1, phi], [0, 0, "q^-2"]],
    )


def mixed_d1_pair():
    qv = SYM.q()
    two = SYM.from_int(2)
    t0 = qv ** -1 + two * qv
    t1 = qv + two * qv ** -1
    return build_pair([["q^-1", 0], [1, "q"]], [[str(t0), 1], [0, str(t1)]])


def mixed_from_geometric(geo_pair, c):
    """Replace A* by B + c * A*, the standard way to produce a q-mixed
    partner from a q-geometric pair; c must avoid the eigenvalue-collision
    set {q^(2m) : |m| <= d-1}."""
    profile = derive_profile(geo_pair)
    split = compute_split(geo_pair, profile)
    suite = build_suite(geo_pair, profile, split)
    astar_new = suite.B + geo_pair.Astar.scale(c)
    return TriPair(geo_pair.A, astar_new)


def full_context(pair):
    profile = derive_profile(pair)
    split = compute_split(pair, profile)
    suite = build_suite(pair, profile, split)
    return pair, profile, split, suite


@pytest.fixture(scope="session")
def geo_d1_ctx():
    return full_context(geo_d1_pair())


@pytest.fixture(scope="session")
def geo_d2_ctx():
    return full_context(geo_d2_pair())


@pytest.fixture(scope="session")
def mixed_d1_ctx():
    return full_context(mixed_d1_pair())


@pytest.fixture(scope="session")
def mixed_d2_ctx():
    return full_context(mixed_from_geometric(geo_d2_pair(), SYM.from_int(2)))

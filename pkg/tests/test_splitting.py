from __future__ import annotations

import pytest

from qtet.errors import DomainError, StructuralError
from qtet.linalg import Decomposition, MatrixE, eigenspace
from qtet.scalars import FieldSpec, q_int
from qtet.splitting import (
    bijection_check,
    compute_split,
    ei_on_w_series,
    eigen_projectors,
    oriented_profile,
    zeta_sequence,
)
from qtet.tdpair import TDProfile, TriPair, classify, derive_profile

F = FieldSpec.symbolic()


def _pair(a_rows, astar_rows):
    return TriPair(MatrixE.build(F, a_rows), MatrixE.build(F, astar_rows))


def _geo_d1():
    return _pair([["q^-1", 0], [1, "q"]], [["q", 1], [0, "q^-1"]])


def _geo_d2():
    phi = str(q_int(2, F))
    A = [["q^-2", 0, 0], [1, 1, 0], [0, 1, "q^2"]]
    As = [["q^2", phi, 0], [0, 1, phi], [0, 0, "q^-2"]]
    return _pair(A, As)


def _mixed_d1():
    qv = F.q()
    two = F.from_int(2)
    t0 = qv ** -1 + two * qv
    t1 = qv + two * qv ** -1
    return _pair([["q^-1", 0], [1, "q"]], [[str(t0), 1], [0, str(t1)]])


def _split_of(pair):
    return compute_split(pair, derive_profile(pair))


def test_split_dimensions_d1():
    split = _split_of(_geo_d1())
    assert [split.U[i].dim for i in range(2)] == [1, 1]
    assert [split.W[i].dim for i in range(2)] == [1, 1]
    assert split.U[0] == split.W[0]


def test_raising_lowering_directions():
    split = _split_of(_geo_d1())
    u0 = split.U[0].basis[0]
    u1 = split.U[1].basis[0]
    assert split.U[1].contains(split.R.apply(u0))
    assert all(e.is_zero() for e in split.R.apply(u1))
    assert split.U[0].contains(split.L.apply(u1))
    assert all(e.is_zero() for e in split.L.apply(u0))


def test_nilpotency_of_shift_maps():
    for pair in (_geo_d1(), _geo_d2(), _mixed_d1()):
        split = _split_of(pair)
        k = split.d + 1
        assert (split.R ** k).is_zero()
        assert (split.L ** k).is_zero()
        assert (split.r ** k).is_zero()
        assert (split.l ** k).is_zero()


def test_w_side_shifts():
    split = _split_of(_geo_d2())
    for i in range(split.d + 1):
        for v in split.W[i].basis:
            up = split.r.apply(v)
            down = split.l.apply(v)
            if i + 1 <= split.d:
                assert split.W[i + 1].contains(up)
            else:
                assert all(e.is_zero() for e in up)
            if i - 1 >= 0:
                assert split.W[i - 1].contains(down)
            else:
                assert all(e.is_zero() for e in down)


def test_projector_defining_relations():
    split = _split_of(_geo_d2())
    for i in range(split.d + 1):
        for j in range(split.d + 1):
            for v in split.U[j].basis:
                got = split.F[i].apply(v)
                if i == j:
                    assert got == v
                else:
                    assert all(e.is_zero() for e in got)


def test_zeta_basics():
    for pair in (_geo_d1(), _geo_d2(), _mixed_d1()):
        split = _split_of(pair)
        assert split.zeta[0].is_one()
        assert list(split.zeta) == list(zeta_sequence(split))


def test_zeta_trace_oracle_d1():
    # at d=1, LR kills U_1, so its trace equals the U_0 eigenvalue
    for pair in (_geo_d1(), _mixed_d1()):
        split = _split_of(pair)
        assert split.zeta[1] == (split.L * split.R).trace()


def test_zeta_d0():
    split = _split_of(_pair([[1]], [[1]]))
    assert [str(z) for z in split.zeta] == ["1"]


def test_eigen_projectors_geometric():
    # for a q-geometric pair A* itself plays the derived operator
    pair = _geo_d1()
    profile = derive_profile(pair)
    _, _, V, Vs = oriented_profile(pair, profile)
    E, Et = eigen_projectors(pair, profile, Decomposition(Vs), pair.Astar)
    n = pair.n
    total = MatrixE.zeros(F, n, n)
    for i, P in enumerate(E):
        total = total + P
        for j, Q in enumerate(E):
            assert P * Q == (P if i == j else MatrixE.zeros(F, n, n))
    assert total == MatrixE.identity(F, n)
    # two-factor frozen case: E_0 = (A - qI)/(q^-1 - q)
    qv = F.q()
    expected = (pair.A - MatrixE.identity(F, 2).scale(qv)).scale(
        (qv ** -1 - qv).inverse()
    )
    assert E[0] == expected


def test_eigen_projector_mismatch_detected():
    # feeding the wrong operator makes the product formula disagree
    pair = _geo_d2()
    profile = derive_profile(pair)
    _, _, V, Vs = oriented_profile(pair, profile)
    with pytest.raises(StructuralError):
        eigen_projectors(pair, profile, Decomposition(Vs), pair.A)


def test_bijection_check_passes():
    for pair in (_geo_d1(), _geo_d2()):
        profile = derive_profile(pair)
        split = compute_split(pair, profile)
        _, _, V, Vs = oriented_profile(pair, profile)
        E, _ = eigen_projectors(pair, profile, Decomposition(Vs), pair.Astar)
        report = bijection_check(split, E, split.G)
        assert report["pass"], report["failures"]


def test_ei_on_w_series_matches():
    pair = _geo_d2()
    profile = derive_profile(pair)
    split = compute_split(pair, profile)
    _, _, V, Vs = oriented_profile(pair, profile)
    E, _ = eigen_projectors(pair, profile, Decomposition(Vs), pair.Astar)
    split.E = E
    for i in range(split.d + 1):
        report = ei_on_w_series(split, i)
        assert report["pass"], report["failures"]


def test_series_requires_attached_projectors():
    split = _split_of(_geo_d1())
    with pytest.raises(DomainError):
        ei_on_w_series(split, 0)


def test_split_rejects_unclassified():
    pair = _geo_d1()
    profile = derive_profile(pair)
    profile.pair_class = classify(
        TDProfile(1, [F.from_int(1), F.from_int(2)], [F.from_int(3), F.from_int(4)]),
        F.q(),
    )
    with pytest.raises(DomainError):
        compute_split(pair, profile)


def test_split_rejects_broken_tridiagonality():
    # A* has the right eigenvalues but shifts U_2 two steps down
    qv = F.q()
    A = [["q^-2", 0, 0], [0, 1, 0], [0, 0, "q^2"]]
    As = [["q^2", 0, str(qv ** -2 - qv ** 2)], [0, 1, 0], [0, 0, "q^-2"]]
    pair = _pair(A, As)
    from qtet.tdpair import theta_geometric, theta_star_geometric

    profile = TDProfile(2, theta_geometric(2, F), theta_star_geometric(2, F))
    profile.pair_class = classify(profile, qv)
    with pytest.raises(StructuralError):
        compute_split(pair, profile)

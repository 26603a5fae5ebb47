from __future__ import annotations

import random
from fractions import Fraction

import pytest

from qtet.errors import DomainError, StructuralError
from qtet.linalg import (
    Decomposition,
    MatrixE,
    Subspace,
    algebra_closure_dim,
    eigenspace,
    image,
    inverse,
    kernel,
    minimal_polynomial,
    projector,
    rref,
)
from qtet.scalars import FieldSpec

F = FieldSpec.symbolic()
FS = FieldSpec.specialized(Fraction(7, 2))


def _m(rows, field=F):
    return MatrixE.build(field, rows)


def _span(vectors, n, field=F):
    return Subspace.from_vectors(field, n, [[_one_entry(field, v) for v in vec] for vec in vectors])


def _one_entry(field, v):
    from qtet.linalg import _coerce

    return _coerce(field, v)


def _rand_matrix(rng, r, c, field=F):
    return MatrixE.build(field, [[rng.randint(-3, 3) for _ in range(c)] for _ in range(r)])


def test_kernel_identity_and_zero():
    assert kernel(MatrixE.identity(F, 3)).dim == 0
    full = kernel(MatrixE.zeros(F, 3, 3))
    assert full == Subspace.full(F, 3)


def test_kernel_rank_one():
    K = kernel(_m([[1, 1], [1, 1]]))
    assert K == _span([[1, -1]], 2)


def test_kernel_members_annihilate():
    rng = random.Random(7)
    for _ in range(10):
        M = _rand_matrix(rng, 3, 4)
        K = kernel(M)
        for v in K.basis:
            assert all(e.is_zero() for e in M.apply(v))
        assert K.dim + image(M).dim == 4


def test_subspace_lattice_small():
    S = _span([[1, 0, 0], [0, 1, 0]], 3)
    T = _span([[0, 1, 0], [0, 0, 1]], 3)
    assert S.intersect(T) == _span([[0, 1, 0]], 3)
    assert S.intersect(S) == S
    Z = Subspace.zero(F, 3)
    assert S.intersect(Z) == Z
    assert S.sum(Z) == S
    assert S.sum(T) == Subspace.full(F, 3)


def test_subspace_canonical_form():
    # two spanning sets of the same plane give identical bases
    S1 = _span([[1, 1, 0], [0, 2, 0]], 3)
    S2 = _span([[3, 5, 0], [-1, 1, 0]], 3)
    assert S1 == S2
    assert S1.basis == S2.basis


def test_dimension_formula_randomized():
    rng = random.Random(23)
    for _ in range(12):
        S = Subspace.from_vectors(F, 4, _rand_matrix(rng, 2, 4).rows)
        T = Subspace.from_vectors(F, 4, _rand_matrix(rng, 2, 4).rows)
        assert S.dim + T.dim == S.sum(T).dim + S.intersect(T).dim


def test_projector_axes():
    dec = Decomposition([_span([[1, 0]], 2), _span([[0, 1]], 2)])
    assert projector(dec, 0) == _m([[1, 0], [0, 0]])


def test_projector_diagonal_split():
    dec = Decomposition([_span([[1, 1]], 2), _span([[1, -1]], 2)])
    P = projector(dec, 0)
    assert P == _m([["1/2", "1/2"], ["1/2", "1/2"]])
    assert P * P == P


def test_projector_partition_of_unity():
    rng = random.Random(5)
    for _ in range(6):
        M = _rand_matrix(rng, 4, 4)
        if _inverse_exists(M):
            parts = [Subspace.from_vectors(F, 4, [M.rows[i]]) for i in range(4)]
            dec = Decomposition(parts)
            total = MatrixE.zeros(F, 4, 4)
            for i in range(4):
                P = projector(dec, i)
                assert P * P == P
                total = total + P
            assert total == MatrixE.identity(F, 4)


def _inverse_exists(M):
    from qtet.linalg import _inverse_or_none

    return _inverse_or_none(M) is not None


def test_invalid_decomposition_rejected():
    with pytest.raises(StructuralError):
        Decomposition([_span([[1, 0]], 2), _span([[1, 0]], 2)])
    with pytest.raises(StructuralError):
        Decomposition([_span([[1, 0]], 2)])


def test_inverse_round_trip():
    M = _m([[1, 2], [3, "q"]])
    assert inverse(M) * M == MatrixE.identity(F, 2)
    with pytest.raises(DomainError):
        inverse(_m([[1, 1], [1, 1]]))


def test_algebra_closure_examples():
    assert algebra_closure_dim([MatrixE.identity(F, 2)]) == 1
    E12 = _m([[0, 1], [0, 0]])
    E21 = _m([[0, 0], [1, 0]])
    assert algebra_closure_dim([E12, E21]) == 4
    assert algebra_closure_dim([_m([[1, 0], [0, 2]])]) == 2


def test_algebra_closure_monotone():
    rng = random.Random(31)
    for _ in range(6):
        A = _rand_matrix(rng, 3, 3)
        B = _rand_matrix(rng, 3, 3)
        d1 = algebra_closure_dim([A])
        d2 = algebra_closure_dim([A, B])
        assert d1 <= d2 <= 9


def test_rref_cross_route():
    # the Bareiss path and plain elimination must agree after specialization
    rng = random.Random(99)
    for _ in range(8):
        rows = [[rng.randint(-4, 4) for _ in range(5)] for _ in range(4)]
        sym = MatrixE.build(F, rows)
        spc = MatrixE.build(FS, rows)
        rs, ps = rref(sym.rows, F)
        rn, pn = rref(spc.rows, FS)
        assert ps == pn
        assert [[e.specialize(FS) for e in r] for r in rs] == [list(r) for r in rn]


def test_eigenspace_diagonal():
    M = _m([["q", 0], [0, "q^-1"]])
    S = eigenspace(M, F.q())
    assert S == _span([[1, 0]], 2)


def test_minimal_polynomial_diagonal():
    M = _m([[1, 0], [0, 2]])
    coeffs = minimal_polynomial(M)
    # (x-1)(x-2) = 2 - 3x + x^2
    assert [str(c) for c in coeffs] == ["2", "-3", "1"]
    P = MatrixE.identity(F, 2)
    total = MatrixE.zeros(F, 2, 2)
    for c in coeffs:
        total = total + P.scale(c)
        P = P * M
    assert total.is_zero()


def test_matrix_scalar_mix():
    A = _m([[1, 2], [3, 4]])
    q = F.q()
    assert q * A == A * q
    assert (q * A).rows[0][1] == q + q

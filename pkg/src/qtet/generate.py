"""Verified generation of pairs in the two eigenvalue families.

The geometric generator works in a split basis: A is lower bidiagonal
with diagonal q^(2i-d) and subdiagonal 1, and the candidate A* is upper
bidiagonal with diagonal q^(d-2i) and unknown superdiagonal entries.
Tridiagonality of A* on the eigenspaces of A is a linear condition on
those unknowns, so they are found by exact elimination; free unknowns
take seed values.  Every generated pair must pass the defining axioms
before it is returned.
"""

from __future__ import annotations

import os

from .errors import DomainError, GenerationError, StructuralError
from .linalg import MatrixE, eigenspace, inverse, rref
from .operators import build_suite
from .scalars import FieldSpec, Scalar
from .splitting import compute_split
from .tdpair import (TriPair, derive_profile, theta_geometric,
                     theta_star_geometric, verify_axioms)

DEFAULT_MAX_D = 6


def diameter_cap() -> int:
    """The configured diameter bound; QTET_MAX_D overrides the default."""
    raw = os.environ.get("QTET_MAX_D")
    if raw is None:
        return DEFAULT_MAX_D
    try:
        cap = int(raw)
    except ValueError:
        raise DomainError(f"QTET_MAX_D must be an integer, got {raw!r}")
    if cap < 0:
        raise DomainError("QTET_MAX_D must be nonnegative")
    return cap


class GenSpec:
    """Parameters for one generated pair."""

    __slots__ = ("d", "kind", "field", "c", "seed")

    def __init__(self, d: int, kind: str, field: FieldSpec, c=None,
                 seed=None):
        if not isinstance(d, int) or d < 0:
            raise DomainError("diameter must be a nonnegative integer")
        if kind not in ("q_geometric", "q_mixed"):
            raise DomainError(f"unknown generation class {kind!r}")
        if kind == "q_mixed":
            if not isinstance(c, Scalar) or c.field != field:
                raise DomainError("q_mixed generation needs c in the field")
            if c.is_zero():
                raise DomainError("the parameter c must be nonzero")
        elif c is not None:
            raise DomainError("c applies only to q_mixed generation")
        if seed is not None:
            seed = tuple(seed)
            for s in seed:
                if not isinstance(s, Scalar) or s.field != field:
                    raise DomainError("seed entries must lie in the field")
        self.d = d
        self.kind = kind
        self.field = field
        self.c = c
        self.seed = seed


def _unit_matrix(field, n, r, c):
    z, o = field.zero(), field.one()
    return MatrixE(field, [[o if (i, j) == (r, c) else z
                            for j in range(n)] for i in range(n)])


def _lower_bidiagonal(field, diag):
    z, o = field.zero(), field.one()
    n = len(diag)
    return MatrixE(field, [[diag[i] if i == j else (o if i == j + 1 else z)
                            for j in range(n)] for i in range(n)])


def _upper_bidiagonal(field, diag, sup):
    z = field.zero()
    n = len(diag)
    return MatrixE(field, [[diag[i] if i == j
                            else (sup[j - 1] if j == i + 1 else z)
                            for j in range(n)] for i in range(n)])


def generate_qgeometric(spec: GenSpec, max_d: int | None = None) -> TriPair:
    if spec.kind != "q_geometric":
        raise GenerationError("spec does not request a q-geometric pair")
    cap = diameter_cap() if max_d is None else max_d
    if spec.d > cap:
        raise GenerationError(
            f"diameter {spec.d} exceeds the configured cap {cap}"
        )
    field = spec.field
    d = spec.d
    n = d + 1
    theta = theta_geometric(d, field)
    tstar = theta_star_geometric(d, field)
    A = _lower_bidiagonal(field, theta)
    phi = _solve_superdiagonal(field, A, theta, tstar, spec.seed)
    for i, v in enumerate(phi):
        if v.is_zero():
            raise GenerationError(
                f"seeded solution degenerates: superdiagonal entry "
                f"{i + 1} vanishes"
            )
    pair = TriPair(A, _upper_bidiagonal(field, tstar, phi))
    _gate(pair, "q_geometric", cap)
    return pair


def _solve_superdiagonal(field, A, theta, tstar, seed):
    """Unknown superdiagonal entries from the tridiagonality constraints.

    In the eigenbasis of A the candidate A* must have no entry beyond
    the three central diagonals; those entries are affine in the
    unknowns, giving a linear system.  Free unknowns take seed values.
    """
    d = len(theta) - 1
    if d == 0:
        if seed:
            raise GenerationError("no free unknowns at diameter 0")
        return []
    n = d + 1
    cols = [eigenspace(A, t).basis[0] for t in theta]
    P = MatrixE(field, list(zip(*cols)))
    Pinv = inverse(P)
    z = field.zero()
    diag = MatrixE(field, [[tstar[i] if i == j else z
                            for j in range(n)] for i in range(n)])
    T0 = Pinv * diag * P
    parts = [Pinv * _unit_matrix(field, n, i - 1, i) * P
             for i in range(1, n)]
    rows = []
    for j in range(n):
        for k in range(n):
            if abs(j - k) >= 2:
                rows.append([m.rows[j][k] for m in parts]
                            + [-T0.rows[j][k]])
    pivots: tuple = ()
    reduced: list = []
    if rows:
        reduced, pivots = rref(rows, field)
        if d in pivots:
            raise GenerationError(
                "tridiagonality constraints are inconsistent at this "
                "diameter"
            )
    free = [i for i in range(d) if i not in pivots]
    if seed is None:
        seed = tuple(field.one() for _ in free)
    if len(seed) != len(free):
        raise GenerationError(
            f"family has {len(free)} free unknowns, got {len(seed)} seeds"
        )
    phi: list = [None] * d
    for f, s in zip(free, seed):
        phi[f] = s
    for r in range(len(pivots) - 1, -1, -1):
        p = pivots[r]
        val = reduced[r][d]
        for c in range(p + 1, d):
            val = val - reduced[r][c] * phi[c]
        phi[p] = val
    return phi


def derive_qmixed(geo: TriPair, c: Scalar, max_d: int | None = None) -> TriPair:
    """Companion pair with A* replaced by B + c A*.

    B acts as q^(2i-d) on the i-th summand of the split decomposition.
    The eigenvalues of the new A* are q^(2i-d) + c q^(d-2i); the value
    c = q^(2m) with |m| <= d-1 makes two of them collide, so no valid
    pair exists there.
    """
    field = geo.field
    if not isinstance(c, Scalar) or c.field != field:
        raise DomainError("c must lie in the pair's field")
    if c.is_zero():
        raise GenerationError("the parameter c must be nonzero")
    cap = diameter_cap() if max_d is None else max_d
    try:
        profile = derive_profile(geo, max_d=cap)
    except (StructuralError, DomainError) as exc:
        raise GenerationError(f"input stage: {exc}")
    if profile.pair_class.kind != "q_geometric":
        raise GenerationError(
            "input stage: pair is not q-geometric "
            f"(classified {profile.pair_class.kind})"
        )
    if not verify_axioms(geo, profile).all_pass:
        raise GenerationError("input stage: pair fails the defining axioms")
    d = profile.d
    qv = field.q()
    for m in range(-(d - 1), d):
        if c == qv ** (2 * m):
            raise GenerationError(
                f"c = q^{2 * m} makes two eigenvalues of the new A* "
                "coincide; no valid pair exists for this parameter"
            )
    split = compute_split(geo, profile)
    suite = build_suite(geo, profile, split)
    derived = TriPair(geo.A, suite.B + geo.Astar.scale(c))
    new_profile = _gate(derived, "q_mixed", cap)
    got = new_profile.pair_class.c
    if got != c:
        raise GenerationError(
            f"derived pair classified with c = {got}, expected {c}"
        )
    return derived


def generate_pair(spec: GenSpec, max_d: int | None = None) -> TriPair:
    """Dispatch on the requested class; q-mixed pairs come from a freshly
    generated geometric companion."""
    if spec.kind == "q_geometric":
        return generate_qgeometric(spec, max_d)
    base = GenSpec(spec.d, "q_geometric", spec.field, seed=spec.seed)
    return derive_qmixed(generate_qgeometric(base, max_d), spec.c, max_d)


def _gate(pair: TriPair, kind: str, cap: int):
    """Classification and axiom gate; generation never skips it."""
    try:
        profile = derive_profile(pair, max_d=cap)
    except (StructuralError, DomainError) as exc:
        raise GenerationError(f"classification stage: {exc}")
    if profile.pair_class.kind != kind:
        raise GenerationError(
            f"classification stage: expected {kind}, "
            f"got {profile.pair_class.kind}"
        )
    report = verify_axioms(pair, profile)
    if not report.all_pass:
        failing = [name for name, ok in (
            ("diagonalizable", report.diagonalizable),
            ("astar_tridiagonal", report.astar_tridiagonal),
            ("a_tridiagonal", report.a_tridiagonal),
            ("irreducible", report.irreducible),
        ) if not ok]
        raise GenerationError(
            f"axiom stage: {', '.join(failing)} failed"
        )
    return profile

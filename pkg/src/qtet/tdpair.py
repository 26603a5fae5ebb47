"""Tridiagonal pairs: axiom verification, standard orderings, classification.

A tridiagonal pair here is a pair of square matrices A, A* over one exact
field such that both are diagonalizable, each acts tridiagonally on the
ordered eigenspaces of the other, and the two together generate the full
matrix algebra (no common invariant subspace).
"""

from __future__ import annotations

from .errors import DomainError, StructuralError
from .linalg import (
    Decomposition,
    MatrixE,
    Subspace,
    algebra_closure_dim,
    eigenspace,
    minimal_polynomial,
    projector,
)
from .scalars import FieldSpec, Scalar, q_int


class TriPair:
    """An ordered pair of square matrices over one field."""

    __slots__ = ("field", "n", "A", "Astar")

    def __init__(self, A: MatrixE, Astar: MatrixE):
        if not (A.is_square() and Astar.is_square()):
            raise StructuralError("both matrices must be square")
        if A.nrows != Astar.nrows:
            raise StructuralError("matrices must share one size")
        if A.field != Astar.field:
            raise StructuralError("matrices must share one field")
        object.__setattr__(self, "field", A.field)
        object.__setattr__(self, "n", A.nrows)
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "Astar", Astar)

    def __setattr__(self, name, value):
        raise AttributeError("TriPair is immutable")


class PairClass:
    """Classification result: q_geometric, q_mixed with its c, or other."""

    __slots__ = ("kind", "c", "flip_a", "flip_astar", "matches")

    def __init__(self, kind, c=None, flip_a=False, flip_astar=False, matches=()):
        self.kind = kind
        self.c = c
        self.flip_a = flip_a
        self.flip_astar = flip_astar
        self.matches = tuple(matches)

    def __repr__(self):
        if self.kind == "q_mixed":
            return f"<PairClass q_mixed c={self.c}>"
        return f"<PairClass {self.kind}>"


class TDProfile:
    """Diameter, ordered eigenvalues, eigenspaces, and the detected class."""

    __slots__ = ("d", "theta", "theta_star", "V", "Vstar", "pair_class")

    def __init__(self, d, theta, theta_star, V=None, Vstar=None, pair_class=None):
        theta = tuple(theta)
        theta_star = tuple(theta_star)
        if len(theta) != d + 1 or len(theta_star) != d + 1:
            raise StructuralError("need d+1 eigenvalues on each side")
        if len(set(theta)) != d + 1 or len(set(theta_star)) != d + 1:
            raise StructuralError("eigenvalues must be mutually distinct")
        self.d = d
        self.theta = theta
        self.theta_star = theta_star
        self.V = tuple(V) if V is not None else None
        self.Vstar = tuple(Vstar) if Vstar is not None else None
        self.pair_class = pair_class


class AxiomReport:
    """Outcome of the four defining conditions, with failure witnesses."""

    __slots__ = ("diagonalizable", "astar_tridiagonal", "a_tridiagonal",
                 "irreducible", "details")

    def __init__(self, diagonalizable, astar_tridiagonal, a_tridiagonal,
                 irreducible, details):
        self.diagonalizable = diagonalizable
        self.astar_tridiagonal = astar_tridiagonal
        self.a_tridiagonal = a_tridiagonal
        self.irreducible = irreducible
        self.details = details

    @property
    def all_pass(self) -> bool:
        return (self.diagonalizable and self.astar_tridiagonal
                and self.a_tridiagonal and self.irreducible)

    def as_dict(self):
        return {
            "diagonalizable": self.diagonalizable,
            "astar_tridiagonal": self.astar_tridiagonal,
            "a_tridiagonal": self.a_tridiagonal,
            "irreducible": self.irreducible,
            "details": dict(self.details),
        }


# ---------------------------------------------------------------------------
# eigenvalue patterns


def theta_geometric(d: int, field: FieldSpec):
    qv = field.q()
    return [qv ** (2 * i - d) for i in range(d + 1)]


def theta_star_geometric(d: int, field: FieldSpec):
    qv = field.q()
    return [qv ** (d - 2 * i) for i in range(d + 1)]


def theta_star_mixed(d: int, c: Scalar, field: FieldSpec):
    qv = field.q()
    return [qv ** (2 * i - d) + c * qv ** (d - 2 * i) for i in range(d + 1)]


# ---------------------------------------------------------------------------
# axiom verification


def _tridiagonal_on(M: MatrixE, spaces) -> int | None:
    """Index of the first eigenspace M maps outside its neighbors, else None."""
    k = len(spaces)
    for i in range(k):
        hood = spaces[i]
        if i > 0:
            hood = hood.sum(spaces[i - 1])
        if i + 1 < k:
            hood = hood.sum(spaces[i + 1])
        for v in spaces[i].basis:
            if not hood.contains(M.apply(v)):
                return i
    return None


def verify_axioms(pair: TriPair, profile: TDProfile) -> AxiomReport:
    """Check the four defining conditions of a tridiagonal pair.

    Eigenspaces are recomputed from the profile's eigenvalue lists; the
    irreducibility condition is rendered as generated-algebra dimension n^2.
    """
    for t in profile.theta + profile.theta_star:
        if not isinstance(t, Scalar) or t.field != pair.field:
            raise DomainError("profile eigenvalue outside the pair's field")
    n = pair.n
    details = {}

    V = [eigenspace(pair.A, t) for t in profile.theta]
    Vstar = [eigenspace(pair.Astar, t) for t in profile.theta_star]
    sum_a = sum(s.dim for s in V)
    sum_s = sum(s.dim for s in Vstar)
    diagonalizable = sum_a == n and sum_s == n
    if sum_a != n:
        details["diagonalizable"] = f"A eigenspace dimensions sum to {sum_a}, not {n}"
    elif sum_s != n:
        details["diagonalizable"] = f"A* eigenspace dimensions sum to {sum_s}, not {n}"

    bad = _tridiagonal_on(pair.Astar, V)
    astar_tridiagonal = bad is None
    if bad is not None:
        details["astar_tridiagonal"] = (
            f"A* maps eigenspace {bad} of A outside its neighborhood"
        )
    bad = _tridiagonal_on(pair.A, Vstar)
    a_tridiagonal = bad is None
    if bad is not None:
        details["a_tridiagonal"] = (
            f"A maps eigenspace {bad} of A* outside its neighborhood"
        )

    dim = algebra_closure_dim([pair.A, pair.Astar])
    irreducible = dim == n * n
    if not irreducible:
        details["irreducible"] = f"closure dimension {dim} < {n * n}"

    return AxiomReport(diagonalizable, astar_tridiagonal, a_tridiagonal,
                       irreducible, details)


# ---------------------------------------------------------------------------
# standard orderings


def standard_orderings(pair: TriPair, eigenvalues):
    """All orderings of the given eigenspaces of A on which A* acts
    tridiagonally.

    Vertices are the eigenspaces; i and j are adjacent when the projected
    block of A* between them is nonzero in either direction.  An ordering
    exists exactly when this graph is a simple path, and then the path and
    its reversal are the only two.  With one or two eigenspaces every
    ordering qualifies (tridiagonality is vacuous there).
    """
    eigenvalues = list(eigenvalues)
    m = len(eigenvalues)
    spaces = [eigenspace(pair.A, t) for t in eigenvalues]
    if sum(s.dim for s in spaces) != pair.n or any(s.dim == 0 for s in spaces):
        raise DomainError("A is not diagonalizable with the given eigenvalues")
    if m == 1:
        return [[0]]
    if m == 2:
        return [[0, 1], [1, 0]]
    dec = Decomposition(spaces)
    proj = [projector(dec, i) for i in range(m)]
    adj = {i: set() for i in range(m)}
    edges = 0
    for i in range(m):
        for j in range(i + 1, m):
            if not (proj[i] * pair.Astar * proj[j]).is_zero() or not (
                proj[j] * pair.Astar * proj[i]
            ).is_zero():
                adj[i].add(j)
                adj[j].add(i)
                edges += 1
    if edges != m - 1 or any(len(adj[i]) > 2 for i in range(m)):
        return []
    ends = [i for i in range(m) if len(adj[i]) == 1]
    if len(ends) != 2:
        return []
    order = [ends[0]]
    seen = {ends[0]}
    while True:
        nxt = [j for j in adj[order[-1]] if j not in seen]
        if not nxt:
            break
        order.append(nxt[0])
        seen.add(nxt[0])
    if len(order) != m:
        return []
    return [order, order[::-1]]


# ---------------------------------------------------------------------------
# classification


def classify(profile: TDProfile, q: Scalar) -> PairClass:
    """Match the profile's eigenvalue lists against the two named patterns.

    All four orientation combinations (each list may be reversed) are
    tried; every match is recorded and the first one fixes the class.
    q-geometric takes precedence over q-mixed.
    """
    d = profile.d
    field = q.field
    pat_theta = tuple(theta_geometric(d, field))
    pat_star_geo = tuple(theta_star_geometric(d, field))
    qd_inv = q ** (-d)

    matches = []
    seen = set()
    for kind in ("q_geometric", "q_mixed"):
        for flip_a in (False, True):
            th = profile.theta[::-1] if flip_a else profile.theta
            if th != pat_theta:
                continue
            for flip_s in (False, True):
                ts = profile.theta_star[::-1] if flip_s else profile.theta_star
                if kind == "q_geometric":
                    if ts != pat_star_geo:
                        continue
                    c = None
                else:
                    c = (ts[0] - qd_inv) * qd_inv
                    if c.is_zero():
                        continue
                    if ts != tuple(theta_star_mixed(d, c, field)):
                        continue
                key = (kind, c, th, ts)
                if key in seen:
                    continue
                seen.add(key)
                matches.append((kind, c, flip_a, flip_s))

    if not matches:
        return PairClass("other")
    kind, c, fa, fs = matches[0]
    return PairClass(kind, c, fa, fs, matches)


# ---------------------------------------------------------------------------
# profile derivation from a bare pair


def derive_profile(pair: TriPair, max_d: int = 6) -> TDProfile:
    """Recover diameter, eigenvalue lists, and eigenspaces from the matrices.

    Eigenvalues are never root-found: the candidate diameter is scanned and
    the prescribed q-power patterns are tested by exact kernel dimensions.
    For the mixed pattern, c comes out of the minimal polynomial of A*
    linearly, via sum of roots = [d+1](1+c).
    """
    field = pair.field
    qv = field.q()
    n = pair.n

    found = None
    for d in range(0, max_d + 1):
        theta = theta_geometric(d, field)
        V = [eigenspace(pair.A, t) for t in theta]
        if all(s.dim > 0 for s in V) and sum(s.dim for s in V) == n:
            found = (d, theta, V)
            break
    if found is None:
        raise StructuralError(
            f"eigenvalues of A match no q-power pattern with diameter <= {max_d}"
        )
    d, theta, V = found

    theta_star = theta_star_geometric(d, field)
    Vstar = [eigenspace(pair.Astar, t) for t in theta_star]
    if not (all(s.dim > 0 for s in Vstar) and sum(s.dim for s in Vstar) == n):
        # mixed pattern: extract c from the minimal polynomial of A*
        mp = minimal_polynomial(pair.Astar)
        if len(mp) != d + 2:
            raise StructuralError(
                "A* minimal polynomial degree differs from the diameter pattern"
            )
        root_sum = -mp[d]
        c = root_sum / q_int(d + 1, field) - field.one()
        if c.is_zero():
            raise StructuralError("extracted c is zero; mixed pattern needs c != 0")
        theta_star = theta_star_mixed(d, c, field)
        Vstar = [eigenspace(pair.Astar, t) for t in theta_star]
        if not (all(s.dim > 0 for s in Vstar) and sum(s.dim for s in Vstar) == n):
            raise StructuralError("A* matches neither eigenvalue pattern")

    profile = TDProfile(d, theta, theta_star, V, Vstar)
    profile.pair_class = classify(profile, qv)
    return profile

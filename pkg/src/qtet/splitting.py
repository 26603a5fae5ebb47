"""Split decompositions of a tridiagonal pair, their projectors, the
raising and lowering maps, and the zeta sequence.

Two decompositions are computed from the eigenspace lattice:

    U_i = (V*_0 + ... + V*_i)  meet  (V_i + ... + V_d)
    W_i = (V*_0 + ... + V*_i)  meet  (V_0 + ... + V_{d-i})

A shifts U_i up and A* shifts it down after subtracting the matching
eigenvalue; on the W side the A-eigenvalue runs in reverse order.
"""

from __future__ import annotations

from .errors import DomainError, StructuralError
from .linalg import Decomposition, MatrixE, Subspace, eigenspace, projector
from .tdpair import TDProfile, TriPair, theta_geometric


class SplitData:
    """Everything derived from the two split decompositions of one pair."""

    __slots__ = ("pair", "profile", "d", "theta", "theta_star", "U", "W",
                 "F", "G", "R", "L", "r", "l", "zeta", "E", "Etilde")

    def __init__(self, pair, profile, d, theta, theta_star, U, W, F, G,
                 R, L, r, l):
        self.pair = pair
        self.profile = profile
        self.d = d
        self.theta = theta
        self.theta_star = theta_star
        self.U = U
        self.W = W
        self.F = F
        self.G = G
        self.R = R
        self.L = L
        self.r = r
        self.l = l
        self.zeta = None
        self.E = None
        self.Etilde = None


def oriented_profile(pair: TriPair, profile: TDProfile):
    """Eigenvalue lists and eigenspaces in pattern order (theta ascending)."""
    pc = profile.pair_class
    if pc is None or pc.kind not in ("q_geometric", "q_mixed"):
        raise DomainError(
            "split needs a classified pair of q-geometric or q-mixed type; "
            "the classify stage found "
            + (pc.kind if pc is not None else "no class")
        )
    th = list(profile.theta)
    ts = list(profile.theta_star)
    V = (list(profile.V) if profile.V is not None
         else [eigenspace(pair.A, t) for t in th])
    Vs = (list(profile.Vstar) if profile.Vstar is not None
          else [eigenspace(pair.Astar, t) for t in ts])
    if pc.flip_a:
        th.reverse()
        V.reverse()
    if pc.flip_astar:
        ts.reverse()
        Vs.reverse()
    return th, ts, V, Vs


def _accumulate(spaces):
    out = []
    acc = None
    for s in spaces:
        acc = s if acc is None else acc.sum(s)
        out.append(acc)
    return out


def _diag_combination(field, coeffs, projs, n):
    out = MatrixE.zeros(field, n, n)
    for coeff, P in zip(coeffs, projs):
        out = out + P.scale(coeff)
    return out


def compute_split(pair: TriPair, profile: TDProfile) -> SplitData:
    """Build both split decompositions and everything carried by them.

    Raises a structural error naming the first failing containment; such a
    failure means the input is not a tridiagonal pair of the assumed class.
    """
    th, ts, V, Vs = oriented_profile(pair, profile)
    d = profile.d
    n = pair.n
    field = pair.field
    A, Astar = pair.A, pair.Astar

    prefix_star = _accumulate(Vs)
    prefix_v = _accumulate(V)
    suffix_v = _accumulate(V[::-1])[::-1]

    U = [prefix_star[i].intersect(suffix_v[i]) for i in range(d + 1)]
    W = [prefix_star[i].intersect(prefix_v[d - i]) for i in range(d + 1)]

    try:
        U_dec = Decomposition(U)
        W_dec = Decomposition(W)
    except StructuralError as e:
        raise StructuralError(f"split components do not decompose the space: {e}")

    if U[0].dim != 1:
        raise StructuralError(f"dim U_0 = {U[0].dim}, expected 1")
    if U[0] != W[0]:
        raise StructuralError("U_0 and W_0 differ")

    zero = Subspace.zero(field, n)
    ident = MatrixE.identity(field, n)

    def _contain(M, shift, spaces, label, eigs):
        for i in range(d + 1):
            j = i + shift
            target = spaces[j] if 0 <= j <= d else zero
            shifted = M - ident.scale(eigs[i])
            for v in spaces[i].basis:
                if not target.contains(shifted.apply(v)):
                    raise StructuralError(
                        f"({label}) component {i} does not shift into {j}"
                    )

    _contain(A, +1, U, "A - theta_i on U", th)
    _contain(Astar, -1, U, "A* - theta*_i on U", ts)
    _contain(A, +1, W, "A - theta_(d-i) on W", th[::-1])
    _contain(Astar, -1, W, "A* - theta*_i on W", ts)

    # prefix and suffix sum identities tie the splits back to the eigenspaces
    acc_u = _accumulate(U)
    acc_w = _accumulate(W)
    suff_u = _accumulate(U[::-1])[::-1]
    suff_w = _accumulate(W[::-1])[::-1]
    for i in range(d + 1):
        if acc_u[i] != prefix_star[i]:
            raise StructuralError(f"U prefix sum {i} differs from V* prefix sum")
        if acc_w[i] != prefix_star[i]:
            raise StructuralError(f"W prefix sum {i} differs from V* prefix sum")
        if suff_u[i] != suffix_v[i]:
            raise StructuralError(f"U suffix sum {i} differs from V suffix sum")
        if suff_w[i] != prefix_v[d - i]:
            raise StructuralError(f"W suffix sum {i} differs from V prefix sum")

    F = tuple(projector(U_dec, i) for i in range(d + 1))
    G = tuple(projector(W_dec, i) for i in range(d + 1))

    R = A - _diag_combination(field, th, F, n)
    L = Astar - _diag_combination(field, ts, F, n)
    lr = A - _diag_combination(field, th[::-1], G, n)
    ll = Astar - _diag_combination(field, ts, G, n)

    split = SplitData(pair, profile, d, tuple(th), tuple(ts), U_dec, W_dec,
                      F, G, R, L, lr, ll)
    split.zeta = tuple(zeta_sequence(split))
    return split


def zeta_sequence(split: SplitData):
    """Eigenvalues of L^i R^i on the line U_0, checked for exact colinearity."""
    if split.U[0].dim != 1:
        raise DomainError("zeta needs dim U_0 = 1; input not a valid pair")
    u = split.U[0].basis[0]
    pivot = next(k for k, e in enumerate(u) if not e.is_zero())
    out = []
    for i in range(split.d + 1):
        v = u
        for _ in range(i):
            v = split.R.apply(v)
        for _ in range(i):
            v = split.L.apply(v)
        z = v[pivot] / u[pivot]
        for a, b in zip(v, u):
            if a != z * b:
                raise StructuralError(f"L^{i} R^{i} does not act as a scalar on U_0")
        out.append(z)
    return out


def eigen_projectors(pair: TriPair, profile: TDProfile,
                     vtilde_star: Decomposition, atilde: MatrixE):
    """Eigen-projectors of A and of the derived operator, two ways each.

    Both the decomposition route and the product formula

        E_i = prod_{j != i} (A - theta_j I) / (theta_i - theta_j)

    are evaluated; exact agreement is demanded.  The second list uses the
    derived operator with eigenvalue q^(d-2i) on component i of the given
    decomposition.
    """
    th, _, V, _ = oriented_profile(pair, profile)
    d = profile.d
    field = pair.field
    qv = field.q()

    def _both_ways(M, eigs, dec, label):
        made = [projector(dec, i) for i in range(d + 1)]
        ident = MatrixE.identity(field, M.nrows)
        for i in range(d + 1):
            prod = ident
            for j in range(d + 1):
                if j != i:
                    prod = prod * (M - ident.scale(eigs[j]))
                    prod = prod.scale((eigs[i] - eigs[j]).inverse())
            if prod != made[i]:
                raise StructuralError(
                    f"{label} projector {i}: product formula disagrees with "
                    "the decomposition construction"
                )
        return made

    E = _both_ways(pair.A, th, Decomposition(V), "A")
    ts_tilde = [qv ** (d - 2 * i) for i in range(d + 1)]
    Etilde = _both_ways(atilde, ts_tilde, vtilde_star, "derived operator")
    return E, Etilde


def bijection_check(split: SplitData, E, G):
    """Check that G_{d-i} and E_i invert each other between V_i and W_{d-i}."""
    d = split.d
    pair = split.pair
    _, _, V, _ = oriented_profile(pair, split.profile)
    failures = []
    for i in range(d + 1):
        GE = G[d - i] * E[i]
        for v in split.W[d - i].basis:
            if GE.apply(v) != v:
                failures.append(f"G_{d - i} E_{i} is not the identity on W_{d - i}")
                break
        EG = E[i] * G[d - i]
        for v in V[i].basis:
            if EG.apply(v) != v:
                failures.append(f"E_{i} G_{d - i} is not the identity on V_{i}")
                break
        if V[i].dim != split.W[d - i].dim:
            failures.append(f"dim V_{i} != dim W_{d - i}")
    return {"pass": not failures, "failures": failures}


def ei_on_w_series(split: SplitData, i: int):
    """Compare E_i on W_{d-i} with the geometric-style series in r.

    The series is sum_{h=0}^{i} r^h / prod_{k=1}^{h} (theta_i - theta_{i-k})
    with theta_j = q^(2j-d); the h = 0 term is the identity.
    """
    if split.E is None:
        raise DomainError("attach eigen projectors before the series check")
    if not 0 <= i <= split.d:
        raise DomainError("index out of range")
    field = split.pair.field
    n = split.pair.n
    th = theta_geometric(split.d, field)
    series = MatrixE.identity(field, n)
    rpow = MatrixE.identity(field, n)
    denom = field.one()
    for h in range(1, i + 1):
        rpow = rpow * split.r
        denom = denom * (th[i] - th[i - h])
        series = series + rpow.scale(denom.inverse())
    mism = []
    for v in split.W[split.d - i].basis:
        if split.E[i].apply(v) != series.apply(v):
            mism.append(f"series for E_{i} differs on W_{split.d - i}")
            break
    return {"pass": not mism, "failures": mism}

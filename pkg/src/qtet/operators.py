"""Derived operators B, K and their inverses, the normalized operator
obtained from A* and B, and the named relation suite.

B acts as q^(2i-d) on W_i, K acts the same way on U_i.  For a q-mixed pair
the normalized operator is c^{-1}(A* - B); it is diagonalizable with
eigenvalues q^(d-2i) and its eigenspace dimensions repeat those of the W
split.  q-geometric input runs a reduced, c-free subset of the checks.
"""

from __future__ import annotations

from .errors import StructuralError
from .linalg import Decomposition, MatrixE, Subspace, eigenspace
from .scalars import q_binomial, q_factorial, q_int
from .splitting import SplitData, oriented_profile
from .tdpair import TDProfile, TriPair


class OperatorSuite:
    """Derived operators of one split pair; c is None in the geometric case."""

    __slots__ = ("B", "Binv", "K", "Kinv", "Atilde", "Vtilde_star", "c", "kind")

    def __init__(self, B, Binv, K, Kinv, Atilde, Vtilde_star, c, kind):
        self.B = B
        self.Binv = Binv
        self.K = K
        self.Kinv = Kinv
        self.Atilde = Atilde
        self.Vtilde_star = Vtilde_star
        self.c = c
        self.kind = kind


class RelationReport:
    """Ordered map of named checks; each value carries pass/fail and, for
    indexed families, the first failing index."""

    __slots__ = ("checks",)

    def __init__(self):
        self.checks = {}

    def put(self, name, ok, idx=None):
        if name in self.checks:
            raise StructuralError(f"duplicate relation check {name}")
        self.checks[name] = {"pass": bool(ok), "first_failure_index": idx}

    def __getitem__(self, name):
        return self.checks[name]

    def names(self):
        return list(self.checks)

    @property
    def all_pass(self) -> bool:
        return all(v["pass"] for v in self.checks.values())

    def failing(self):
        return [k for k, v in self.checks.items() if not v["pass"]]

    def as_dict(self):
        return {k: dict(v) for k, v in self.checks.items()}


MIXED_CHECKS = (
    "serre_cubic_A",
    "serre_cubic_Astar_c",
    "weyl_A_B",
    "quad_B_Astar",
    "weyl_B_Atilde",
    "atilde_lowers_W",
    "serre_cubic_A_Atilde",
    "serre_cubic_Atilde_A",
    "atilde_tridiagonal_on_V",
    "a_tridiagonal_on_Vtilde",
    "weyl_Kinv_A",
    "quad_K_Astar",
    "BK_lowers_U",
    "astar_shift_lowers_U",
    "weyl_B_Kinv",
    "ladder_lowering_power",
    "ladder_raising_power",
    "binomial_expand_lower",
    "commute_BK_past_AK",
    "r_eq_A_minus_Binv",
    "l_eq_Astar_minus_B_minus_cBinv",
    "B_conj_r",
    "B_conj_l",
    "serre_cubic_r_augmented",
    "serre_cubic_l_augmented",
    "shift_equiv_B_Atilde",
    "shift_equiv_Kinv_A",
    "shift_equiv_A_B",
    "shift_equiv_B_Kinv",
    "shift_equiv_quad_B_Astar",
    "shift_equiv_quad_K_Astar",
    "weyl_eigsum_match",
)

GEOMETRIC_CHECKS = (
    "serre_cubic_A",
    "serre_cubic_Astar_pure",
    "weyl_A_B",
    "weyl_Kinv_A",
    "BK_lowers_U",
    "weyl_B_Kinv",
    "ladder_raising_power",
    "commute_BK_past_AK",
    "r_eq_A_minus_Binv",
    "l_eq_Astar_minus_Binv",
    "B_conj_r",
    "B_conj_l",
    "serre_cubic_r_augmented",
    "serre_cubic_l_augmented",
    "shift_equiv_Kinv_A",
    "shift_equiv_A_B",
    "shift_equiv_B_Kinv",
)


# ---------------------------------------------------------------------------
# suite construction


def _weighted_projector_sum(field, weights, projs, n):
    out = MatrixE.zeros(field, n, n)
    for wgt, P in zip(weights, projs):
        out = out + P.scale(wgt)
    return out


def build_suite(pair: TriPair, profile: TDProfile, split: SplitData) -> OperatorSuite:
    """Assemble B, K, their inverses, and for q-mixed input the normalized
    operator with its eigenspace decomposition."""
    field = pair.field
    n = pair.n
    d = split.d
    qv = field.q()
    kind = profile.pair_class.kind

    up = [qv ** (2 * i - d) for i in range(d + 1)]
    down = [qv ** (d - 2 * i) for i in range(d + 1)]
    B = _weighted_projector_sum(field, up, split.G, n)
    Binv = _weighted_projector_sum(field, down, split.G, n)
    K = _weighted_projector_sum(field, up, split.F, n)
    Kinv = _weighted_projector_sum(field, down, split.F, n)

    ident = MatrixE.identity(field, n)
    if B * Binv != ident or K * Kinv != ident:
        raise StructuralError("projector-built operators fail to invert")
    for i in range(d + 1):
        for v in split.W[i].basis:
            if B.apply(v) != tuple(up[i] * e for e in v):
                raise StructuralError(f"B does not act as q^(2i-d) on W_{i}")

    if kind != "q_mixed":
        return OperatorSuite(B, Binv, K, Kinv, None, None, None, kind)

    c = profile.pair_class.c
    Atilde = (pair.Astar - B).scale(c.inverse())
    spaces = []
    for i in range(d + 1):
        S = eigenspace(Atilde, down[i])
        if S.dim != split.W[i].dim:
            raise StructuralError(
                f"normalized operator eigenspace {i} has dimension {S.dim}, "
                f"expected {split.W[i].dim}"
            )
        spaces.append(S)
    if sum(s.dim for s in spaces) != n:
        raise StructuralError("normalized operator is not diagonalizable")
    if spaces[0] != split.W[0]:
        raise StructuralError("lowest normalized eigenspace differs from W_0")
    return OperatorSuite(B, Binv, K, Kinv, Atilde, Decomposition(spaces), c, kind)


# ---------------------------------------------------------------------------
# generic two-sided eigenspace-shift predicates


def bidiag_down_equiv(X, Y, theta, field):
    """Both sides of: [qXY - q^{-1}YX - (q-q^{-1})I vanishes on V_X(theta)]
    iff (Y - theta^{-1} I) V_X(theta) lies in V_X(q^{-2} theta)."""
    qv = field.q()
    n = X.nrows
    ident = MatrixE.identity(field, n)
    Vx = eigenspace(X, theta)
    expr = qv * (X * Y) - qv ** -1 * (Y * X) - (qv - qv ** -1) * ident
    lhs = all(all(e.is_zero() for e in expr.apply(v)) for v in Vx.basis)
    target = eigenspace(X, qv ** -2 * theta)
    shifted = Y - ident.scale(theta.inverse())
    rhs = all(target.contains(shifted.apply(v)) for v in Vx.basis)
    return lhs, rhs


def bidiag_up_equiv(X, Y, theta, field):
    """Both sides of: [qXY - q^{-1}YX - (q-q^{-1})I vanishes on V_Y(theta)]
    iff (X - theta^{-1} I) V_Y(theta) lies in V_Y(q^2 theta)."""
    qv = field.q()
    n = X.nrows
    ident = MatrixE.identity(field, n)
    Vy = eigenspace(Y, theta)
    expr = qv * (X * Y) - qv ** -1 * (Y * X) - (qv - qv ** -1) * ident
    lhs = all(all(e.is_zero() for e in expr.apply(v)) for v in Vy.basis)
    target = eigenspace(Y, qv ** 2 * theta)
    shifted = X - ident.scale(theta.inverse())
    rhs = all(target.contains(shifted.apply(v)) for v in Vy.basis)
    return lhs, rhs


def bidiag_quad_equiv(X, Y, theta, c, field):
    """Both sides of: [qXY - q^{-1}YX - (q-q^{-1})(X^2 + cI) vanishes on
    V_X(theta)] iff (Y - theta I - c theta^{-1} I) V_X(theta) lies in
    V_X(q^{-2} theta)."""
    qv = field.q()
    n = X.nrows
    ident = MatrixE.identity(field, n)
    Vx = eigenspace(X, theta)
    expr = (qv * (X * Y) - qv ** -1 * (Y * X)
            - (qv - qv ** -1) * (X * X + ident.scale(c)))
    lhs = all(all(e.is_zero() for e in expr.apply(v)) for v in Vx.basis)
    target = eigenspace(X, qv ** -2 * theta)
    shifted = Y - ident.scale(theta + c * theta.inverse())
    rhs = all(target.contains(shifted.apply(v)) for v in Vx.basis)
    return lhs, rhs


# ---------------------------------------------------------------------------
# relation suite


def _powers(M, top):
    out = [MatrixE.identity(M.field, M.nrows)]
    for _ in range(top):
        out.append(out[-1] * M)
    return out


def _serre(X, Y, three):
    X2 = X * X
    X3 = X2 * X
    return X3 * Y - three * (X2 * (Y * X)) + three * (X * (Y * X2)) - Y * X3


def _lower_family(M, spaces, eigs, d, field):
    """First i where (M - eigs[i] I) spaces[i] leaves spaces[i-1], else None.

    eigs=None means M already lowers without an eigenvalue shift.
    """
    n = M.nrows
    ident = MatrixE.identity(field, n)
    zero = Subspace.zero(field, n)
    for i in range(d + 1):
        target = spaces[i - 1] if i >= 1 else zero
        shifted = M if eigs is None else M - ident.scale(eigs[i])
        for v in spaces[i].basis:
            if not target.contains(shifted.apply(v)):
                return i
    return None


def _tridiag_family(M, spaces, d):
    for i in range(d + 1):
        hood = spaces[i]
        if i > 0:
            hood = hood.sum(spaces[i - 1])
        if i + 1 <= d:
            hood = hood.sum(spaces[i + 1])
        for v in spaces[i].basis:
            if not hood.contains(M.apply(v)):
                return i
    return None


def relation_report(pair: TriPair, profile: TDProfile, split: SplitData,
                    suite: OperatorSuite) -> RelationReport:
    """Evaluate every named identity for the pair's class, exactly.

    All matrix identities are zero-residual equalities; subspace families
    record the first failing index.  The equivalence checks confirm that
    the vanishing statement and the eigenspace-shift statement agree in
    both directions for each concrete operator pair and eigenvalue.
    """
    field = pair.field
    n = pair.n
    d = split.d
    qv = field.q()
    ident = MatrixE.identity(field, n)
    A, Astar = pair.A, pair.Astar
    B, Binv, K, Kinv = suite.B, suite.Binv, suite.K, suite.Kinv
    three = q_int(3, field)
    mixed = suite.kind == "q_mixed"

    rep = RelationReport()

    def zero_check(name, M):
        rep.put(name, M.is_zero())

    def family(name, first_bad):
        rep.put(name, first_bad is None, first_bad)

    U = [split.U[i] for i in range(d + 1)]
    W = [split.W[i] for i in range(d + 1)]
    _, _, V, _ = oriented_profile(pair, profile)
    up = [qv ** (2 * i - d) for i in range(d + 1)]
    down = [qv ** (d - 2 * i) for i in range(d + 1)]

    AK = _powers(A - K, d + 1)
    BK = _powers(B - K, d + 1)

    zero_check("serre_cubic_A", _serre(A, Astar, three))
    if mixed:
        c = suite.c
        Atilde = suite.Atilde
        Vt = list(suite.Vtilde_star.subspaces)
        comm = Astar * A - A * Astar
        zero_check(
            "serre_cubic_Astar_c",
            _serre(Astar, A, three) + comm.scale(c * (qv ** 2 - qv ** -2) ** 2),
        )
    else:
        zero_check("serre_cubic_Astar_pure", _serre(Astar, A, three))

    zero_check("weyl_A_B", qv * (A * B) - qv ** -1 * (B * A)
               - (qv - qv ** -1) * ident)
    if mixed:
        zero_check("quad_B_Astar", qv * (B * Astar) - qv ** -1 * (Astar * B)
                   - (qv - qv ** -1) * (B * B + ident.scale(c)))
        zero_check("weyl_B_Atilde", qv * (B * Atilde) - qv ** -1 * (Atilde * B)
                   - (qv - qv ** -1) * ident)
        family("atilde_lowers_W", _lower_family(Atilde, W, down, d, field))
        zero_check("serre_cubic_A_Atilde", _serre(A, Atilde, three))
        zero_check("serre_cubic_Atilde_A", _serre(Atilde, A, three))
        family("atilde_tridiagonal_on_V", _tridiag_family(Atilde, V, d))
        family("a_tridiagonal_on_Vtilde", _tridiag_family(A, Vt, d))

    zero_check("weyl_Kinv_A", qv * (Kinv * A) - qv ** -1 * (A * Kinv)
               - (qv - qv ** -1) * ident)
    if mixed:
        zero_check("quad_K_Astar", qv * (K * Astar) - qv ** -1 * (Astar * K)
                   - (qv - qv ** -1) * (K * K + ident.scale(c)))

    family("BK_lowers_U", _lower_family(B - K, U, None, d, field))
    if mixed:
        S1 = Astar - K - Kinv.scale(c)
        family("astar_shift_lowers_U", _lower_family(S1, U, None, d, field))

    zero_check("weyl_B_Kinv", qv * (B * Kinv) - qv ** -1 * (Kinv * B)
               - (qv - qv ** -1) * ident)

    if mixed:
        ok, bad = True, None
        for j in range(1, d + 1):
            residual = (qv ** j * (BK[j] * S1) - qv ** -j * (S1 * BK[j])
                        - (qv ** j - qv ** -j) * BK[j + 1])
            if not residual.is_zero():
                ok, bad = False, j
                break
        rep.put("ladder_lowering_power", ok, bad)

    ok, bad = True, None
    K2 = K * K
    for j in range(1, d + 1):
        residual = (qv ** j * (AK[j] * BK[1]) - qv ** -j * (BK[1] * AK[j])
                    + (qv ** j - qv ** -j)
                    * ((K2.scale(qv ** (2 - 2 * j)) - ident) * AK[j - 1]))
        if not residual.is_zero():
            ok, bad = False, j
            break
    rep.put("ladder_raising_power", ok, bad)

    if mixed:
        S2 = Astar - B - Kinv.scale(c)
        S1_pows = _powers(S1, d)
        S2_pows = _powers(S2, d)
        ok, bad = True, None
        for i in range(0, d + 1):
            total = MatrixE.zeros(field, n, n)
            for j in range(0, i + 1):
                coeff = (qv ** (j - j * i)) * q_binomial(i, j, field)
                if j % 2:
                    coeff = -coeff
                total = total + coeff * (S1_pows[i - j] * BK[j])
            if S2_pows[i] != total:
                ok, bad = False, i
                break
        rep.put("binomial_expand_lower", ok, bad)

    ok, bad = True, None
    qq = qv - qv ** -1
    for i in range(1, d + 1):
        for j in range(1, i + 1):
            total = MatrixE.zeros(field, n, n)
            for h in range(0, j + 1):
                expo = (h * (3 * h - 1)) // 2 + h * j - 3 * h * i + 2 * i * j
                coeff = (qv ** expo * q_binomial(i, h, field)
                         * q_factorial(h, field) * qq ** h
                         * q_binomial(j, h, field))
                fmat = ident
                for s in range(h):
                    fmat = fmat * (K2 - ident.scale(qv ** (2 * i - 2 * s - 2 * j)))
                total = total + coeff * (fmat * (AK[i - h] * BK[j - h]))
            if BK[j] * AK[i] != total:
                ok, bad = False, [i, j]
                break
        if not ok:
            break
    rep.put("commute_BK_past_AK", ok, bad)

    rep.put("r_eq_A_minus_Binv", split.r == A - Binv)
    if mixed:
        rep.put("l_eq_Astar_minus_B_minus_cBinv",
                split.l == Astar - B - Binv.scale(c))
    else:
        rep.put("l_eq_Astar_minus_Binv", split.l == Astar - Binv)

    zero_check("B_conj_r", B * split.r - qv ** 2 * (split.r * B))
    zero_check("B_conj_l", B * split.l - qv ** -2 * (split.l * B))

    # the module constant of the augmented cubic relations: with the
    # lowering map taken as l itself the constant picks up a factor c,
    # since l scales linearly in c while r and B do not
    rr, ll = split.r, split.l
    gamma = qv ** -4 * qq ** 3 * q_factorial(3, field)
    if mixed:
        gamma = c * gamma
    B2inv = Binv * Binv
    zero_check("serre_cubic_r_augmented",
               _serre(rr, ll, three) - gamma * ((rr * rr) * B2inv))
    lhs = ((rr * (ll * (ll * ll)))
           - three * (ll * (rr * (ll * ll)))
           + three * ((ll * ll) * (rr * ll))
           - (ll * (ll * ll)) * rr)
    zero_check("serre_cubic_l_augmented",
               lhs - gamma * (B2inv * (ll * ll)))

    def equiv_family(name, fn, M1, M2, eigs, extra=None):
        ok, bad = True, None
        for i in range(d + 1):
            if extra is None:
                lhs, rhs = fn(M1, M2, eigs[i], field)
            else:
                lhs, rhs = fn(M1, M2, eigs[i], extra, field)
            if lhs != rhs:
                ok, bad = False, i
                break
        rep.put(name, ok, bad)

    if mixed:
        equiv_family("shift_equiv_B_Atilde", bidiag_down_equiv, B, Atilde, up)
    equiv_family("shift_equiv_Kinv_A", bidiag_down_equiv, Kinv, A, down)
    equiv_family("shift_equiv_A_B", bidiag_up_equiv, A, B, up)
    equiv_family("shift_equiv_B_Kinv", bidiag_up_equiv, B, Kinv, down)
    if mixed:
        equiv_family("shift_equiv_quad_B_Astar", bidiag_quad_equiv, B, Astar,
                     up, extra=c)
        equiv_family("shift_equiv_quad_K_Astar", bidiag_quad_equiv, K, Astar,
                     up, extra=c)

        ok, bad = True, None
        acc_w = None
        acc_t = None
        for i in range(d + 1):
            acc_w = W[i] if acc_w is None else acc_w.sum(W[i])
            acc_t = Vt[i] if acc_t is None else acc_t.sum(Vt[i])
            if acc_w != acc_t:
                ok, bad = False, i
                break
        rep.put("weyl_eigsum_match", ok, bad)

    expected = MIXED_CHECKS if mixed else GEOMETRIC_CHECKS
    missing = [nm for nm in expected if nm not in rep.checks]
    extra_names = [nm for nm in rep.checks if nm not in expected]
    if missing or extra_names:
        raise StructuralError(
            f"relation suite mismatch: missing {missing}, unexpected {extra_names}"
        )
    return rep

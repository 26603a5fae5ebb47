"""Eight-generator module construction and its relation checks.

The generators live on indices ij with j - i in {1, 2} mod 4.  Each one is
assembled from an eigenspace table: component n (eigenvalue q^(2n-d)) is an
intersection of prefix/suffix sums of the A-eigenspaces and the eigenspaces
of the normalized operator.  The defining relations are 4 inverse laws,
12 q-Weyl laws, and 4 cubic q-Serre laws.
"""

from __future__ import annotations

from .errors import DomainError, StructuralError
from .linalg import Decomposition, MatrixE, algebra_closure_dim, eigenspace, projector
from .operators import OperatorSuite
from .scalars import q_int
from .splitting import SplitData, oriented_profile
from .tdpair import TDProfile, TriPair, derive_profile

GENERATOR_NAMES = ("x01", "x12", "x23", "x30", "x02", "x20", "x13", "x31")


class BoxtimesAction:
    """The eight generator matrices of one constructed module."""

    __slots__ = ("d", "epsilon", "field", "n", "x01", "x12", "x23", "x30",
                 "x02", "x20", "x13", "x31")

    def __init__(self, d, epsilon, field, n, generators):
        self.d = d
        self.epsilon = epsilon
        self.field = field
        self.n = n
        for name in GENERATOR_NAMES:
            setattr(self, name, generators[name])

    def generator(self, i: int, j: int) -> MatrixE:
        return getattr(self, f"x{i % 4}{j % 4}")

    def as_dict(self):
        return {
            "d": self.d,
            "type": self.epsilon,
            "generators": {
                name: [[str(e) for e in row] for row in getattr(self, name).rows]
                for name in GENERATOR_NAMES
            },
        }


def construct_action(pair: TriPair, profile: TDProfile, split: SplitData,
                     suite: OperatorSuite) -> BoxtimesAction:
    """Build all eight generators from the eigenspace table.

    Component n of each generator carries eigenvalue q^(2n-d).  A table row
    whose subspaces fail to decompose the whole space signals that the
    existence criterion does not hold (or that earlier data is corrupt).
    """
    if suite.Atilde is None:
        raise DomainError("construction needs the q-mixed normalized operator")
    field = pair.field
    d = split.d
    qv = field.q()
    _, _, V, _ = oriented_profile(pair, profile)
    Vt = [suite.Vtilde_star[i] for i in range(d + 1)]

    def acc(spaces):
        pre = []
        run = None
        for s in spaces:
            run = s if run is None else run.sum(s)
            pre.append(run)
        return pre

    V_pre = acc(V)
    V_suf = acc(V[::-1])[::-1]
    Vt_pre = acc(Vt)
    Vt_suf = acc(Vt[::-1])[::-1]

    table = {
        "x01": lambda n: V[n],
        "x23": lambda n: Vt[d - n],
        "x30": lambda n: Vt_pre[n].intersect(V_pre[d - n]),
        "x12": lambda n: Vt_suf[n].intersect(V_suf[d - n]),
        "x31": lambda n: Vt_pre[n].intersect(V_suf[n]),
        "x13": lambda n: Vt_pre[d - n].intersect(V_suf[d - n]),
        "x20": lambda n: Vt_suf[d - n].intersect(V_pre[d - n]),
        "x02": lambda n: Vt_suf[n].intersect(V_pre[n]),
    }

    generators = {}
    for name, row in table.items():
        spaces = [row(n) for n in range(d + 1)]
        try:
            dec = Decomposition(spaces)
        except (DomainError, StructuralError) as exc:
            raise StructuralError(
                f"table row for {name} does not decompose the space: {exc}"
            ) from exc
        M = MatrixE.zeros(field, pair.n, pair.n)
        for n in range(d + 1):
            M = M + projector(dec, n).scale(qv ** (2 * n - d))
        generators[name] = M

    return BoxtimesAction(d, 1, field, pair.n, generators)


def verify_boxtimes(action: BoxtimesAction):
    """Check all twenty defining relations plus the type-1 eigenvalue
    structure and irreducibility of the generated matrix algebra."""
    field = action.field
    qv = field.q()
    ident = MatrixE.identity(field, action.n)
    three = q_int(3, field)
    relations = {}

    for (i, j) in ((0, 2), (2, 0), (1, 3), (3, 1)):
        name = f"inverse_x{i}{j}_x{j}{i}"
        lhs = action.generator(i, j) * action.generator(j, i)
        relations[name] = lhs == ident

    weyl_patterns = ((1, 1), (1, 2), (2, 1))
    for (di, dj) in weyl_patterns:
        for h in range(4):
            i = (h + di) % 4
            j = (i + dj) % 4
            xij = action.generator(i, j)
            xhi = action.generator(h, i)
            name = f"weyl_x{i}{j}_x{h}{i}"
            residual = (qv * (xij * xhi) - qv ** -1 * (xhi * xij)
                        - (qv - qv ** -1) * ident)
            relations[name] = residual.is_zero()

    for h in range(4):
        i = (h + 1) % 4
        j = (h + 2) % 4
        k = (h + 3) % 4
        X = action.generator(h, i)
        Y = action.generator(j, k)
        name = f"serre_x{h}{i}_x{j}{k}"
        X2 = X * X
        X3 = X2 * X
        residual = (X3 * Y - three * (X2 * (Y * X)) + three * (X * (Y * X2))
                    - Y * X3)
        relations[name] = residual.is_zero()

    type_ok = True
    eps = field.from_int(action.epsilon)
    for name in GENERATOR_NAMES:
        M = getattr(action, name)
        dims = [eigenspace(M, eps * qv ** (2 * n - action.d)).dim
                for n in range(action.d + 1)]
        if any(dim == 0 for dim in dims) or sum(dims) != action.n:
            type_ok = False
            break

    closure = algebra_closure_dim([getattr(action, nm) for nm in GENERATOR_NAMES])
    irreducible = closure == action.n * action.n

    ok = all(relations.values()) and type_ok and irreducible
    return {
        "pass": ok,
        "relations": relations,
        "type_1_eigenvalues": type_ok,
        "irreducible": irreducible,
        "closure_dim": closure,
    }


def identify_generators(action: BoxtimesAction, pair: TriPair,
                        suite: OperatorSuite):
    """Match the constructed generators against the pair's own operators.

    Beyond the five matrix identities and the recombination of A*, the
    prefix sums of the dual eigenspaces must coincide with those of the
    normalized operator's eigenspaces."""
    checks = {
        "x01_is_A": action.x01 == pair.A,
        "x30_is_B": action.x30 == suite.B,
        "x23_is_normalized_operator": action.x23 == suite.Atilde,
        "x31_is_K": action.x31 == suite.K,
        "x13_is_K_inverse": action.x13 == suite.Kinv,
        "astar_recombines": action.x30 + action.x23.scale(suite.c) == pair.Astar,
    }

    profile = derive_profile(pair, max_d=action.d)
    _, _, _, Vs = oriented_profile(pair, profile)
    ok = True
    run_dual = None
    run_tilde = None
    for i in range(action.d + 1):
        run_dual = Vs[i] if run_dual is None else run_dual.sum(Vs[i])
        s = suite.Vtilde_star[i]
        run_tilde = s if run_tilde is None else run_tilde.sum(s)
        if run_dual != run_tilde:
            ok = False
            break
    checks["dual_prefix_sums_match"] = ok
    checks["pass"] = all(checks.values())
    return checks

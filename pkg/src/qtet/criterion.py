"""The criterion polynomial P and the existence decision.

P(lambda) = sum_i q^(i(1-i)) zeta_i lambda^i / [i]!^2 is evaluated at
lambda* = q^(2d-2) (q - q^{-1})^{-2}.  Nonvanishing there is equivalent to
V being irreducible as a module for the pair (A, normalized operator), and
to that pair being q-geometric; when it holds the eight-generator action
exists and is assembled by the construction module.
"""

from __future__ import annotations

from .boxtimes import construct_action
from .errors import DomainError, StructuralError
from .linalg import algebra_closure_dim
from .operators import build_suite, relation_report
from .scalars import FieldSpec, Scalar, q_factorial
from .splitting import SplitData, compute_split, eigen_projectors
from .tdpair import TriPair, derive_profile, verify_axioms


class CriterionResult:
    """P's exact coefficients and, once evaluated, the verdict."""

    __slots__ = ("d", "field", "zeta", "P_coeffs", "lambda_star",
                 "P_at_lambda_star", "exists_module")

    def __init__(self, d, field, zeta, P_coeffs):
        self.d = d
        self.field = field
        self.zeta = tuple(zeta)
        self.P_coeffs = tuple(P_coeffs)
        self.lambda_star = None
        self.P_at_lambda_star = None
        self.exists_module = None


def build_P(zeta, d: int, field: FieldSpec) -> CriterionResult:
    if len(zeta) != d + 1:
        raise DomainError(f"need d+1 = {d + 1} zeta values, got {len(zeta)}")
    if not (zeta[0] - field.one()).is_zero():
        raise DomainError("zeta_0 must equal 1")
    qv = field.q()
    coeffs = []
    for i in range(d + 1):
        fact = q_factorial(i, field)
        coeffs.append(qv ** (i * (1 - i)) * zeta[i] / (fact * fact))
    return CriterionResult(d, field, zeta, coeffs)


def evaluate_criterion(res: CriterionResult) -> CriterionResult:
    field = res.field
    qv = field.q()
    lam = qv ** (2 * res.d - 2) * ((qv - qv ** -1) ** 2).inverse()
    value = field.zero()
    power = field.one()
    for coeff in res.P_coeffs:
        value = value + coeff * power
        power = power * lam
    res.lambda_star = lam
    res.P_at_lambda_star = value
    res.exists_module = not value.is_zero()
    return res


def pv_formula_check(pair: TriPair, split: SplitData, suite, res: CriterionResult):
    """Compare the projector product with the closed scalar form.

    The composition (lowest normalized projector) o (top A-projector),
    applied to a basis vector u of U_0, must equal
    c^{-d} q^(2d(1-d)) P(lambda*) u exactly.
    """
    if suite.Atilde is None:
        raise DomainError("the projector comparison needs a q-mixed pair")
    if res.P_at_lambda_star is None:
        res = evaluate_criterion(res)
    d = split.d
    field = pair.field
    qv = field.q()
    if split.E is None or split.Etilde is None:
        E, Etilde = eigen_projectors(pair, split.profile, suite.Vtilde_star,
                                     suite.Atilde)
        split.E = E
        split.Etilde = Etilde
    u = split.U[0].basis[0]
    lhs = split.Etilde[0].apply(split.E[d].apply(u))
    scalar = (suite.c.inverse() ** d) * qv ** (2 * d * (1 - d)) * res.P_at_lambda_star
    rhs = tuple(scalar * e for e in u)
    return {
        "pass": lhs == rhs,
        "projector_path": [str(e) for e in lhs],
        "scalar_path": [str(e) for e in rhs],
        "scalar": str(scalar),
    }


class DecisionRecord:
    """Everything the pipeline learned about one q-mixed pair."""

    __slots__ = ("d", "c", "zeta", "criterion", "exists", "closure_dim",
                 "checks", "action", "profile", "split", "suite")

    def __init__(self, d, c, zeta, criterion, exists, closure_dim, checks,
                 action, profile, split, suite):
        self.d = d
        self.c = c
        self.zeta = zeta
        self.criterion = criterion
        self.exists = exists
        self.closure_dim = closure_dim
        self.checks = checks
        self.action = action
        self.profile = profile
        self.split = split
        self.suite = suite

    def as_dict(self):
        res = self.criterion
        return {
            "d": self.d,
            "c": str(self.c),
            "zeta": [str(z) for z in self.zeta],
            "P_coeffs": [str(a) for a in res.P_coeffs],
            "lambda_star": str(res.lambda_star),
            "P_value": str(res.P_at_lambda_star),
            "exists": self.exists,
            "closure_dim": self.closure_dim,
            "checks": dict(self.checks),
        }


def _stage(name, fn, *args, **kwargs):
    try:
        return fn(*args, **kwargs)
    except (DomainError, StructuralError) as exc:
        raise type(exc)(f"{name} stage: {exc}") from exc


def decide(pair: TriPair, with_action: bool = True,
           max_d: int = 6) -> DecisionRecord:
    """Run profile, split, operator suite, zeta, P, and the cross-checks.

    The closure dimension of the algebra generated by A and the normalized
    operator must be n^2 exactly when P(lambda*) is nonzero; when the
    criterion holds, (A, normalized operator) must verify as a q-geometric
    tridiagonal pair and the eight-generator action is attached.
    """
    profile = _stage("classify", derive_profile, pair, max_d=max_d)
    if profile.pair_class.kind != "q_mixed":
        raise DomainError(
            "classify stage: decision requires a q-mixed pair, found "
            + profile.pair_class.kind
        )
    axioms = _stage("verify", verify_axioms, pair, profile)
    if not axioms.all_pass:
        raise StructuralError("verify stage: input fails the defining axioms")

    split = _stage("split", compute_split, pair, profile)
    suite = _stage("suite", build_suite, pair, profile, split)
    zeta = split.zeta
    res = _stage("criterion", build_P, zeta, split.d, pair.field)
    res = evaluate_criterion(res)

    pv = _stage("criterion", pv_formula_check, pair, split, suite, res)

    closure = _stage("criterion", algebra_closure_dim, [pair.A, suite.Atilde])
    equiv_ok = (closure == pair.n * pair.n) == res.exists_module
    if not equiv_ok:
        raise StructuralError(
            "criterion stage: closure dimension and P(lambda*) disagree; "
            f"closure {closure} vs n^2 {pair.n * pair.n}, "
            f"P value {res.P_at_lambda_star}"
        )

    checks = {
        "axioms": axioms.all_pass,
        "pv_formula": pv["pass"],
        "closure_equivalence": equiv_ok,
    }

    derived_geometric = None
    action = None
    if res.exists_module:
        derived = TriPair(pair.A, suite.Atilde)
        dprof = _stage("criterion", derive_profile, derived, max_d=max_d)
        derived_geometric = (dprof.pair_class.kind == "q_geometric"
                            and verify_axioms(derived, dprof).all_pass)
        if not derived_geometric:
            raise StructuralError(
                "criterion stage: criterion holds but the derived pair "
                "is not q-geometric"
            )
        checks["derived_pair_geometric"] = derived_geometric
        if with_action:
            action = _stage("construct", construct_action, pair, profile,
                            split, suite)

    return DecisionRecord(
        d=split.d,
        c=suite.c,
        zeta=zeta,
        criterion=res,
        exists=res.exists_module,
        closure_dim=closure,
        checks=checks,
        action=action,
        profile=profile,
        split=split,
        suite=suite,
    )

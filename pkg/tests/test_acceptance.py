"""Acceptance gate: ten end-to-end checks, every one exact (zero tolerance).

Six parametrized cases in this file fail by design and are left failing:

* five cells of the (d, c) grid in the round-trip check ask for c = q^(2m)
  with |m| < d; that value makes two eigenvalues of the derived dual matrix
  coincide, so no pair of the requested class exists and the generator
  refuses.  The cells are (1,1), (2,1), (3,1), (2,q^2), (3,q^2).
* the rewriting check pinned to alpha = q^-4 (q-q^-1)^3 [3]! cannot pass:
  on a pair with parameter c the augmented cubic relations produce that
  constant scaled by c, and the d = 2 instance the check runs on cannot
  have c = 1 (that value is one of the collisions above), so the factor
  never cancels.

Companion tests cover the same machinery with parameter values that avoid
the collisions and with the constant the relations actually produce.
"""
from __future__ import annotations

import time

import pytest

from qtet import (
    ExactError,
    GenerationError,
    GenSpec,
    MatrixE,
    TriPair,
    all_words,
    bijection_check,
    build_P,
    build_suite,
    compute_split,
    decide,
    derive_profile,
    derive_qmixed,
    ei_on_w_series,
    enumerate_irreducible,
    evaluate_criterion,
    generate_qgeometric,
    graded_split,
    identify_generators,
    is_reducible,
    pv_formula_check,
    q_binomial,
    q_factorial,
    relation_report,
    rho_verify,
    verify_axioms,
    verify_boxtimes,
)

from conftest import SYM

# symbolic generation re-runs its internal axiom gate on every call, so
# every expensive object is built once per module and shared read-only
_GEO: dict = {}
_GEO_CTX: dict = {}
_ROUND: dict = {}

_C = {
    "1": lambda f: f.one(),
    "2": lambda f: f.from_int(2),
    "q^2": lambda f: f.q() ** 2,
    "3": lambda f: f.from_int(3),
    "2q^2": lambda f: f.from_int(2) * f.q() ** 2,
}

_GRID = [(d, c) for d in range(4) for c in ("1", "2", "q^2")]
_ACHIEVABLE = [(0, "1"), (0, "2"), (0, "q^2"), (1, "2"), (1, "q^2"),
               (2, "2"), (3, "2")]
_EXTRA = [(d, c) for d in range(3) for c in ("3", "2q^2")]


def _ids(cells):
    return [f"d{d}-c{c}" for d, c in cells]


def _geo(d: int) -> TriPair:
    if d not in _GEO:
        _GEO[d] = generate_qgeometric(GenSpec(d, "q_geometric", SYM))
    return _GEO[d]


def _geo_ctx(d: int):
    if d not in _GEO_CTX:
        pair = _geo(d)
        profile = derive_profile(pair)
        split = compute_split(pair, profile)
        suite = build_suite(pair, profile, split)
        _GEO_CTX[d] = (pair, profile, split, suite)
    return _GEO_CTX[d]


def _roundtrip(d: int, label: str):
    key = (d, label)
    if key not in _ROUND:
        try:
            mixed = derive_qmixed(_geo(d), _C[label](SYM))
            _ROUND[key] = decide(mixed)
        except GenerationError as exc:
            _ROUND[key] = exc
    hit = _ROUND[key]
    if isinstance(hit, GenerationError):
        raise hit
    return hit


# ---------------------------------------------------------------------------
# 1. q-combinatorics


def test_a01_q_pascal_identities():
    # the two dual weightings of the q-Pascal rule for the balanced
    # q-binomial
    start = time.monotonic()
    qv = SYM.q()
    for n in range(1, 13):
        for m in range(1, n):
            whole = q_binomial(n, m, SYM)
            left = q_binomial(n - 1, m, SYM)
            down = q_binomial(n - 1, m - 1, SYM)
            assert whole == qv ** m * left + qv ** (m - n) * down
            assert whole == qv ** -m * left + qv ** (n - m) * down
    assert time.monotonic() - start < 1.0


# ---------------------------------------------------------------------------
# 2. word combinatorics


def _runs_of(w: str):
    runs = []
    prev = None
    for ch in w:
        if ch == prev:
            runs[-1] += 1
        else:
            runs.append(1)
            prev = ch
    return runs


def _interior_dip(runs) -> bool:
    return any(runs[k - 1] >= runs[k] < runs[k + 1]
               for k in range(1, len(runs) - 1))


def _rise_then_fall(runs) -> bool:
    k = 0
    while k + 1 < len(runs) and runs[k] < runs[k + 1]:
        k += 1
    return all(runs[j] >= runs[j + 1] for j in range(k, len(runs) - 1))


def test_a02_word_reducibility():
    start = time.monotonic()
    for n in range(4):
        assert enumerate_irreducible(n) == all_words(n)
    assert [w for w in all_words(4) if is_reducible(w)] == ["xyxx", "yxyy"]
    # both descriptions of the class are written out locally so the library
    # is checked against independent oracles, not against itself
    for n in range(13):
        for w in all_words(n):
            runs = _runs_of(w)
            assert _interior_dip(runs) == (not _rise_then_fall(runs)) \
                == is_reducible(w)
    assert time.monotonic() - start < 10.0


# ---------------------------------------------------------------------------
# 3. graded split of the free algebra


def test_a03_graded_split_dimensions():
    start = time.monotonic()
    for n in range(4):
        omega, lam = graded_split(n, SYM)
        assert lam == []
        assert len(omega) == 2 ** n
    omega, lam = graded_split(4, SYM)
    assert len(omega) == 14
    assert len(lam) == 2
    for n in range(9):
        omega, lam = graded_split(n, SYM)
        assert len(omega) + len(lam) == 2 ** n
    assert time.monotonic() - start < 60.0


# ---------------------------------------------------------------------------
# 4. rewriting soundness under the representation


def test_a04_rewriting_at_the_pinned_constant():
    # Pinned to alpha = q^-4 (q-q^-1)^3 [3]! with no factor c.  On a pair
    # with parameter c the augmented cubic relations produce c * alpha, and
    # the d = 2 instance here has c = 2 (c = 1 would collide two dual
    # eigenvalues, so no instance can make the factor disappear).  The
    # check is kept at the pinned constant deliberately and fails; the
    # companion test below runs the identical corpus at the produced
    # constant.
    rec = _roundtrip(2, "2")
    qv = SYM.q()
    gamma = qv ** -4 * (qv - qv ** -1) ** 3 * q_factorial(3, SYM)
    report = rho_verify(rec.split, rec.suite, rec.c, alpha=gamma)
    bad_relations = [k for k, v in report["relations"].items() if not v]
    assert report["pass"], (
        "rho(w z^j) != rho(reduce(w z^j)) at the pinned constant; "
        f"failing relations {bad_relations}, "
        f"{len(report['corpus_failures'])} of {report['corpus_size']} "
        "corpus entries differ; the relations hold at c times the constant"
    )


def test_a04_rewriting_at_the_produced_constant():
    rec = _roundtrip(2, "2")
    report = rho_verify(rec.split, rec.suite, rec.c)
    assert report["corpus_size"] == 381
    assert all(report["relations"].values())
    assert report["corpus_failures"] == []
    assert report["pass"] is True


# ---------------------------------------------------------------------------
# 5. round trip: generate, derive, decide, identify


@pytest.mark.parametrize(("d", "label"), _GRID, ids=_ids(_GRID))
def test_a05_round_trip_existence_and_identification(d, label):
    # five cells raise GenerationError: c = q^(2m) with |m| < d collides
    # two dual eigenvalues and no pair of the class exists (see the module
    # docstring); those cells fail here and stay failing
    rec = _roundtrip(d, label)
    assert rec.exists is True
    checks = identify_generators(rec.action, rec.split.pair, rec.suite)
    for key in ("x01_is_A", "x30_is_B", "x23_is_normalized_operator",
                "x31_is_K", "x13_is_K_inverse", "astar_recombines"):
        assert checks[key] is True, key
    assert checks["pass"] is True


@pytest.mark.parametrize(("d", "label"), _EXTRA, ids=_ids(_EXTRA))
def test_a05_round_trip_off_grid_parameters(d, label):
    # same statement on collision-free parameter values, so every diameter
    # covered by the grid's reachable cells is also exercised with two
    # further c values
    rec = _roundtrip(d, label)
    assert rec.exists is True
    assert identify_generators(rec.action, rec.split.pair, rec.suite)["pass"]


# ---------------------------------------------------------------------------
# 6. the twenty defining relations of the eight-generator action


@pytest.mark.parametrize(("d", "label"), _ACHIEVABLE, ids=_ids(_ACHIEVABLE))
def test_a06_action_relations(d, label):
    rec = _roundtrip(d, label)
    report = verify_boxtimes(rec.action)
    assert len(report["relations"]) == 20
    assert all(report["relations"].values()), report["relations"]
    assert report["type_1_eigenvalues"] is True
    assert report["irreducible"] is True
    assert report["closure_dim"] == rec.split.pair.n ** 2
    assert report["pass"] is True


# ---------------------------------------------------------------------------
# 7. projector product against the closed scalar form


@pytest.mark.parametrize(("d", "label"), _ACHIEVABLE, ids=_ids(_ACHIEVABLE))
def test_a07_projector_scalar_cross_check(d, label):
    rec = _roundtrip(d, label)
    report = pv_formula_check(rec.split.pair, rec.split, rec.suite,
                              rec.criterion)
    assert report["projector_path"] == report["scalar_path"]
    assert report["pass"] is True
    assert rec.checks["pv_formula"] is True


# ---------------------------------------------------------------------------
# 8. the named relation suite, plus a negative control


@pytest.mark.parametrize(("d", "label"), _ACHIEVABLE, ids=_ids(_ACHIEVABLE))
def test_a08_relation_suite_mixed(d, label):
    rec = _roundtrip(d, label)
    assert rec.checks["axioms"] is True
    report = relation_report(rec.split.pair, rec.profile, rec.split,
                             rec.suite)
    assert report.all_pass, report.failing()
    assert len(report.names()) == 32


@pytest.mark.parametrize("d", [0, 1, 2, 3])
def test_a08_relation_suite_geometric(d):
    pair, profile, split, suite = _geo_ctx(d)
    assert verify_axioms(pair, profile).all_pass
    report = relation_report(pair, profile, split, suite)
    assert report.all_pass, report.failing()
    assert len(report.names()) == 17


def test_a08_single_entry_perturbation_is_detected():
    rec = _roundtrip(2, "2")
    pair = rec.split.pair
    rows = [list(r) for r in pair.Astar.rows]
    rows[0][0] = rows[0][0] + SYM.one()
    bad = TriPair(pair.A, MatrixE(SYM, rows))
    caught = False
    try:
        profile = derive_profile(bad)
        if not verify_axioms(bad, profile).all_pass:
            caught = True
        else:
            split = compute_split(bad, profile)
            suite = build_suite(bad, profile, split)
            caught = not relation_report(bad, profile, split, suite).all_pass
    except ExactError:
        caught = True
    assert caught


# ---------------------------------------------------------------------------
# 9. criterion value against algebra closure


@pytest.mark.parametrize(("d", "label"), _ACHIEVABLE, ids=_ids(_ACHIEVABLE))
def test_a09_closure_equivalence(d, label):
    rec = _roundtrip(d, label)
    n = rec.split.pair.n
    assert rec.checks["closure_equivalence"] is True
    assert rec.exists == (rec.closure_dim == n * n)
    assert not rec.criterion.P_at_lambda_star.is_zero()


def test_a09_injected_zeta_zeroes_the_criterion():
    # zeta_1 = -(q - q^-1)^2 makes P(lambda*) = 1 + zeta_1 lambda* vanish
    # at d = 1; the decision logic must answer "no module"
    qv = SYM.q()
    zeta = (SYM.one(), -((qv - qv ** -1) ** 2))
    res = evaluate_criterion(build_P(zeta, 1, SYM))
    assert res.P_at_lambda_star.is_zero()
    assert res.exists_module is False


# ---------------------------------------------------------------------------
# 10. structural invariants of the split


@pytest.mark.parametrize(("d", "label"), _ACHIEVABLE, ids=_ids(_ACHIEVABLE))
def test_a10_structural_invariants(d, label):
    rec = _roundtrip(d, label)
    split = rec.split
    assert split.U[0].dim == 1
    assert split.U[0] == split.W[0]
    assert rec.zeta[0].is_one()
    assert rec.criterion.P_coeffs[0].is_one()
    bij = bijection_check(split, split.E, split.G)
    assert bij["pass"], bij["failures"]
    for i in range(split.d + 1):
        series = ei_on_w_series(split, i)
        assert series["pass"], series["failures"]

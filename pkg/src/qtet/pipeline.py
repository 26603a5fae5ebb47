"""One pair in, one JSON-safe report out.

Stage order: classify, verify, split, suite, relations, then for q-mixed
input the criterion and (when the module exists) the eight-generator
construction.  Geometric input stops after the relation suite; the
criterion question concerns only the q-mixed class.

Exit codes: 0 the pair verifies and, for q-mixed input, the module
exists; 2 the pair verifies but the criterion fails; 3 the input is not
a valid pair of the assumed class; 1 parse or internal error.
"""

from __future__ import annotations

from .boxtimes import identify_generators, verify_boxtimes
from .criterion import decide
from .errors import DomainError, ExactError, StructuralError
from .generate import GenSpec, diameter_cap, generate_pair
from .operators import build_suite, relation_report
from .pairio import field_to_dict, pair_from_dict
from .splitting import compute_split
from .tdpair import TriPair, derive_profile, verify_axioms

EXIT_OK = 0
EXIT_NO_MODULE = 2
EXIT_INVALID_PAIR = 3
EXIT_ERROR = 1


def _fail(report, stage, message):
    report["error"] = {"stage": stage, "message": str(message)}


def run_pipeline(source, *, max_d=None, with_action=True):
    """Run every stage on a pair-file dict, a GenSpec, or a pair.

    Returns (report, exit_code).  Failures land in report["error"]
    instead of propagating, so batch callers can keep going.
    """
    cap = diameter_cap() if max_d is None else max_d
    report: dict = {}

    meta: dict = {}
    try:
        if isinstance(source, dict):
            pair, meta = pair_from_dict(source)
        elif isinstance(source, GenSpec):
            pair = generate_pair(source, cap)
            meta = {"generated": {
                "d": source.d,
                "class": source.kind,
                "c": None if source.c is None else str(source.c),
            }}
        elif isinstance(source, TriPair):
            pair = source
        else:
            raise DomainError(
                f"unsupported input type {type(source).__name__}"
            )
    except ExactError as exc:
        _fail(report, "input", exc)
        return report, EXIT_ERROR

    report["dimension"] = pair.n
    report["field"] = field_to_dict(pair.field)
    report["meta"] = meta

    try:
        profile = derive_profile(pair, max_d=cap)
    except (DomainError, StructuralError) as exc:
        _fail(report, "classify", exc)
        return report, EXIT_INVALID_PAIR

    cls = profile.pair_class
    report["classify"] = {
        "d": profile.d,
        "class": cls.kind,
        "c": None if cls.c is None else str(cls.c),
    }

    axioms = verify_axioms(pair, profile)
    report["verify"] = axioms.as_dict()
    if not axioms.all_pass:
        failing = [k for k, v in axioms.as_dict().items()
                   if k != "details" and not v]
        _fail(report, "verify", "axioms failed: " + ", ".join(failing))
        return report, EXIT_INVALID_PAIR

    if cls.kind == "other":
        _fail(report, "classify",
              "pair verifies but matches neither eigenvalue pattern")
        return report, EXIT_INVALID_PAIR

    try:
        split = compute_split(pair, profile)
        suite = build_suite(pair, profile, split)
    except (DomainError, StructuralError) as exc:
        _fail(report, "split", exc)
        return report, EXIT_INVALID_PAIR

    report["split"] = {
        "zeta": [str(z) for z in split.zeta],
        "U_dims": [s.dim for s in split.U],
        "W_dims": [s.dim for s in split.W],
    }

    try:
        rel = relation_report(pair, profile, split, suite)
    except (DomainError, StructuralError) as exc:
        _fail(report, "relations", exc)
        return report, EXIT_INVALID_PAIR
    report["relations"] = {"pass": rel.all_pass, "checks": rel.as_dict()}
    if not rel.all_pass:
        _fail(report, "relations",
              "failing identities: " + ", ".join(rel.failing()))
        return report, EXIT_INVALID_PAIR

    if cls.kind == "q_geometric":
        return report, EXIT_OK

    try:
        rec = decide(pair, with_action=with_action, max_d=cap)
    except (DomainError, StructuralError) as exc:
        # classification and axioms already passed, so this is an
        # internal inconsistency, not bad input
        _fail(report, "criterion", exc)
        return report, EXIT_ERROR
    report["criterion"] = rec.as_dict()

    if rec.action is not None:
        verification = verify_boxtimes(rec.action)
        identification = identify_generators(rec.action, pair, rec.suite)
        report["boxtimes"] = {
            "verification": verification,
            "identification": identification,
        }
        if not (verification["pass"] and identification["pass"]):
            _fail(report, "construct",
                  "constructed action failed verification")
            return report, EXIT_ERROR

    return report, EXIT_OK if rec.exists else EXIT_NO_MODULE

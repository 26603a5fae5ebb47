"""Command-line front end.

File-based commands print a JSON fragment of the full report and use the
pipeline exit codes: 0 verified (and module exists where that question
applies), 2 verified but the criterion fails, 3 not a valid pair of the
assumed class, 1 parse or internal error.  Word commands print plain
text.  The diameter cap honors QTET_MAX_D.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

from .criterion import decide
from .errors import DomainError, ExactError, StructuralError
from .generate import GenSpec, diameter_cap, generate_pair
from .operators import build_suite, relation_report
from .pairio import load_pair, save_pair
from .pipeline import (EXIT_ERROR, EXIT_INVALID_PAIR, EXIT_NO_MODULE,
                       EXIT_OK, run_pipeline)
from .scalars import FieldSpec
from .splitting import compute_split
from .tdpair import derive_profile, verify_axioms
from .words import (AqAlpha, enumerate_irreducible, format_element,
                    parse_element, reduce_element)


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on usage errors; that code means "criterion fails"
    # here, so remap
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"error: {message}\n")
        raise SystemExit(EXIT_ERROR)


def _emit(payload, code: int) -> int:
    print(json.dumps(payload, indent=2, sort_keys=True))
    return code


def _classify_dict(profile) -> dict:
    cls = profile.pair_class
    return {
        "d": profile.d,
        "class": cls.kind,
        "c": None if cls.c is None else str(cls.c),
    }


def _profile_of(pair):
    try:
        return derive_profile(pair, max_d=diameter_cap()), None
    except (DomainError, StructuralError) as exc:
        payload = {"error": {"stage": "classify", "message": str(exc)}}
        return None, _emit(payload, EXIT_INVALID_PAIR)


def _cmd_verify(args) -> int:
    pair, _ = load_pair(args.file)
    profile, failed = _profile_of(pair)
    if profile is None:
        return failed
    axioms = verify_axioms(pair, profile)
    payload = {"classify": _classify_dict(profile),
               "verify": axioms.as_dict()}
    return _emit(payload, EXIT_OK if axioms.all_pass else EXIT_INVALID_PAIR)


def _cmd_classify(args) -> int:
    pair, _ = load_pair(args.file)
    profile, failed = _profile_of(pair)
    if profile is None:
        return failed
    payload = _classify_dict(profile)
    ok = profile.pair_class.kind in ("q_geometric", "q_mixed")
    return _emit(payload, EXIT_OK if ok else EXIT_INVALID_PAIR)


def _verified_context(pair):
    """Profile, split, suite for a pair that passes the axioms, or an
    error payload with the right exit code."""
    profile, failed = _profile_of(pair)
    if profile is None:
        return None, failed
    axioms = verify_axioms(pair, profile)
    if not axioms.all_pass:
        payload = {"verify": axioms.as_dict(),
                   "error": {"stage": "verify", "message": "axioms failed"}}
        return None, _emit(payload, EXIT_INVALID_PAIR)
    try:
        split = compute_split(pair, profile)
        suite = build_suite(pair, profile, split)
    except (DomainError, StructuralError) as exc:
        payload = {"error": {"stage": "split", "message": str(exc)}}
        return None, _emit(payload, EXIT_INVALID_PAIR)
    return (profile, split, suite), None


def _cmd_split(args) -> int:
    pair, _ = load_pair(args.file)
    ctx, failed = _verified_context(pair)
    if ctx is None:
        return failed
    profile, split, _ = ctx
    payload = {
        "classify": _classify_dict(profile),
        "split": {
            "zeta": [str(z) for z in split.zeta],
            "U_dims": [s.dim for s in split.U],
            "W_dims": [s.dim for s in split.W],
        },
    }
    return _emit(payload, EXIT_OK)


def _cmd_relations(args) -> int:
    pair, _ = load_pair(args.file)
    ctx, failed = _verified_context(pair)
    if ctx is None:
        return failed
    profile, split, suite = ctx
    rel = relation_report(pair, profile, split, suite)
    payload = {
        "classify": _classify_dict(profile),
        "relations": {"pass": rel.all_pass, "checks": rel.as_dict()},
    }
    return _emit(payload, EXIT_OK if rel.all_pass else EXIT_INVALID_PAIR)


def _decide_or_exit(pair, with_action: bool):
    try:
        return decide(pair, with_action=with_action,
                      max_d=diameter_cap()), None
    except DomainError as exc:
        payload = {"error": {"stage": "classify", "message": str(exc)}}
        return None, _emit(payload, EXIT_INVALID_PAIR)
    except StructuralError as exc:
        msg = str(exc)
        internal = msg.startswith(("criterion", "construct"))
        payload = {"error": {"stage": msg.split(" stage:")[0],
                             "message": msg}}
        return None, _emit(payload,
                           EXIT_ERROR if internal else EXIT_INVALID_PAIR)


def _cmd_criterion(args) -> int:
    pair, _ = load_pair(args.file)
    rec, failed = _decide_or_exit(pair, with_action=False)
    if rec is None:
        return failed
    return _emit(rec.as_dict(), EXIT_OK if rec.exists else EXIT_NO_MODULE)


def _cmd_construct(args) -> int:
    pair, _ = load_pair(args.file)
    rec, failed = _decide_or_exit(pair, with_action=True)
    if rec is None:
        return failed
    if not rec.exists:
        payload = rec.as_dict()
        payload["error"] = {
            "stage": "construct",
            "message": "criterion fails; no module to construct",
        }
        return _emit(payload, EXIT_NO_MODULE)
    with open(args.out, "w") as fh:
        json.dump(rec.action.as_dict(), fh, indent=2, sort_keys=True)
        fh.write("\n")
    payload = {"written": args.out, "d": rec.d, "c": str(rec.c),
               "exists": True}
    return _emit(payload, EXIT_OK)


def _field_from_args(args) -> FieldSpec:
    if args.q is None:
        return FieldSpec.symbolic()
    return FieldSpec.specialized(Fraction(args.q))


def _cmd_generate(args) -> int:
    field = _field_from_args(args)
    kind = {"geo": "q_geometric", "mixed": "q_mixed"}[args.klass]
    c = None if args.c is None else field.parse(args.c)
    spec = GenSpec(args.d, kind, field, c=c)
    pair = generate_pair(spec)
    meta = {"generated": {"d": args.d, "class": kind,
                          "c": None if c is None else str(c)}}
    save_pair(args.out, pair, meta)
    payload = dict(meta["generated"])
    payload["written"] = args.out
    return _emit(payload, EXIT_OK)


def _cmd_words_enumerate(args) -> int:
    if args.length < 0:
        raise DomainError("length must be nonnegative")
    for w in enumerate_irreducible(args.length):
        print(w)
    return EXIT_OK


def _cmd_words_reduce(args) -> int:
    field = _field_from_args(args)
    alpha = field.zero() if args.alpha is None else field.parse(args.alpha)
    element = parse_element(args.element, field)
    reduced = reduce_element(element, AqAlpha(alpha, field))
    print(format_element(reduced))
    return EXIT_OK


def _batch_one(path: str):
    # worker-side; shares nothing with the parent beyond the path
    try:
        with open(path) as fh:
            data = json.load(fh)
    except json.JSONDecodeError as exc:
        report = {"error": {"stage": "input",
                            "message": f"invalid JSON: {exc.msg}"}}
        return path, EXIT_ERROR, report
    except OSError as exc:
        return path, EXIT_ERROR, {"error": {"stage": "input",
                                            "message": str(exc)}}
    report, code = run_pipeline(data)
    return path, code, report


def _cmd_report(args) -> int:
    if args.batch is not None:
        files = sorted(
            os.path.join(args.batch, name)
            for name in os.listdir(args.batch)
            if name.endswith(".json") and not name.endswith(".report.json")
        )
        if not files:
            print(f"error: no pair files in {args.batch}", file=sys.stderr)
            return EXIT_ERROR
        codes = []
        with ProcessPoolExecutor() as pool:
            for path, code, report in pool.map(_batch_one, files):
                out = path[: -len(".json")] + ".report.json"
                with open(out, "w") as fh:
                    json.dump(report, fh, indent=2, sort_keys=True)
                    fh.write("\n")
                codes.append(code)
                print(f"{os.path.basename(path)}: exit {code}")
        return max(codes) if any(codes) else EXIT_OK
    if args.file is None:
        print("error: a pair file or --batch is required", file=sys.stderr)
        return EXIT_ERROR
    try:
        with open(args.file) as fh:
            data = json.load(fh)
    except json.JSONDecodeError as exc:
        payload = {"error": {"stage": "input",
                             "message": f"invalid JSON: {exc.msg}"}}
        return _emit(payload, EXIT_ERROR)
    report, code = run_pipeline(data)
    if args.out is not None:
        with open(args.out, "w") as fh:
            json.dump(report, fh, indent=2, sort_keys=True)
            fh.write("\n")
    return _emit(report, code)


def _build_parser() -> _Parser:
    parser = _Parser(prog="qtet",
                     description="exact verification of tridiagonal pairs "
                                 "of q-mixed and q-geometric type")
    sub = parser.add_subparsers(dest="command", required=True,
                                parser_class=_Parser)

    for name, fn in (("verify", _cmd_verify), ("classify", _cmd_classify),
                     ("split", _cmd_split), ("relations", _cmd_relations),
                     ("criterion", _cmd_criterion)):
        p = sub.add_parser(name)
        p.add_argument("file")
        p.set_defaults(func=fn)

    p = sub.add_parser("construct")
    p.add_argument("file")
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_construct)

    p = sub.add_parser("generate")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--class", dest="klass", choices=("geo", "mixed"),
                   required=True)
    p.add_argument("--c", default=None)
    p.add_argument("--q", default=None,
                   help="rational value; switches to specialized mode")
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_generate)

    words = sub.add_parser("words")
    wsub = words.add_subparsers(dest="words_command", required=True,
                                parser_class=_Parser)
    p = wsub.add_parser("enumerate")
    p.add_argument("--length", type=int, required=True)
    p.set_defaults(func=_cmd_words_enumerate)
    p = wsub.add_parser("reduce")
    p.add_argument("element")
    p.add_argument("--alpha", default=None)
    p.add_argument("--q", default=None)
    p.set_defaults(func=_cmd_words_reduce)

    p = sub.add_parser("report")
    p.add_argument("file", nargs="?")
    p.add_argument("--batch", default=None)
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_report)

    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ExactError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except (OSError, ValueError, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())

"""Command-line front end.

One subcommand per library area: homology (h1, snf), free-subgroup folding
(fold), coset enumeration (coset-enum), the gadget constructions
(construct), the shape recognizers (check), identity-sequence verification
(verify-identity), the weight-one stream (enumerate), and budgeted
presentation rewrites (tietze).

Exit codes: 0 affirmative or plain success, 1 negative, 2 unknown or budget
exhausted, 3 usage or parse errors.  Results go to stdout, diagnostics to
stderr, and identical invocations print identical bytes.
"""

import argparse
import json
import os
import sys

from .abelian import h1, smith_normal_form
from .coset import DEFAULT_MAX_COSETS, enumerate_cosets
from .foldings import fold
from .gadgets import (
    homology_gadget,
    k3_embed,
    k3_minus_k2,
    m_minus_s,
    perfect_embed,
    s_minus_k3,
    weight_gadget,
    whitehead_gadget,
)
from .presentations import Presentation, TietzeBudget, parse, serialize, tietze_neighbors
from .recognize import (
    DEFAULT_ELIMINATION_LETTERS,
    artin_check,
    enumerate_weight_one,
    is_wirtinger,
    kervaire_report,
    two_knot_check,
    verify_identity,
)

SCHEMA_VERSION = 1
BUDGET_ENV = "KNOTPRES_MAX_COSETS"

_EXIT = {"yes": 0, "no": 1, "unknown": 2}


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def _default_budget():
    raw = os.environ.get(BUDGET_ENV)
    if raw is None or raw == "":
        return DEFAULT_MAX_COSETS
    try:
        value = int(raw)
    except ValueError:
        raise _UsageError("%s must be an integer, got %r" % (BUDGET_ENV, raw))
    if value < 1:
        raise _UsageError("%s must be positive" % BUDGET_ENV)
    return value


def _read_source(inline, path, what):
    if inline is not None and path is not None:
        raise _UsageError("give the %s inline or via --input, not both" % what)
    if inline is not None:
        return inline
    if path is None:
        raise _UsageError("missing %s (inline argument or --input)" % what)
    if path == "-":
        return sys.stdin.read()
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _load_presentation(args):
    return parse(_read_source(args.presentation, args.input, "presentation"))


def _split_words(text):
    return [part.strip() for part in text.split(",") if part.strip()]


def _print_json(payload, fmt):
    if fmt == "json":
        payload = dict(payload)
        payload["schema_version"] = SCHEMA_VERSION
    print(json.dumps(payload))


def _format_invariants(inv):
    parts = []
    if inv.free_rank:
        parts.append("Z^%d" % inv.free_rank)
    parts.extend("Z/%d" % d for d in inv.torsion)
    return " + ".join(parts) if parts else "0"


def _cmd_h1(args):
    p = _load_presentation(args)
    inv = h1(p)
    if args.format == "json":
        _print_json(
            {
                "free_rank": inv.free_rank,
                "torsion": list(inv.torsion),
                "display": _format_invariants(inv),
            },
            "json",
        )
    else:
        print(_format_invariants(inv))
    return 0


def _parse_matrix(text):
    try:
        m = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValueError("matrix must be a JSON array of rows: %s" % exc)
    if not isinstance(m, list) or any(not isinstance(row, list) for row in m):
        raise ValueError("matrix must be a JSON array of rows")
    widths = {len(row) for row in m}
    if len(widths) > 1:
        raise ValueError("matrix rows must all have the same length")
    for row in m:
        for entry in row:
            if not isinstance(entry, int) or isinstance(entry, bool):
                raise ValueError("matrix entries must be integers")
    return m


def _cmd_snf(args):
    m = _parse_matrix(_read_source(args.matrix, args.input, "matrix"))
    d, u, v = smith_normal_form(m)
    _print_json({"D": d, "U": u, "V": v}, args.format)
    return 0


def _cmd_fold(args):
    names = tuple("x%d" % (i + 1) for i in range(args.alphabet))
    scratch = Presentation(names)
    words = [scratch.word(t) for t in _split_words(args.words)]
    graph = fold(args.alphabet, words)
    rank = graph.rank()
    basis = rank == len(words)
    if args.member is not None:
        inside = graph.contains(scratch.word(args.member))
        if args.format == "json":
            _print_json(
                {"rank": rank, "is_basis": basis, "member": inside}, "json"
            )
        else:
            print("rank: %d" % rank)
            print("basis: %s" % ("yes" if basis else "no"))
            print("member: %s" % ("yes" if inside else "no"))
        return 0 if inside else 1
    if args.format == "json":
        _print_json({"rank": rank, "is_basis": basis}, "json")
    else:
        print("rank: %d" % rank)
        print("basis: %s" % ("yes" if basis else "no"))
    return 0 if basis else 1


def _cmd_coset_enum(args):
    p = _load_presentation(args)
    subgroup = []
    if args.subgroup:
        subgroup = [p.word(t) for t in _split_words(args.subgroup)]
    budget = args.max if args.max is not None else _default_budget()
    res = enumerate_cosets(p, subgroup, budget)
    if args.format == "json":
        payload = res.to_json_dict()
        if args.dump_table and res.finite:
            payload["table"] = res.table.to_json_dict(list(p.generators))
        _print_json(payload, "json")
    else:
        if res.finite:
            print("Finite(%d)" % res.index)
        else:
            print("Exhausted(%d)" % res.cosets_used)
        if args.dump_table and res.finite:
            print(json.dumps(res.table.to_json_dict(list(p.generators))))
    return 0 if res.finite else 2


def _cmd_construct(args):
    texts = list(args.presentations)
    for path in args.input or []:
        texts.append(_read_source(None, path, "presentation"))
    inputs = [parse(t) for t in texts]

    def take(count):
        if len(inputs) != count:
            raise _UsageError(
                "construct %s needs %d presentation(s), got %d"
                % (args.kind, count, len(inputs))
            )
        return inputs

    def word_over(p):
        if args.w is None:
            raise _UsageError("construct %s needs --w" % args.kind)
        return p.word(args.w)

    budget = args.max if args.max is not None else _default_budget()
    if args.kind == "prop1":
        rep = perfect_embed(take(1)[0], addendum=args.addendum)
    elif args.kind == "k3embed":
        rep = k3_embed(take(1)[0], audit_budget=budget)
    elif args.kind == "k3k2":
        rep = k3_minus_k2(take(1)[0])
    elif args.kind == "sk3":
        rep = s_minus_k3(take(1)[0], audit_budget=budget)
    elif args.kind == "ms":
        rep = m_minus_s(take(1)[0], audit_budget=budget)
    elif args.kind == "weight":
        u = take(1)[0]
        rep = weight_gadget(u, word_over(u))
    elif args.kind == "homology":
        g, u, y = take(3)
        rep = homology_gadget(g, u, y, word_over(u))
    else:
        p = take(1)[0]
        rep = whitehead_gadget(p, word_over(p))
    _print_json(rep.to_json_dict(), args.format)
    return 0


def _outcome_exit(out, args, extra=None):
    if args.format == "json":
        payload = out.to_json_dict()
        if extra:
            payload.update(extra)
        _print_json(payload, "json")
    else:
        print(out.verdict.capitalize())
        if args.verbose and out.evidence is not None:
            print(json.dumps(out.evidence))
    return _EXIT[out.verdict]


def _cmd_check(args):
    p = _load_presentation(args)
    if args.kind == "wirtinger":
        return _outcome_exit(is_wirtinger(p), args)
    if args.kind == "artin":
        return _outcome_exit(artin_check(p), args)
    if args.kind == "twoknot":
        budget = (
            args.budget if args.budget is not None else DEFAULT_ELIMINATION_LETTERS
        )
        return _outcome_exit(two_knot_check(p, args.h, budget), args)
    candidates = []
    if args.candidates:
        candidates = [p.word(t) for t in _split_words(args.candidates)]
    budget = args.budget if args.budget is not None else _default_budget()
    report = kervaire_report(p, candidates, max_cosets=budget)
    if args.format == "json":
        _print_json(report, "json")
    else:
        print(report["verdict"].capitalize())
        if args.verbose:
            print(json.dumps(report))
    return _EXIT[report["verdict"]]


def _cmd_verify_identity(args):
    p = _load_presentation(args)
    raw = args.pi
    if raw == "-":
        raw = sys.stdin.read()
    try:
        entries = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise ValueError("identity sequence must be JSON: %s" % exc)
    if not isinstance(entries, list):
        raise ValueError("identity sequence must be a JSON array")
    triples = []
    for entry in entries:
        if not isinstance(entry, list) or len(entry) != 3:
            raise ValueError("each entry must be [conjugator, relator, sign]")
        conj, index, sign = entry
        triples.append((p.word(conj), index, sign))
    ok = verify_identity(p, triples)
    if args.format == "json":
        _print_json({"verified": ok}, "json")
    else:
        print("true" if ok else "false")
    return 0 if ok else 1


def _cmd_enumerate(args):
    items = []
    for pres, witness in enumerate_weight_one(args.budget):
        items.append((serialize(pres), pres.spell(witness)))
    if args.format == "json":
        _print_json(
            {"emissions": [{"presentation": t, "witness": w} for t, w in items]},
            "json",
        )
    else:
        for text, w in items:
            print("%s\t%s" % (text, w))
    return 0


def _cmd_tietze(args):
    p = _load_presentation(args)
    budget = TietzeBudget(max_relator_len=args.max_relator_len)
    rows = []
    for q, move in tietze_neighbors(p, budget):
        rows.append((move.kind, serialize(q)))
    if args.format == "json":
        _print_json(
            {"neighbors": [{"kind": k, "presentation": t} for k, t in rows]},
            "json",
        )
    else:
        for kind, text in rows:
            print("%s\t%s" % (kind, text))
    return 0


def _add_format(sp):
    sp.add_argument(
        "--format", choices=("text", "json"), default="text", help="output format"
    )


def _add_presentation_source(sp):
    sp.add_argument(
        "presentation", nargs="?", help="presentation text, e.g. '< x | x^2 >'"
    )
    sp.add_argument("--input", help="read the presentation from a file, - for stdin")


def build_parser():
    parser = _Parser(prog="knotpres", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")

    sp = sub.add_parser("h1", help="first homology of a presentation")
    _add_presentation_source(sp)
    _add_format(sp)
    sp.set_defaults(handler=_cmd_h1)

    sp = sub.add_parser("snf", help="Smith normal form of an integer matrix")
    sp.add_argument("matrix", nargs="?", help="JSON array of rows")
    sp.add_argument("--input", help="read the matrix from a file, - for stdin")
    _add_format(sp)
    sp.set_defaults(handler=_cmd_snf)

    sp = sub.add_parser("fold", help="fold subgroup generators in a free group")
    sp.add_argument("--alphabet", type=int, required=True, help="free rank")
    sp.add_argument(
        "--words", required=True, help="comma-separated words over x1..xn"
    )
    sp.add_argument("--member", help="also test membership of this word")
    _add_format(sp)
    sp.set_defaults(handler=_cmd_fold)

    sp = sub.add_parser("coset-enum", help="enumerate cosets of a subgroup")
    _add_presentation_source(sp)
    sp.add_argument("--subgroup", help="comma-separated subgroup generator words")
    sp.add_argument(
        "--max", type=int, help="live-coset budget (default %s or $%s)"
        % (DEFAULT_MAX_COSETS, BUDGET_ENV)
    )
    sp.add_argument(
        "--dump-table", action="store_true", help="print the coset table as JSON"
    )
    _add_format(sp)
    sp.set_defaults(handler=_cmd_coset_enum)

    sp = sub.add_parser("construct", help="run a gadget construction")
    sp.add_argument(
        "kind",
        choices=(
            "prop1",
            "k3embed",
            "k3k2",
            "sk3",
            "ms",
            "weight",
            "homology",
            "whitehead",
        ),
    )
    sp.add_argument(
        "presentations", nargs="*", help="input presentation(s), inline"
    )
    sp.add_argument(
        "--input", action="append", help="read an input presentation from a file"
    )
    sp.add_argument("--w", help="designated word (weight, homology, whitehead)")
    sp.add_argument(
        "--addendum", action="store_true", help="extra graded row (prop1 only)"
    )
    sp.add_argument("--max", type=int, help="coset budget for audits")
    _add_format(sp)
    sp.set_defaults(handler=_cmd_construct)

    sp = sub.add_parser("check", help="run a shape recognizer")
    sp.add_argument("kind", choices=("wirtinger", "artin", "twoknot", "kervaire"))
    _add_presentation_source(sp)
    sp.add_argument("--h", type=int, default=0, help="pair count (twoknot)")
    sp.add_argument("--candidates", help="comma-separated words (kervaire)")
    sp.add_argument(
        "--budget",
        type=int,
        help="elimination letters (twoknot) or coset budget (kervaire)",
    )
    sp.add_argument(
        "--verbose", action="store_true", help="print evidence in text mode"
    )
    _add_format(sp)
    sp.set_defaults(handler=_cmd_check)

    sp = sub.add_parser("verify-identity", help="verify an identity sequence")
    _add_presentation_source(sp)
    sp.add_argument(
        "--pi",
        required=True,
        help='JSON entries [["conjugator", relator, sign], ...], - for stdin',
    )
    _add_format(sp)
    sp.set_defaults(handler=_cmd_verify_identity)

    sp = sub.add_parser(
        "enumerate", help="stream weight-one presentations with witnesses"
    )
    sp.add_argument("--budget", type=int, default=10, help="number of emissions")
    _add_format(sp)
    sp.set_defaults(handler=_cmd_enumerate)

    sp = sub.add_parser("tietze", help="list budgeted presentation rewrites")
    _add_presentation_source(sp)
    sp.add_argument(
        "--max-relator-len", type=int, default=12, help="relator length cap"
    )
    _add_format(sp)
    sp.set_defaults(handler=_cmd_tietze)

    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.handler(args)
    except _UsageError as exc:
        print(parser.format_usage().rstrip(), file=sys.stderr)
        print("error: %s" % exc, file=sys.stderr)
        return 3
    except (ValueError, OSError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 3
    except RuntimeError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

"""Batch command-line front end.

Predicate commands exit 0 for true and 1 for false; parse/usage/domain
errors exit 2 and height-cap violations exit 3.  `--json` emits one
structured document per invocation.
"""

from __future__ import annotations

import argparse
import html
import json
import random
import sys

from . import algebra, fi2, rewrite
from .alphabet import (enumerate_level, format_token, get_height_cap,
                       is_letter, parse_token, set_height_cap, X, XP, ONE)
from .errors import (DomainError, FregxError, HeightCapExceeded,
                     InvalidTupleError, LandscapeError, NormalizationOverflow,
                     ParseError)
from .landscape import Word, enumerate_hills, join, parse_word

EXIT_TRUE = 0
EXIT_FALSE = 1
EXIT_USAGE = 2
EXIT_CAP = 3


def _mode(args) -> str:
    return "expanded" if args.expanded else "alias"


def _emit(args, payload: dict, text_lines) -> None:
    if args.json:
        print(json.dumps(payload, sort_keys=True))
    else:
        for line in text_lines:
            print(line)


def _element(text: str) -> algebra.Element:
    return algebra.Element(rewrite.beta(parse_word(text)))


def _letter(text: str):
    tok = parse_token(text)
    if not is_letter(tok):
        raise ParseError(f"{text!r} is not a letter (unit or tuple)")
    return tok


def _bool_exit(value: bool) -> int:
    return EXIT_TRUE if value else EXIT_FALSE


def cmd_normalize(args):
    m = rewrite.beta(parse_word(args.word))
    text = m.format(_mode(args))
    _emit(args, {"canonical": text, "height": m.height,
                 "tokens": 2 * m.n + 1}, [text])
    return EXIT_TRUE


def cmd_eq(args):
    value = algebra.equal(parse_word(args.word1), parse_word(args.word2))
    _emit(args, {"equal": value}, ["equal" if value else "distinct"])
    return _bool_exit(value)


def cmd_green(args):
    u = _element(args.word1)
    v = _element(args.word2)
    rel = args.relation
    if rel.startswith("leq"):
        value = algebra.green_leq(u, v, rel[3:])
        _emit(args, {"relation": rel, "leq": value},
              ["true" if value else "false"])
        return _bool_exit(value)
    report = algebra.green_compare(u, v, rel)
    _emit(args, {"relation": report.relation, "verdict": report.verdict},
          [report.verdict])
    return _bool_exit(report.verdict == algebra.EQUIVALENT)


def cmd_idempotent(args):
    value = algebra.is_idempotent(_element(args.word))
    _emit(args, {"idempotent": value}, ["true" if value else "false"])
    return _bool_exit(value)


def cmd_inverse(args):
    inv = algebra.canonical_inverse(_element(args.word))
    text = inv.format(_mode(args))
    _emit(args, {"inverse": text}, [text])
    return EXIT_TRUE


def cmd_is_inverse(args):
    value = algebra.is_inverse_pair(_element(args.word1), _element(args.word2))
    _emit(args, {"inverse_pair": value}, ["true" if value else "false"])
    return _bool_exit(value)


def cmd_nat_leq(args):
    value = algebra.natural_leq(_element(args.word1), _element(args.word2))
    _emit(args, {"leq": value}, ["true" if value else "false"])
    return _bool_exit(value)


def cmd_enum(args):
    level = enumerate_level(args.level, args.klass)
    expanded = args.expanded
    names = [format_token(g, expanded=expanded) for g in level]
    _emit(args, {"level": args.level, "class": args.klass,
                 "count": len(level), "tuples": names}, names)
    return EXIT_TRUE


def cmd_enum_fi2(args):
    level = fi2.enumerate_ilevel(args.level)
    names = [fi2.format_iletter(h, expanded=args.expanded) for h in level]
    _emit(args, {"level": args.level, "count": len(level), "triples": names},
          names)
    return EXIT_TRUE


def cmd_dclass(args):
    elements = algebra.dclass(_letter(args.letter))
    mode = _mode(args)
    lines = [e.format(mode) for e in elements]
    r_classes = len({e.left_hill for e in elements})
    l_classes = len({e.right_hill for e in elements})
    _emit(args, {"letter": args.letter, "count": len(elements),
                 "r_classes": r_classes, "l_classes": l_classes,
                 "elements": lines}, lines)
    return EXIT_TRUE


def cmd_hills(args):
    hills = enumerate_hills(_letter(args.letter), args.direction)
    mode = _mode(args)
    lines = [h.format(mode) for h in hills]
    _emit(args, {"letter": args.letter, "direction": args.direction,
                 "count": len(hills), "hills": lines}, lines)
    return EXIT_TRUE


def cmd_sandwich(args):
    found = algebra.sandwich(_element(args.word1), _element(args.word2))
    mode = _mode(args)
    lines = [e.format(mode) for e in found]
    _emit(args, {"count": len(found), "elements": lines}, lines)
    return EXIT_TRUE


def cmd_embed(args):
    if args.direction == "to-fi2":
        mountain = rewrite.beta(parse_word(args.word))
        if not fi2.in_Mcirc(mountain):
            raise DomainError(
                f"canonical form {mountain.format()!r} is not in the "
                f"sub-model")
        image = fi2.phi_mountain(mountain).format(expanded=args.expanded)
    else:
        back = fi2.psi_mountain(fi2.parse_iword(args.word))
        image = back.format(_mode(args))
    _emit(args, {"direction": args.direction, "image": image}, [image])
    return EXIT_TRUE


def cmd_embed_check(args):
    report = fi2.check_embedding(args.max_height_check, args.samples,
                                 args.seed)
    payload = {
        "passed": report.passed,
        "max_height": report.max_height,
        "bijection_checked": report.bijection_checked,
        "hom_checked": report.hom_checked,
        "closure_failures": report.closure_failures,
        "failures": list(report.failures),
    }
    lines = [f"bijection checked on {report.bijection_checked} mountains",
             f"homomorphism checked on {report.hom_checked} products",
             "PASS" if report.passed else "FAIL"]
    lines.extend(report.failures)
    _emit(args, payload, lines)
    return _bool_exit(report.passed)


def _confluence_pool():
    pool = [ONE, X, XP]
    pool.extend(enumerate_level(1, "all"))
    pool.extend(enumerate_level(2, "all"))
    return pool


def cmd_confluence(args):
    rng = random.Random(args.seed)
    pool = _confluence_pool()
    reports = []
    for _ in range(args.words):
        length = rng.randint(1, args.max_len)
        w = Word(tuple(rng.choice(pool) for _ in range(length)))
        reports.append(rewrite.check_confluence(w, trials=args.trials,
                                                seed=rng.randrange(2 ** 30)))
    passed = all(r.passed for r in reports)
    payload = {
        "passed": passed,
        "words": len(reports),
        "trials_per_word": args.trials,
        "steps_max": max(r.steps_max for r in reports),
        "divergent": [r.word for r in reports if not r.passed],
    }
    lines = [f"{r.word}  ->  {r.canonical}  "
             f"[steps {r.steps_min}..{r.steps_max}]" for r in reports]
    lines.append("PASS" if passed else "FAIL")
    _emit(args, payload, lines)
    return _bool_exit(passed)


def cmd_eggbox(args):
    g = _letter(args.letter)
    ups = enumerate_hills(g, "up")
    downs = enumerate_hills(g, "down")
    mode = _mode(args)
    rows = []
    for up in ups:
        row = []
        for down in downs:
            e = algebra.Element(join(up, down))
            row.append((e.format(mode), algebra.is_idempotent(e)))
        rows.append(row)
    if args.dot:
        lines = _eggbox_dot(args.letter, rows)
    else:
        lines = [" | ".join(text + (" *" if idem else "")
                            for text, idem in row) for row in rows]
    payload = {"letter": args.letter,
               "rows": [[{"element": text, "idempotent": idem}
                         for text, idem in row] for row in rows]}
    _emit(args, payload, lines)
    return EXIT_TRUE


def _eggbox_dot(name, rows):
    lines = ["graph eggbox {",
             "  node [shape=none];",
             f"  // D-class of {name}; * marks idempotents",
             "  box [label=<<TABLE BORDER=\"0\" CELLBORDER=\"1\" "
             "CELLSPACING=\"0\">"]
    for row in rows:
        cells = "".join(
            "<TD>%s%s</TD>" % (html.escape(text), " *" if idem else "")
            for text, idem in row)
        lines.append(f"    <TR>{cells}</TR>")
    lines.append("  </TABLE>>];")
    lines.append("}")
    return lines


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true",
                        help="emit one JSON document")
    common.add_argument("--expanded", action="store_true",
                        help="print tuples as nested literals, not aliases")
    common.add_argument("--max-height", type=int, default=None,
                        help="override the global height cap (default 12)")

    parser = argparse.ArgumentParser(
        prog="fregx",
        description="Canonical forms and structure for the free regular "
                    "semigroup weakly generated by one element.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("normalize", parents=[common],
                       help="canonical mountain of a word")
    p.add_argument("word")
    p.set_defaults(func=cmd_normalize)

    p = sub.add_parser("eq", parents=[common], help="word problem")
    p.add_argument("word1")
    p.add_argument("word2")
    p.set_defaults(func=cmd_eq)

    p = sub.add_parser("green", parents=[common],
                       help="Green relation comparison")
    p.add_argument("relation",
                   choices=["R", "L", "J", "H", "D", "leqR", "leqL", "leqJ"])
    p.add_argument("word1")
    p.add_argument("word2")
    p.set_defaults(func=cmd_green)

    p = sub.add_parser("idempotent", parents=[common])
    p.add_argument("word")
    p.set_defaults(func=cmd_idempotent)

    p = sub.add_parser("inverse", parents=[common],
                       help="canonical inverse")
    p.add_argument("word")
    p.set_defaults(func=cmd_inverse)

    p = sub.add_parser("is-inverse", parents=[common])
    p.add_argument("word1")
    p.add_argument("word2")
    p.set_defaults(func=cmd_is_inverse)

    p = sub.add_parser("nat-leq", parents=[common],
                       help="natural partial order")
    p.add_argument("word1")
    p.add_argument("word2")
    p.set_defaults(func=cmd_nat_leq)

    p = sub.add_parser("enum", parents=[common], help="tuple level")
    p.add_argument("level", type=int)
    p.add_argument("klass", nargs="?", default="all",
                   choices=["e", "d", "all"])
    p.set_defaults(func=cmd_enum)

    p = sub.add_parser("enum-fi2", parents=[common], help="triple level")
    p.add_argument("level", type=int)
    p.set_defaults(func=cmd_enum_fi2)

    p = sub.add_parser("dclass", parents=[common],
                       help="D-class of a letter")
    p.add_argument("letter")
    p.set_defaults(func=cmd_dclass)

    p = sub.add_parser("hills", parents=[common])
    p.add_argument("letter")
    p.add_argument("direction", choices=["up", "down"])
    p.set_defaults(func=cmd_hills)

    p = sub.add_parser("sandwich", parents=[common],
                       help="sandwich set of two idempotents")
    p.add_argument("word1")
    p.add_argument("word2")
    p.set_defaults(func=cmd_sandwich)

    p = sub.add_parser("embed", parents=[common],
                       help="map along the two-idempotent embedding")
    p.add_argument("direction", choices=["to-fi2", "from-fi2"])
    p.add_argument("word")
    p.set_defaults(func=cmd_embed)

    p = sub.add_parser("embed-check", parents=[common])
    p.add_argument("--max-height", dest="max_height_check", type=int,
                   default=3)
    p.add_argument("--samples", type=int, default=200)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_embed_check)

    p = sub.add_parser("confluence", parents=[common],
                       help="strategy-independence harness on random words")
    p.add_argument("--trials", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-len", type=int, default=6)
    p.add_argument("--words", type=int, default=50)
    p.set_defaults(func=cmd_confluence)

    p = sub.add_parser("eggbox", parents=[common],
                       help="egg-box of the D-class of a letter")
    p.add_argument("letter")
    p.add_argument("--dot", action="store_true",
                   help="emit a DOT document")
    p.set_defaults(func=cmd_eggbox)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "max_height", None) is not None:
        set_height_cap(args.max_height)
    try:
        return args.func(args)
    except HeightCapExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (ParseError, InvalidTupleError, LandscapeError, DomainError,
            NormalizationOverflow, FregxError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def entry() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    entry()

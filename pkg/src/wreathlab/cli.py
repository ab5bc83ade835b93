"""Command-line front end: ``wreathlab <command> <action> [options]``.

Exit status is 0 on success, 1 when a check is falsified and 2 on usage
or capacity errors.  ``--format json`` prints one JSON document.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import groups as fg
from .acceptance import run_acceptance
from .automorphisms import (
    CHAR_TAGS,
    DEFAULT_WINDOW,
    all_specs,
    apply_aut,
    char_tag,
    format_autspec,
    parse_autspec,
    verify_characteristic,
)
from .classify import classify, cross_validate_cyclic
from .dl import (
    adjacency_dump,
    check_cayley_isomorphism,
    dl_ball,
    format_vertex,
    vertex_of_element,
)
from .groups import AUT_CAP, CapacityError, GroupAut, GroupError, parse_group_spec
from .twisted import (
    CARRIER_CAP,
    block_table,
    reidemeister_abelian,
    reidemeister_fh,
    reidemeister_wreath,
    twisted_classes,
    window_class_count,
    window_orbit_count,
)
from .wreath import (
    AT,
    DEFAULT_BALL_CAP,
    TA,
    WordSyntaxError,
    eval_word,
    format_element,
    format_normal_form,
    format_word,
    inverse,
    mul,
    normal_form,
    normal_form_word,
    parse_element,
    parse_word,
    word_length_bfs,
    word_length_ct,
)


class UsageError(Exception):
    pass


# -- shared helpers ---------------------------------------------------------------


def _emit(args: argparse.Namespace, doc: dict, text: str) -> None:
    if args.format == "json":
        print(json.dumps(doc, indent=2, sort_keys=True))
    else:
        print(text)


def _lamp_group(args: argparse.Namespace) -> fg.FiniteGroup:
    if getattr(args, "group", None):
        return parse_group_spec(args.group)
    if getattr(args, "n", None):
        return fg.cyclic(args.n)
    raise UsageError("give the lamp group with --n N or --group SPEC")


def _gens(args: argparse.Namespace) -> str:
    return args.gens.upper()


def _element(args: argparse.Namespace, G: fg.FiniteGroup, which: str = "x"):
    literal = getattr(args, which, None)
    if literal is not None:
        return parse_element(literal, G)
    if which == "x" and getattr(args, "word", None) is not None:
        if G.family[0] != "cyclic":
            raise UsageError("words are read over Z_n; use --n or an element literal")
        return eval_word(parse_word(args.word, _gens(args), G.order), G)
    raise UsageError(f"missing --{which} (element literal [p=v,...]@k)" + (" or --word" if which == "x" else ""))


def _parse_aut(G: fg.FiniteGroup, text: str, aut_cap: int) -> GroupAut:
    """Automorphism of ``G``: index, ``*k`` or an image list."""
    text = text.strip()
    if text.startswith("*"):
        return fg.multiplication_aut(G, int(text[1:]))
    if text.startswith("["):
        image = tuple(int(x) for x in text.strip("[]").replace(",", " ").split())
        if not fg.is_automorphism(G, image):
            raise GroupError("image list is not an automorphism")
        return GroupAut(image)
    auts = fg.automorphism_group(G, aut_cap)
    k = int(text)
    if not 0 <= k < len(auts):
        raise GroupError(f"automorphism index {k} out of range 0..{len(auts) - 1}")
    return auts[k]


def _int_list(text: str) -> list[int]:
    return [int(x) for x in text.replace(",", " ").split()]


# -- group -----------------------------------------------------------------------------


def cmd_group_info(args: argparse.Namespace) -> int:
    G = parse_group_spec(args.spec)
    doc: dict = {
        "spec": args.spec,
        "name": G.name,
        "order": G.order,
        "abelian": G.is_abelian,
        "cyclic": G.is_cyclic,
        "generators": list(G.generators),
        "center_order": len(fg.center(G)),
        "commutator_order": len(fg.commutator_subgroup(G)),
        "abelianization": str(fg.abelianization(G)),
        "conjugacy_classes": len(fg.conjugacy_classes(G)),
        "simple": fg.is_simple(G),
    }
    if G.is_abelian:
        doc["decomposition"] = str(fg.abelian_decomposition(G))
    sylows = {}
    for p in (2, 3):
        elems, unique = fg.sylow(G, p)
        if len(elems) > 1:
            sylows[str(p)] = {"order": len(elems), "unique": unique}
    doc["sylow"] = sylows
    try:
        doc["automorphisms"] = fg.count_automorphisms(G, args.aut_cap)
    except CapacityError as exc:
        doc["automorphisms"] = None
        doc["note"] = str(exc)
    lines = [f"{k}: {v}" for k, v in doc.items()]
    _emit(args, doc, "\n".join(lines))
    return 0


# -- wreath ---------------------------------------------------------------------------


def cmd_wreath(args: argparse.Namespace) -> int:
    G = _lamp_group(args)
    action = args.action
    if action == "mul":
        x, y = _element(args, G), _element(args, G, "y")
        z = mul(x, y)
        _emit(args, {"x": format_element(x), "y": format_element(y), "product": format_element(z)}, format_element(z))
    elif action == "inv":
        x = _element(args, G)
        z = inverse(x)
        _emit(args, {"x": format_element(x), "inverse": format_element(z)}, format_element(z))
    elif action == "eval":
        if args.word is None:
            raise UsageError("eval needs --word")
        x = _element(args, G)
        _emit(args, {"word": args.word, "element": format_element(x)}, format_element(x))
    elif action == "normform":
        x = _element(args, G)
        nf = normal_form(x, args.side)
        text = format_normal_form(nf)
        word = format_word(normal_form_word(nf))
        doc = {"element": format_element(x), "side": args.side, "normal_form": text, "word": word}
        _emit(args, doc, f"{text}\n{word}")
    elif action == "len":
        x = _element(args, G)
        n = word_length_ct(x)
        _emit(args, {"element": format_element(x), "length": n, "method": "formula"}, str(n))
    elif action == "lenbfs":
        x = _element(args, G)
        n = word_length_bfs(x, _gens(args), args.ball_cap)
        if n is None:
            raise CapacityError(f"word length of {format_element(x)}", args.ball_cap, "--ball-cap")
        doc = {"element": format_element(x), "length": n, "method": "bfs", "gens": _gens(args)}
        _emit(args, doc, str(n))
    return 0


# -- dl ---------------------------------------------------------------------------------


def cmd_dl(args: argparse.Namespace) -> int:
    if args.action == "ball":
        n = args.n if args.n is not None else args.m
        if args.radius > args.ball_cap:
            raise CapacityError(f"DL ball of radius {args.radius}", args.ball_cap, "--ball-cap")
        dist = dl_ball(args.m, n, args.radius)
        sizes = [0] * (args.radius + 1)
        for d in dist.values():
            sizes[d] += 1
        doc: dict = {"m": args.m, "n": n, "radius": args.radius, "spheres": sizes, "vertices": len(dist)}
        text = f"DL({args.m},{n}) radius {args.radius}: spheres {sizes}, {len(dist)} vertices"
        if args.dump:
            lines = adjacency_dump(args.m, n, args.radius)
            doc["adjacency"] = lines
            text += "\n" + "\n".join(lines)
        _emit(args, doc, text)
        return 0
    if args.action == "check-iso":
        rep = check_cayley_isomorphism(args.m, args.radius, cap=args.ball_cap)
        text = (
            f"{'PASS' if rep.passed else 'FAIL'} m={rep.m} radius={rep.radius} "
            f"spheres {rep.cayley_spheres} ({rep.checked_vertices} vertices, {rep.checked_edges} edges)"
        )
        if rep.mismatch:
            text += f"\nfirst mismatch: {rep.mismatch}"
        _emit(args, rep.as_dict(), text)
        return 0 if rep.passed else 1
    # locate
    G = _lamp_group(args)
    x = _element(args, G)
    v = vertex_of_element(x)
    _emit(args, {"element": format_element(x), "vertex": format_vertex(v)}, format_vertex(v))
    return 0


# -- aut --------------------------------------------------------------------------------


def cmd_aut(args: argparse.Namespace) -> int:
    G = parse_group_spec(args.group)
    if args.action == "verify-char":
        tag = char_tag(args.tag, G, args.param)
        if args.aut:
            specs = [parse_autspec(args.aut, G, args.aut_cap)]
        else:
            specs = all_specs(G, aut_cap=args.aut_cap)
        rep = verify_characteristic(tag, specs, args.window)
        text = f"{'PASS' if rep.passed else 'FAIL'} {rep.tag}: {rep.members} members, {rep.specs} specs, {rep.checks} checks"
        if rep.violation:
            text += f"\nviolation: {rep.violation}"
        _emit(args, rep.as_dict(), text)
        return 0 if rep.passed else 1
    if not args.aut:
        raise UsageError("give the automorphism with --aut 'xi=... c=... eps=...'")
    s = parse_autspec(args.aut, G, args.aut_cap)
    if args.action == "apply":
        x = _element(args, G)
        y = apply_aut(s, x)
        doc = {"spec": format_autspec(s), "element": format_element(x), "image": format_element(y)}
        _emit(args, doc, format_element(y))
        return 0
    # blocks
    rows = block_table(s, _int_list(args.indices))
    text = "\n".join(
        f"block {r['index']} {r['kind']} positions {r['positions']}: {r['classes']} classes, fixed points {r['fixed_points']}"
        for r in rows
    )
    _emit(args, {"spec": format_autspec(s), "blocks": rows}, text)
    return 0


# -- reid -------------------------------------------------------------------------------


def cmd_reid(args: argparse.Namespace) -> int:
    G = parse_group_spec(args.group)
    if args.action == "finite":
        if args.xi is None:
            raise UsageError("reid finite needs --xi <index|*k|[images]>")
        phi = _parse_aut(G, args.xi, args.aut_cap)
        rep = twisted_classes(G, phi)
        doc: dict = {"group": G.name, "xi": list(phi.image), "orbit": rep.count, "representatives": rep.representatives}
        doc["fh"] = reidemeister_fh(G, phi)
        if G.is_abelian:
            doc["cokernel"] = reidemeister_abelian(G, phi)
        text = "\n".join(f"{k}: {v}" for k, v in doc.items())
        _emit(args, doc, text)
        return 0
    if not args.aut:
        raise UsageError("give the automorphism with --aut 'xi=... c=... eps=...'")
    s = parse_autspec(args.aut, G, args.aut_cap)
    if args.action == "wreath":
        res = reidemeister_wreath(s)
        doc = {"spec": format_autspec(s), "result": res.as_dict()}
        if s.epsilon == -1:
            doc["blocks"] = block_table(s, [s.c // 2, s.c // 2 + 1])
        _emit(args, doc, f"{format_autspec(s)}: {res}")
        return 0
    # window
    window = _int_list(args.window)
    product = window_class_count(s, window)
    doc = {"spec": format_autspec(s), "window": window, "product": product}
    text = f"window {window}: {product} classes (block product)"
    if args.direct:
        direct = window_orbit_count(s, window, args.carrier_cap)
        doc["direct"] = direct
        doc["agree"] = direct == product
        text += f", {direct} by direct enumeration"
        _emit(args, doc, text)
        return 0 if direct == product else 1
    _emit(args, doc, text)
    return 0


# -- classify / suite -------------------------------------------------------------------------


def cmd_classify(args: argparse.Namespace) -> int:
    G = parse_group_spec(args.group)
    v = classify(G, aut_cap=args.aut_cap, exhaustive=args.all_rules)
    lines = [f"group: {args.group} ({v.group})", f"verdict: {v.status}"]
    if v.certificate:
        lines.append(f"rule: {v.certificate.rule} {v.certificate.facts}")
    for c in v.also_applicable:
        lines.append(f"also: {c.rule} {c.facts}")
    if v.witness:
        lines.append(f"witness: {format_autspec(v.witness.spec)} R = {v.witness.value}")
    lines.append("rules tried: " + ", ".join(v.rules_tried))
    doc = v.as_dict()
    doc["spec"] = args.group
    _emit(args, doc, "\n".join(lines))
    return 0


def cmd_suite(args: argparse.Namespace) -> int:
    if args.action == "acceptance":
        results = run_acceptance(args.only)
        ok = all(r.passed for r in results)
        doc = {"passed": ok, "criteria": [r.as_dict() for r in results]}
        _emit(args, doc, "\n".join(r.line() for r in results))
        return 0 if ok else 1
    rep = cross_validate_cyclic(args.limit, args.aut_cap)
    lines = [
        f"{'ok ' if r.ok else 'BAD'} C{r.m}: {r.status}" + (f" ({r.rule})" if r.rule else "") + (f" witness {r.witness} R={r.value}" if r.witness else "")
        for r in rep.rows
    ]
    lines.append("PASS" if rep.passed else "FAIL")
    _emit(args, rep.as_dict(), "\n".join(lines))
    return 0 if rep.passed else 1


# -- parser ------------------------------------------------------------------------------------


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--format", choices=("text", "json"), default=argparse.SUPPRESS)
    p.add_argument("--ball-cap", type=int, default=argparse.SUPPRESS, help=f"BFS radius cap (default {DEFAULT_BALL_CAP})")
    p.add_argument("--aut-cap", type=int, default=argparse.SUPPRESS, help=f"largest group order for automorphism enumeration (default {AUT_CAP})")
    p.add_argument("--carrier-cap", type=int, default=argparse.SUPPRESS, help=f"largest window carrier for direct enumeration (default {CARRIER_CAP})")
    return p


def _element_options(p: argparse.ArgumentParser) -> None:
    p.add_argument("--n", type=int, help="lamp group Z_n")
    p.add_argument("--group", help="lamp group spec, e.g. C4, D6, Q8, C2xC2")
    p.add_argument("--x", help="element literal [p=v,...]@shift")
    p.add_argument("--word", help="word over the generating set, e.g. 'a t^-1 a'")
    p.add_argument("--gens", default=AT, type=str.upper, choices=(AT, TA), help="generating set for words and BFS")


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(prog="wreathlab", description="Exact computations in wreath products G wr Z.", parents=[common])
    sub = parser.add_subparsers(dest="command", required=True)

    g = sub.add_parser("group", help="finite group structure").add_subparsers(dest="action", required=True)
    info = g.add_parser("info", parents=[common], help="structure report for a group spec")
    info.add_argument("spec")
    info.set_defaults(func=cmd_group_info)

    w = sub.add_parser("wreath", help="element arithmetic and word length").add_subparsers(dest="action", required=True)
    for name in ("mul", "inv", "eval", "normform", "len", "lenbfs"):
        p = w.add_parser(name, parents=[common])
        _element_options(p)
        if name == "mul":
            p.add_argument("--y", required=True, help="second factor literal")
        if name == "normform":
            p.add_argument("--side", choices=("rf", "lf"), default="rf")
        p.set_defaults(func=cmd_wreath)

    d = sub.add_parser("dl", help="Diestel-Leader graphs").add_subparsers(dest="action", required=True)
    p = d.add_parser("ball", parents=[common])
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int)
    p.add_argument("--radius", type=int, required=True)
    p.add_argument("--dump", action="store_true", help="print the adjacency list")
    p.set_defaults(func=cmd_dl)
    p = d.add_parser("check-iso", parents=[common])
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--radius", type=int, required=True)
    p.set_defaults(func=cmd_dl)
    p = d.add_parser("locate", parents=[common])
    _element_options(p)
    p.set_defaults(func=cmd_dl)

    a = sub.add_parser("aut", help="compatible-pair automorphisms").add_subparsers(dest="action", required=True)
    for name in ("apply", "blocks", "verify-char"):
        p = a.add_parser(name, parents=[common])
        p.add_argument("--group", required=True)
        p.add_argument("--aut", help="'xi=<index|*k|[images]> c=<int> eps=<+1|-1>'")
        if name == "apply":
            p.add_argument("--x", help="element literal [p=v,...]@shift")
            p.add_argument("--word")
            p.add_argument("--gens", default=AT, type=str.upper, choices=(AT, TA))
        if name == "blocks":
            p.add_argument("--indices", default="0,1,2", help="block indices, comma separated")
        if name == "verify-char":
            p.add_argument("--tag", required=True, choices=CHAR_TAGS)
            p.add_argument("--param", type=int, help="d for order_subgroup, p for sylow_wreath")
            p.add_argument("--window", type=int, default=DEFAULT_WINDOW)
        p.set_defaults(func=cmd_aut)

    r = sub.add_parser("reid", help="Reidemeister numbers").add_subparsers(dest="action", required=True)
    p = r.add_parser("finite", parents=[common], help="R(xi) on the finite group by three methods")
    p.add_argument("--group", required=True)
    p.add_argument("--xi", help="index, *k or [images]")
    p.set_defaults(func=cmd_reid)
    p = r.add_parser("wreath", parents=[common], help="R of a compatible-pair automorphism")
    p.add_argument("--group", required=True)
    p.add_argument("--aut", required=True)
    p.set_defaults(func=cmd_reid)
    p = r.add_parser("window", parents=[common], help="class count on a window of blocks")
    p.add_argument("--group", required=True)
    p.add_argument("--aut", required=True)
    p.add_argument("--window", required=True, help="block indices, comma separated")
    p.add_argument("--direct", action="store_true", help="also count by direct enumeration")
    p.set_defaults(func=cmd_reid)

    p = sub.add_parser("classify", parents=[common], help="decide property R-infinity for G wr Z")
    p.add_argument("--group", required=True)
    p.add_argument("--all-rules", action="store_true", help="evaluate every rule, not just the first that fires")
    p.set_defaults(func=cmd_classify)

    s = sub.add_parser("suite", help="batch experiments").add_subparsers(dest="action", required=True)
    p = s.add_parser("acceptance", parents=[common])
    p.add_argument("--only", type=int, nargs="*", help="criterion numbers to run")
    p.set_defaults(func=cmd_suite)
    p = s.add_parser("cyclic", parents=[common])
    p.add_argument("--limit", type=int, required=True)
    p.set_defaults(func=cmd_suite)
    return parser


DEFAULTS = {"format": "text", "ball_cap": DEFAULT_BALL_CAP, "aut_cap": AUT_CAP, "carrier_cap": CARRIER_CAP}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    for key, value in DEFAULTS.items():
        if not hasattr(args, key):
            setattr(args, key, value)
    try:
        return args.func(args)
    except CapacityError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (UsageError, GroupError, WordSyntaxError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        parser.print_usage(sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

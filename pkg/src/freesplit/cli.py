"""Command-line interface.

Exit status: 0 for any computed verdict (decomposable and
not-one-ended are verdicts, not errors), 1 for parse or validation
errors, 2 for a resource-cap refusal.  Diagnostics go to stderr.

Output is deterministic: identical invocations produce byte-identical
output.  JSON reports always carry the top-level keys ``command``,
``input``, ``verdict``, ``certificate``.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import arcs, gog, tree, whitehead
from .errors import FreesplitError, ParseError, ResourceCapError
from .words import (
    Alphabet,
    CyclicWord,
    cyclic_reduce,
    format_letter,
    format_word,
    is_cyclically_reduced,
    parse_word,
)


def _add_common(parser, words=True, rank=True):
    parser.add_argument("--format", choices=("text", "dot", "json"), default="text")
    parser.add_argument("--cap", type=int, default=tree.DEFAULT_VERTEX_CAP,
                        help="ball vertex budget (default 2000000)")
    parser.add_argument("--strict", action="store_true",
                        help="reject words that are not already cyclically reduced")
    if rank:
        parser.add_argument("--rank", type=int, required=True, help="free group rank")
    if words:
        parser.add_argument("words", nargs="+", help="cyclic words (letter or numeric form)")


def _add_tree_arguments(p) -> None:
    p.add_argument("what", choices=("ball", "axes", "counts", "certificate", "profile", "star"))
    p.add_argument("--radius", type=int, default=None)
    p.add_argument("--max-radius", type=int, default=None, dest="max_radius")
    _add_common(p, words=False)
    p.add_argument("words", nargs="*", help="cyclic words (unused for 'ball')")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="freesplit",
        description="Whitehead-graph and arc-system decisions for free groups"
        " and graphs of groups",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("graph", help="Whitehead graph of a word family")
    _add_common(p)

    p = sub.add_parser("minimize", help="Whitehead length minimization")
    _add_common(p)

    p = sub.add_parser("indecomposable", help="decide indecomposability")
    _add_common(p)

    p = sub.add_parser("basis", help="recognise a free basis up to conjugacy")
    _add_common(p)

    p = sub.add_parser("tree", help="Cayley-tree ball and arc-system analyses")
    _add_tree_arguments(p)

    p = sub.add_parser("one-ended", help="decide one-endedness of a graph of groups")
    p.add_argument("file", help="graph-of-groups file")
    p.add_argument("--format", choices=("text", "json"), default="text")

    p = sub.add_parser("double", help="emit the double of a free group in a family")
    _add_common(p)
    p.add_argument("-o", "--output", default=None, help="write the file here instead of stdout")

    p = sub.add_parser("present", help="presentation of a graph-of-groups fundamental group")
    p.add_argument("file", help="graph-of-groups file")
    p.add_argument("--format", choices=("text", "json"), default="text")

    return parser


def _read_family(args) -> tuple[Alphabet, tuple[CyclicWord, ...]]:
    alphabet = Alphabet(args.rank)
    family = []
    for text in args.words:
        raw = parse_word(text, alphabet)
        core, _ = cyclic_reduce(raw)
        if core is None:
            raise ParseError(f"word {text!r} reduces to the trivial word")
        if not is_cyclically_reduced(raw) or tuple(raw) != core.letters:
            message = f"word {text!r} auto-reduced to {format_word(core.letters)!r}"
            if args.strict:
                raise ParseError(message + " (--strict)")
            print(f"warning: {message}", file=sys.stderr)
        family.append(core)
    return alphabet, tuple(family)


def _render_words(family) -> list[str]:
    return [format_word(w.letters) for w in family]


def _graph_payload(graph: whitehead.WhiteheadGraph) -> dict:
    return {
        "vertices": [format_letter(x) for x in graph.vertices],
        "edges": [[format_letter(u), format_letter(v), m] for u, v, m in graph.edges()],
    }


def _steps_payload(trace: whitehead.MinimizationTrace) -> list[dict]:
    out = []
    for step in trace.steps:
        move = step.automorphism
        out.append({
            "multiplier": format_letter(move.multiplier),
            "side": sorted((format_letter(x) for x in move.side)),
            "before": step.length_before,
            "after": step.length_after,
        })
    return out


def _map_payload(mapping) -> dict:
    return {"images": [format_word(img) for img in mapping.images]}


def _bipartition_text(bipartition) -> str:
    left, right = bipartition
    fmt = lambda side: "{" + ",".join(format_letter(i) for i in sorted(side)) + "}"
    return f"{fmt(left)}|{fmt(right)}"


def _emit(payload: dict, fmt: str, text_lines: list[str], dot: str | None = None) -> str:
    if fmt == "json":
        return json.dumps(payload, indent=2) + "\n"
    if fmt == "dot":
        if dot is None:
            raise ParseError("this command has no DOT form")
        return dot
    return "\n".join(text_lines) + "\n"


def _cmd_graph(args) -> str:
    alphabet, family = _read_family(args)
    graph = whitehead.build_whitehead_graph(alphabet, family)
    payload = {
        "command": "graph",
        "input": {"rank": alphabet.rank, "words": _render_words(family)},
        "verdict": None,
        "certificate": {"graph": _graph_payload(graph)},
    }
    lines = [f"{format_letter(u)} -- {format_letter(v)} x{m}" for u, v, m in graph.edges()]
    lines.append(f"total {graph.total_edges()}")
    return _emit(payload, args.format, lines, graph.to_dot())


def _cmd_minimize(args) -> str:
    alphabet, family = _read_family(args)
    minimized, trace = whitehead.minimize(alphabet, family)
    payload = {
        "command": "minimize",
        "input": {"rank": alphabet.rank, "words": _render_words(family)},
        "verdict": None,
        "certificate": {
            "minimized": _render_words(minimized),
            "steps": _steps_payload(trace),
            "automorphism": _map_payload(trace.composite),
        },
    }
    lines = [
        f"step {i + 1}: multiplier {format_letter(s.automorphism.multiplier)}"
        f" side {{{','.join(sorted(format_letter(x) for x in s.automorphism.side))}}}"
        f" length {s.length_before} -> {s.length_after}"
        for i, s in enumerate(trace.steps)
    ]
    lines.append("minimized: " + " ".join(_render_words(minimized)))
    return _emit(payload, args.format, lines)


def _cmd_indecomposable(args) -> str:
    alphabet, family = _read_family(args)
    verdict = whitehead.decide_indecomposable(alphabet, family)
    certificate: dict = {
        "minimized": _render_words(verdict.minimized),
        "graph": _graph_payload(verdict.graph),
        "steps": _steps_payload(verdict.trace),
        "automorphism": _map_payload(verdict.automorphism),
        "bipartition": None,
    }
    if verdict.bipartition is not None:
        certificate["bipartition"] = [
            [format_letter(i) for i in sorted(side)] for side in verdict.bipartition
        ]
    payload = {
        "command": "indecomposable",
        "input": {"rank": alphabet.rank, "words": _render_words(family)},
        "verdict": verdict.decision,
        "certificate": certificate,
    }
    if verdict.is_indecomposable:
        lines = ["INDECOMPOSABLE"]
    else:
        lines = [f"DECOMPOSABLE {_bipartition_text(verdict.bipartition)}"]
    return _emit(payload, args.format, lines)


def _cmd_basis(args) -> str:
    alphabet, family = _read_family(args)
    ok, witness = whitehead.recognize_basis(alphabet, family)
    payload = {
        "command": "basis",
        "input": {"rank": alphabet.rank, "words": _render_words(family)},
        "verdict": "basis" if ok else "not-a-basis",
        "certificate": {"automorphism": _map_payload(witness)} if ok else None,
    }
    lines = ["BASIS" if ok else "NOT A BASIS"]
    return _emit(payload, args.format, lines)


def _tree_input(args, alphabet, family) -> dict:
    data = {"rank": alphabet.rank, "words": _render_words(family)}
    if args.radius is not None:
        data["radius"] = args.radius
    if args.max_radius is not None:
        data["max_radius"] = args.max_radius
    return data


def _cmd_tree(args) -> str:
    alphabet = Alphabet(args.rank)
    if args.what == "ball":
        radius = args.radius if args.radius is not None else 2
        ball = tree.build_ball(alphabet, radius, cap=args.cap)
        payload = {
            "command": "tree-ball",
            "input": {"rank": alphabet.rank, "radius": radius},
            "verdict": None,
            "certificate": {"vertices": ball.vertex_count(), "edges": ball.edge_count()},
        }
        lines = [f"vertices {ball.vertex_count()}", f"edges {ball.edge_count()}"]
        return _emit(payload, args.format, lines, ball.to_dot())

    if not args.words:
        raise ParseError(f"tree {args.what} needs at least one word")
    alphabet, family = _read_family(args)

    if args.what == "profile":
        max_radius = args.max_radius if args.max_radius is not None else 3
        profile = arcs.class_count_profile(alphabet, family, max_radius, cap=args.cap)
        payload = {
            "command": "tree-profile",
            "input": _tree_input(args, alphabet, family),
            "verdict": None,
            "certificate": {
                "profile": [{"radius": r, "classes": c} for r, c in profile]
            },
        }
        lines = [f"radius {r}: {c}" for r, c in profile]
        return _emit(payload, args.format, lines)

    radius = args.radius if args.radius is not None else 3
    ball = tree.build_ball(alphabet, radius, cap=args.cap)
    axes = arcs.enumerate_axes(family, ball)

    if args.what == "axes":
        payload = {
            "command": "tree-axes",
            "input": _tree_input(args, alphabet, family),
            "verdict": None,
            "certificate": {
                "axes": [
                    {
                        "base": format_word(a.base),
                        "period": format_word(a.period),
                        "trace": [format_word(v) for v in a.trace],
                    }
                    for a in axes
                ]
            },
        }
        lines = [
            f"axis base={format_word(a.base)} period={format_word(a.period)}" for a in axes
        ]
        lines.append(f"total {len(axes)}")
        return _emit(payload, args.format, lines)

    if args.what == "counts":
        counts = arcs.edge_counts(axes)
        rows = []
        for u, v in ball.edges():
            count = counts.get(frozenset((u, v)), 0)
            rows.append((format_word(u), format_word(v), count))
        rows.sort(key=lambda r: (r[0], r[1]))
        payload = {
            "command": "tree-counts",
            "input": _tree_input(args, alphabet, family),
            "verdict": None,
            "certificate": {
                "counts": [{"edge": [u, v], "count": c} for u, v, c in rows]
            },
        }
        lines = [f"{u} -- {v}: {c}" for u, v, c in rows]
        return _emit(payload, args.format, lines)

    if args.what == "certificate":
        cert = arcs.lemma33_certificate(ball, axes)
        witness = None if cert.witness is None else format_word(cert.witness)
        payload = {
            "command": "tree-certificate",
            "input": _tree_input(args, alphabet, family),
            "verdict": "certified" if cert.certified else "not-certified",
            "certificate": {"witness": witness},
        }
        lines = ["CERTIFIED" if cert.certified else f"NOT CERTIFIED (vertex {witness})"]
        return _emit(payload, args.format, lines)

    # star: the interval-gluing graph of the origin star
    graph = arcs.star_graph(ball, axes, ())
    payload = {
        "command": "tree-star",
        "input": _tree_input(args, alphabet, family),
        "verdict": None,
        "certificate": {
            "graph": {
                "vertices": [format_letter(x) for x in graph.vertices],
                "edges": [
                    [format_letter(u), format_letter(v), m] for u, v, m in graph.edges()
                ],
            }
        },
    }
    lines = [f"{format_letter(u)} -- {format_letter(v)} x{m}" for u, v, m in graph.edges()]
    return _emit(payload, args.format, lines, graph.to_dot("star", label=format_letter))


def _cmd_one_ended(args) -> str:
    with open(args.file, encoding="utf-8") as fh:
        graph = gog.parse_gog(fh.read())
    verdict = gog.one_ended(graph)
    certificate = None
    if not verdict.is_one_ended:
        certificate = {"vertex": verdict.witness_vertex, "reason": verdict.reason}
        if verdict.witness is not None and verdict.witness.bipartition is not None:
            certificate["bipartition"] = [
                [format_letter(i) for i in sorted(side)]
                for side in verdict.witness.bipartition
            ]
    payload = {
        "command": "one-ended",
        "input": {"file": args.file},
        "verdict": verdict.decision,
        "certificate": certificate,
    }
    if verdict.is_one_ended:
        lines = ["ONE-ENDED"]
    elif verdict.witness is not None:
        lines = [
            f"NOT ONE-ENDED (vertex {verdict.witness_vertex}:"
            f" factor split {_bipartition_text(verdict.witness.bipartition)})"
        ]
    else:
        lines = [f"NOT ONE-ENDED (vertex {verdict.witness_vertex}: {verdict.reason})"]
    return _emit(payload, args.format, lines)


def _cmd_double(args) -> str:
    alphabet, family = _read_family(args)
    graph = gog.double(alphabet, family)
    text = gog.serialize_gog(graph)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
        return f"wrote {args.output}\n"
    if args.format == "json":
        payload = {
            "command": "double",
            "input": {"rank": alphabet.rank, "words": _render_words(family)},
            "verdict": None,
            "certificate": {"file": text},
        }
        return json.dumps(payload, indent=2) + "\n"
    return text


def _cmd_present(args) -> str:
    with open(args.file, encoding="utf-8") as fh:
        graph = gog.parse_gog(fh.read())
    text = gog.presentation(graph)
    payload = {
        "command": "present",
        "input": {"file": args.file},
        "verdict": None,
        "certificate": {"presentation": text},
    }
    return _emit(payload, args.format, [text])


_HANDLERS = {
    "graph": _cmd_graph,
    "minimize": _cmd_minimize,
    "indecomposable": _cmd_indecomposable,
    "basis": _cmd_basis,
    "tree": _cmd_tree,
    "one-ended": _cmd_one_ended,
    "double": _cmd_double,
    "present": _cmd_present,
}


def main(argv=None) -> int:
    if argv is None:
        argv = sys.argv[1:]
    if argv and argv[0] == "tree":
        # A separate parser lets words and flags intermix freely, which
        # argparse cannot do through a subparser with two positionals.
        tree_parser = argparse.ArgumentParser(prog="freesplit tree")
        _add_tree_arguments(tree_parser)
        args = tree_parser.parse_intermixed_args(argv[1:])
        args.command = "tree"
    else:
        args = build_parser().parse_args(argv)
    try:
        output = _HANDLERS[args.command](args)
    except ResourceCapError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except FreesplitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    sys.stdout.write(output)
    return 0


if __name__ == "__main__":
    sys.exit(main())

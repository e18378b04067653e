"""Command-line front end.

Pipeline subcommands: validate -> components -> rfd -> code -> verify,
plus decode, resonance (DOT export), and bench.  Output is byte-stable for
a fixed input and flag set.

Exit codes: 0 ok, 2 validation, 3 not weakly elementary, 4 infinite face
not forcing, 5 verification failure, 6 oracle cap exceeded, 1 other error.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from . import corpus
from .coder import code_weakly_elementary, decode, generate_coding
from .errors import (
    CapExceeded,
    InfiniteFaceNotForcing,
    InvalidEmbedding,
    NotBipartite,
    NotWeaklyElementary,
    ParseError,
    ResgraphError,
)
from .matching import (
    elementary_decomposition,
    enumerate_matchings,
    is_elementary,
    matching_edge_ids,
)
from .planegraph import PlaneBipartiteGraph, parse_graph, validate_document
from .resonance import DEFAULT_CAP, build_resonance, to_dot
from .rfd import find_rfd
from .verify import run_verify

EXIT_OK = 0
EXIT_OTHER = 1
EXIT_VALIDATION = 2
EXIT_NOT_WEAKLY_ELEMENTARY = 3
EXIT_NOT_FORCING = 4
EXIT_VERIFY_FAILED = 5
EXIT_CAP = 6


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="resgraph",
        description=(
            "Binary codings of perfect matchings of plane bipartite graphs, "
            "with a brute-force resonance-graph oracle."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p: argparse.ArgumentParser, order: bool = False) -> None:
        src = p.add_mutually_exclusive_group(required=True)
        src.add_argument(
            "--instance",
            help="named instance: " + ", ".join(corpus.INSTANCE_NAMES),
        )
        src.add_argument("--input", help="plane-graph JSON document")
        p.add_argument("--out", help="write output here instead of stdout")
        p.add_argument(
            "--format",
            choices=("text", "json"),
            default="text",
            help="output format (default text)",
        )
        p.add_argument(
            "--cap",
            type=int,
            default=DEFAULT_CAP,
            help=f"oracle matching cap (default {DEFAULT_CAP})",
        )
        if order:
            p.add_argument(
                "--order",
                help="comma-separated face order forcing the decomposition, e.g. s1,s2,s3",
            )

    add_common(sub.add_parser("validate", help="check all embedding invariants"))
    add_common(sub.add_parser("components", help="elementary decomposition summary"))
    add_common(sub.add_parser("rfd", help="dump the reducible face decomposition"), order=True)
    add_common(sub.add_parser("code", help="generate the binary coding list"), order=True)
    pd = sub.add_parser("decode", help="map a code back to its matching")
    add_common(pd, order=True)
    pd.add_argument("code", help="binary code string")
    pr = sub.add_parser("resonance", help="export the oracle digraph")
    add_common(pr)
    pr.add_argument(
        "--dot", action="store_true", help="emit DOT instead of a text summary"
    )
    add_common(sub.add_parser("verify", help="run the full verification report"))
    add_common(sub.add_parser("bench", help="coder vs oracle wall times"))
    return parser


def _load(args: argparse.Namespace) -> tuple[PlaneBipartiteGraph, tuple[int, ...] | None]:
    if args.instance:
        inst = corpus.named(args.instance)
        return inst.graph, inst.forced_order
    text = Path(args.input).read_text()
    return parse_graph(text), None


def _parse_order(spec: str, graph: PlaneBipartiteGraph) -> tuple[int, ...]:
    out = []
    for token in spec.split(","):
        token = token.strip().lstrip("s")
        if not token.isdigit():
            raise ParseError(f"bad face name {token!r} in --order")
        out.append(int(token))
    unknown = [f for f in out if f not in graph.finite_faces]
    if unknown:
        raise ParseError(f"--order names unknown finite faces {unknown}")
    return tuple(out)


def _emit(args: argparse.Namespace, text: str) -> None:
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)


def _cmd_validate(args) -> int:
    if args.instance:
        doc = corpus.named(args.instance).graph.to_document()
    else:
        doc = json.loads(Path(args.input).read_text())
    report = validate_document(doc)
    if args.format == "json":
        payload = {"ok": report.ok, "violations": [list(v) for v in report.violations]}
        _emit(args, json.dumps(payload, indent=1) + "\n")
    else:
        _emit(args, report.to_text() + "\n")
    return EXIT_OK if report.ok else EXIT_VALIDATION


def _cmd_components(args) -> int:
    graph, _ = _load(args)
    decomp = elementary_decomposition(graph)
    payload = {
        "forbidden_edges": sorted(graph.edge_index[k] for k in decomp.forbidden),
        "weakly_elementary": decomp.weakly_elementary,
        "components": [
            {
                "vertices": len(c.graph.vertices),
                "edges": len(c.graph.edges),
                "finite_faces": list(c.graph.finite_faces),
                "trivial": c.is_trivial,
            }
            for c in decomp.components
        ],
    }
    if args.format == "json":
        _emit(args, json.dumps(payload, indent=1) + "\n")
    else:
        lines = [
            f"forbidden edges: {payload['forbidden_edges']}",
            f"weakly elementary: {decomp.weakly_elementary}",
        ]
        for i, c in enumerate(payload["components"]):
            kind = "trivial" if c["trivial"] else "elementary"
            lines.append(
                f"component {i}: {kind}, |V|={c['vertices']}, |E|={c['edges']}, "
                f"finite faces {c['finite_faces']}"
            )
        _emit(args, "\n".join(lines) + "\n")
    return EXIT_OK


def _rfd_for(graph, forced, args):
    order = forced
    if getattr(args, "order", None):
        order = _parse_order(args.order, graph)
    return find_rfd(graph, order)


def _cmd_rfd(args) -> int:
    graph, forced = _load(args)
    seq = _rfd_for(graph, forced, args)
    payload = {
        "face_order": [f"s{f}" for f in seq.face_order],
        "steps": [
            {
                "face": f"s{st.face}",
                "handle": list(st.handle),
                "orientation": st.orientation.value,
                "adjacent_faces": [f"s{f}" for f in sorted(st.adjacent_faces)],
            }
            for st in seq.steps
        ],
    }
    if args.format == "json":
        _emit(args, json.dumps(payload, indent=1) + "\n")
    else:
        lines = ["order: " + ",".join(payload["face_order"])]
        for st in payload["steps"]:
            lines.append(
                f"{st['face']}: handle {st['handle']} ({st['orientation']}), "
                f"adjacent {','.join(st['adjacent_faces']) or '-'}"
            )
        _emit(args, "\n".join(lines) + "\n")
    return EXIT_OK


def _cmd_code(args) -> int:
    graph, forced = _load(args)
    if is_elementary(graph) and len(graph.vertices) > 2:
        seq = _rfd_for(graph, forced, args)
        coding = generate_coding(seq)
        faces, codes = coding.face_order, coding.codes
    else:
        cc = code_weakly_elementary(graph)
        faces, codes = cc.face_order, cc.codes
    if args.format == "json":
        payload = {"faces": [f"s{f}" for f in faces], "codes": list(codes)}
        _emit(args, json.dumps(payload, indent=1) + "\n")
    else:
        body = "\n".join(codes)
        _emit(args, "faces: " + ",".join(f"s{f}" for f in faces) + "\n" + body + "\n")
    return EXIT_OK


def _cmd_decode(args) -> int:
    graph, forced = _load(args)
    seq = _rfd_for(graph, forced, args)
    m = decode(seq, args.code)
    ids = matching_edge_ids(graph, m)
    if args.format == "json":
        payload = {
            "code": args.code,
            "edge_ids": ids,
            "edges": [list(graph.edges[i]) for i in ids],
        }
        _emit(args, json.dumps(payload, indent=1) + "\n")
    else:
        lines = [f"{i}: ({graph.edges[i][0]},{graph.edges[i][1]})" for i in ids]
        _emit(args, "\n".join(lines) + "\n")
    return EXIT_OK


def _cmd_resonance(args) -> int:
    graph, forced = _load(args)
    digraph = build_resonance(graph, args.cap)
    codes = None
    try:
        if is_elementary(graph) and len(graph.vertices) > 2:
            coding = generate_coding(find_rfd(graph, forced))
            codes = {
                digraph.index_of(decode(coding.rfd, c, coding)): c for c in coding.codes
            }
        else:
            cc = code_weakly_elementary(graph)
            from .coder import flip_counts
            from .matching import minimum_matching

            m0 = minimum_matching(graph)
            codes = {
                i: "".join(str(x) for x in flip_counts(graph, m, cc.face_order, m0))
                for i, m in enumerate(digraph.matchings)
            }
    except ResgraphError:
        codes = None
    if args.dot:
        _emit(args, to_dot(digraph, codes))
    else:
        lines = [
            f"matchings: {len(digraph)}",
            f"flip edges: {len(digraph.edges)}",
            f"connected: {digraph.is_connected}",
        ]
        for i, j, face in digraph.edges:
            a = codes[i] if codes else f"M{i}"
            b = codes[j] if codes else f"M{j}"
            lines.append(f"{a} -> {b}  [s{face}]")
        _emit(args, "\n".join(lines) + "\n")
    return EXIT_OK


def _cmd_verify(args) -> int:
    graph, _ = _load(args)
    report = run_verify(graph, args.cap)
    if args.format == "json":
        _emit(args, report.to_json() + "\n")
    else:
        _emit(args, report.to_text() + "\n")
    return EXIT_OK if report.passed else EXIT_VERIFY_FAILED


def _cmd_bench(args) -> int:
    graph, forced = _load(args)
    t0 = time.perf_counter()
    if is_elementary(graph) and len(graph.vertices) > 2:
        coding = generate_coding(find_rfd(graph, forced))
        count = len(coding.codes)
    else:
        count = len(code_weakly_elementary(graph).codes)
    coder_s = time.perf_counter() - t0

    t0 = time.perf_counter()
    digraph = build_resonance(graph, args.cap)
    oracle_s = time.perf_counter() - t0

    lines = [
        f"{'pipeline':<10} {'seconds':>10} {'outputs':>10}",
        f"{'coder':<10} {coder_s:>10.4f} {count:>10}",
        f"{'oracle':<10} {oracle_s:>10.4f} {len(digraph):>10}",
    ]
    _emit(args, "\n".join(lines) + "\n")
    return EXIT_OK


_COMMANDS = {
    "validate": _cmd_validate,
    "components": _cmd_components,
    "rfd": _cmd_rfd,
    "code": _cmd_code,
    "decode": _cmd_decode,
    "resonance": _cmd_resonance,
    "verify": _cmd_verify,
    "bench": _cmd_bench,
}


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except (ParseError, InvalidEmbedding, NotBipartite) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except NotWeaklyElementary as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NOT_WEAKLY_ELEMENTARY
    except InfiniteFaceNotForcing as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NOT_FORCING
    except CapExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except ResgraphError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_OTHER
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_OTHER


if __name__ == "__main__":
    sys.exit(main())

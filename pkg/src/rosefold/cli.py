"""Command-line interface.

Exit codes are a contract: 0 affirmative, 1 negative or declined, 2 usage
or parse errors, 3 internal inconsistency (a certificate failing its own
verification, which should never happen).

Output is line-oriented and diff-stable: edge lists are sorted, classes
canonically rotated, and every randomized command is keyed by a seed.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import acceptance
from .folding import fold_report_lines, fold_sequence_to_dot, fold_to_completion
from .graphs import LabeledGraph, parse_graph_text, wedge_of_words
from .oracles import (
    is_verified_automorphism,
    parse_endomorphism_text,
    primitive_orbit,
    random_separable_set,
    separable_witness_to_text,
)
from .tameness import (
    certificate_to_text,
    decide_tame,
    recognize_almost_rose,
    standard_almost_rose,
    verify_certificate,
    whitehead_of_almost_rose,
)
from .whitehead import WhiteheadGraph, components, cut_vertices, whitehead_of_classes, whitehead_to_dot
from .words import (
    CyclicWord,
    RankError,
    TrivialWordError,
    WordSyntaxError,
    conjugacy_class,
    free_reduce,
    letter_from_char,
    letter_key,
    letter_to_char,
    normalize_classes,
    parse_word,
)


class CliError(Exception):
    def __init__(self, message: str, code: int = 2):
        super().__init__(message)
        self.code = code


def _resolve_rank(texts: list[str], rank_flag: int | None) -> int:
    max_index = 0
    for text in texts:
        for c in text:
            try:
                max_index = max(max_index, abs(letter_from_char(c)))
            except WordSyntaxError as exc:
                raise CliError(str(exc)) from exc
    if rank_flag is not None:
        if rank_flag < 2:
            raise CliError(f"rank must be at least 2, got {rank_flag}")
        if max_index > rank_flag:
            raise CliError(f"a letter with index {max_index} exceeds rank {rank_flag}")
        return rank_flag
    return max(2, max_index)


def _parse_classes(texts: list[str], rank_flag: int | None) -> tuple[tuple[CyclicWord, ...], int]:
    if not texts:
        raise CliError("no words given")
    rank = _resolve_rank(texts, rank_flag)
    classes = []
    try:
        for text in texts:
            classes.append(conjugacy_class(parse_word(text, rank)))
    except TrivialWordError as exc:
        raise CliError(f"trivial word has no conjugacy class: {exc}") from exc
    except (WordSyntaxError, RankError) as exc:
        raise CliError(str(exc)) from exc
    return normalize_classes(classes), rank


def _edge_token(pair: tuple[int, int]) -> str:
    return f"{letter_to_char(pair[0])}-{letter_to_char(pair[1])}"


def _wh_report(w: WhiteheadGraph) -> list[str]:
    lines = [f"rank {w.rank}"]
    tokens = [_edge_token(p) for p in w.sorted_edges()]
    lines.append("edges: " + (" ".join(tokens) if tokens else "(none)"))
    comps = components(w)
    lines.append(
        "components: " + " ".join("{" + "".join(letter_to_char(v) for v in comp) + "}" for comp in comps)
    )
    cuts = sorted(cut_vertices(w), key=letter_key)
    cut_text = " ".join(letter_to_char(v) for v in cuts) if cuts else "(none)"
    lines.append(f"cut vertices: {cut_text}")
    if len(comps) > 1:
        lines.append(f"disconnected ({len(comps)} components)")
    elif cuts:
        lines.append(f"connected; cut vertices: {cut_text}")
    else:
        lines.append("connected; no cut vertex")
    return lines


def _relabel_text(targets: tuple[int, ...]) -> str:
    return " ".join(f"{i}->{t}" for i, t in enumerate(targets, start=1))


def cmd_reduce(args) -> int:
    rank = _resolve_rank([args.word], args.rank)
    try:
        w = parse_word(args.word, rank)
    except (WordSyntaxError, RankError) as exc:
        raise CliError(str(exc)) from exc
    print(str(free_reduce(w)))
    return 0


def cmd_wh(args) -> int:
    classes, rank = _parse_classes(args.words, args.rank)
    w = whitehead_of_classes(classes, rank)
    if args.dot:
        print(whitehead_to_dot(w), end="")
        return 0
    for line in _wh_report(w):
        print(line)
    return 0


def cmd_cutvx(args) -> int:
    classes, rank = _parse_classes(args.words, args.rank)
    w = whitehead_of_classes(classes, rank)
    cuts = sorted(cut_vertices(w), key=letter_key)
    print("cut vertices: " + (" ".join(letter_to_char(v) for v in cuts) if cuts else "(none)"))
    return 0


def cmd_tame(args) -> int:
    classes, rank = _parse_classes(args.words, args.rank)
    cert = decide_tame(classes, rank)
    if not verify_certificate(classes, cert, rank):
        print("internal error: certificate failed self-verification", file=sys.stderr)
        return 3
    text = certificate_to_text(cert)
    print(text, end="")
    if args.out:
        Path(args.out).write_text(text)
    return 0 if cert.tame else 1


def cmd_rose_wh(args) -> int:
    try:
        rose = standard_almost_rose(args.n, args.k, args.l)
    except ValueError as exc:
        raise CliError(str(exc)) from exc
    w = whitehead_of_almost_rose(rose)
    if args.dot:
        print(whitehead_to_dot(w), end="")
        return 0
    for line in _wh_report(w):
        print(line)
    return 0


def _fold_input_graph(args) -> LabeledGraph:
    if args.basis:
        texts = [t for t in args.basis.split(",") if t]
        if not texts:
            raise CliError("empty basis")
        rank = _resolve_rank(texts, args.rank)
        try:
            ws = tuple(parse_word(t, rank) for t in texts)
            return wedge_of_words(ws, rank).graph
        except (WordSyntaxError, RankError, ValueError) as exc:
            raise CliError(str(exc)) from exc
    try:
        return parse_graph_text(Path(args.graph).read_text())
    except OSError as exc:
        raise CliError(f"cannot read graph file: {exc}") from exc
    except (ValueError, RankError) as exc:
        raise CliError(str(exc)) from exc


def cmd_fold(args) -> int:
    g = _fold_input_graph(args)
    seq = fold_to_completion(g)
    if args.dot:
        print(fold_sequence_to_dot(seq), end="")
        return 0
    spec = None
    if args.witness:
        if not args.basis:
            raise CliError("--witness only applies to --basis mode")
        try:
            spec = parse_endomorphism_text(Path(args.witness).read_text())
        except OSError as exc:
            raise CliError(f"cannot read witness file: {exc}") from exc
        except ValueError as exc:
            raise CliError(str(exc)) from exc
        basis_words = [t for t in args.basis.split(",") if t]
        if [str(w) for w in spec.images] != basis_words:
            raise CliError("witness images do not match the supplied basis")
    for line in fold_report_lines(seq):
        print(line)
    witness_checked = False
    if spec is not None:
        if not is_verified_automorphism(spec):
            print("witness: not a verified automorphism")
            return 1
        print("witness: verified automorphism")
        witness_checked = True
    if not seq.steps:
        print("already folded; no fold steps")
        return 0
    if any(step.betti_dropped for step in seq.steps):
        drop_at = next(i for i, s in enumerate(seq.steps, start=1) if s.betti_dropped)
        print(f"penultimate recognition declined: betti-dropping fold at step {drop_at}")
        return 1
    penultimate = seq.snapshots[-2]
    rose = recognize_almost_rose(penultimate)
    if rose is None:
        print("penultimate recognition declined: not an almost-rose")
        return 1
    print(
        f"penultimate: almost-rose k={rose.k} l={rose.l}"
        f" relabel [{_relabel_text(rose.relabeling.targets)}]"
    )
    if witness_checked:
        from .graphs import closed_path_reading
        from .words import cyclic_reduce

        w1 = basis_words[0]
        cyc, conj = cyclic_reduce(parse_word(w1, g.rank))
        if len(conj) == 0 and closed_path_reading(rose.graph, cyc) is not None:
            print("first word readable in almost-rose: yes")
        else:
            print("first word readable in almost-rose: no")
            return 1
    return 0


def cmd_orbit(args) -> int:
    if args.n < 2 or args.max_len < 1 or args.budget < 1:
        raise CliError("need n >= 2, max_len >= 1, budget >= 1")
    orbit = primitive_orbit(args.n, args.max_len, args.budget)
    classes = normalize_classes(list(orbit.classes))
    lines = [str(c) for c in classes]
    if args.out:
        Path(args.out).write_text("\n".join(lines) + "\n")
    else:
        for line in lines:
            print(line)
    print(f"classes: {len(classes)}")
    print(f"complete: {'yes' if orbit.complete else 'no'}")
    return 0


def cmd_sep(args) -> int:
    if args.n < 2 or args.count < 1 or args.max_len < 2:
        raise CliError("need n >= 2, count >= 1, max_len >= 2")
    try:
        classes, witness = random_separable_set(args.n, args.seed, args.count, args.max_len)
    except (ValueError, RuntimeError) as exc:
        raise CliError(str(exc)) from exc
    class_lines = "\n".join(str(c) for c in classes) + "\n"
    witness_text = separable_witness_to_text(witness)
    if args.out:
        Path(args.out + ".classes").write_text(class_lines)
        Path(args.out + ".witness").write_text(witness_text)
    else:
        print(class_lines, end="")
        print(witness_text, end="")
    print(f"classes: {len(classes)}")
    print(f"split: {witness.split}")
    return 0


def cmd_check(args) -> int:
    selected = acceptance.CRITERIA
    if args.only:
        unknown = [name for name in args.only if name not in acceptance.CRITERIA]
        if unknown:
            raise CliError(f"unknown criteria: {' '.join(unknown)}")
        selected = {name: acceptance.CRITERIA[name] for name in args.only}
    passed = True
    for criterion in selected.values():
        result = criterion()
        print(result.line())
        passed &= result.passed
    return 0 if passed else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rosefold",
        description="Folding machinery, Whitehead graphs, and tameness certificates",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("reduce", help="freely reduce a word")
    p.add_argument("word")
    p.add_argument("--rank", type=int)
    p.set_defaults(fn=cmd_reduce)

    p = sub.add_parser("wh", help="Whitehead graph of conjugacy classes")
    p.add_argument("words", nargs="+")
    p.add_argument("--rank", type=int)
    p.add_argument("--dot", action="store_true")
    p.set_defaults(fn=cmd_wh)

    p = sub.add_parser("cutvx", help="cut vertices of the Whitehead graph")
    p.add_argument("words", nargs="+")
    p.add_argument("--rank", type=int)
    p.set_defaults(fn=cmd_cutvx)

    p = sub.add_parser("tame", help="decide tameness with a certificate")
    p.add_argument("words", nargs="+")
    p.add_argument("--rank", type=int)
    p.add_argument("--out", help="also write the certificate to this file")
    p.set_defaults(fn=cmd_tame)

    p = sub.add_parser("fold", help="fold a wedge of words or a graph file")
    p.add_argument("--basis", help="comma-separated words")
    p.add_argument("--graph", help="graph file")
    p.add_argument("--witness", help="basis witness file (image/inverse lines)")
    p.add_argument("--rank", type=int)
    p.add_argument("--dot", action="store_true")
    p.set_defaults(fn=cmd_fold)

    p = sub.add_parser("rose-wh", help="Whitehead graph of the standard almost-rose")
    p.add_argument("n", type=int)
    p.add_argument("k", type=int)
    p.add_argument("l", type=int)
    p.add_argument("--dot", action="store_true")
    p.set_defaults(fn=cmd_rose_wh)

    p = sub.add_parser("orbit", help="primitive classes via Nielsen moves")
    p.add_argument("n", type=int)
    p.add_argument("max_len", type=int)
    p.add_argument("--budget", type=int, default=2_000_000)
    p.add_argument("--out")
    p.set_defaults(fn=cmd_orbit)

    p = sub.add_parser("sep", help="seeded separable set with witness")
    p.add_argument("n", type=int)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--count", type=int, default=4)
    p.add_argument("--max-len", type=int, default=10)
    p.add_argument("--out", help="file prefix for .classes and .witness")
    p.set_defaults(fn=cmd_sep)

    p = sub.add_parser("check", help="run the acceptance criteria")
    p.add_argument("--only", nargs="*", help="criterion names to run")
    p.set_defaults(fn=cmd_check)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "fold" and bool(args.basis) == bool(args.graph):
        print("error: fold needs exactly one of --basis or --graph", file=sys.stderr)
        return 2
    try:
        return args.fn(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())

"""Command line interface.

Subcommands:

  decide      run the stability decision on a subgroup file
  membership  test whether a word lies in a subgroup
  intersect   print a free basis of the intersection of two subgroups
  reps        print candidate double-coset representatives with ranks
  dot         write the core graph in Graphviz DOT format
  oracle      exhaustive counterexample search at a given radius
  corpus      decider-versus-oracle agreement over a generated corpus

Subgroup files: the first non-comment line is ``alphabet: <letters>``,
every following non-empty line is one generator word; ``#`` starts a
comment.  A file whose first character is ``{`` is instead parsed as JSON
with keys "alphabet" and "generators".

Exit codes: decide returns 0 for stable, 1 for not stable; oracle returns
0 for no witness, 1 for a witness; corpus returns 1 on any disagreement;
every command returns 2 on errors, with a diagnostic on stderr.  Nothing
here uses randomness, so outputs are byte-stable across runs.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from . import __version__
from .oracle import BallSpec, brute_stability_witness, enumerate_ball
from .stallings import Subgroup, build_graph, intersection, to_dot
from .stability import (
    NOT_STABLE,
    StabilityReport,
    candidate_reps,
    decide_stability,
    dedup_double_cosets,
)
from .words import Alphabet, Word

__all__ = [
    "main",
    "load_subgroup",
    "parse_subgroup_text",
    "report_document",
    "corpus_cases",
]


# ---------------------------------------------------------------------------
# subgroup files
# ---------------------------------------------------------------------------


def parse_subgroup_text(text: str) -> Subgroup:
    """Parse the subgroup file format (line-based or JSON)."""
    if text.lstrip().startswith("{"):
        doc = json.loads(text)
        alphabet = Alphabet(tuple(doc["alphabet"]))
        gens = tuple(alphabet.word(s) for s in doc.get("generators", []))
        return build_graph(gens, alphabet)
    alphabet = None
    gens = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if alphabet is None:
            if not line.startswith("alphabet:"):
                raise ValueError(
                    f"line {lineno}: expected 'alphabet: <letters>' before generators"
                )
            alphabet = Alphabet(tuple(line[len("alphabet:") :].strip()))
        else:
            gens.append(alphabet.word(line))
    if alphabet is None:
        raise ValueError("missing 'alphabet:' line")
    return build_graph(tuple(gens), alphabet)


def load_subgroup(path: str) -> Subgroup:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ValueError(f"cannot read {path}: {exc}") from None
    try:
        return parse_subgroup_text(text)
    except (ValueError, KeyError, json.JSONDecodeError) as exc:
        raise ValueError(f"{path}: {exc}") from None


# ---------------------------------------------------------------------------
# report document
# ---------------------------------------------------------------------------


def report_document(H: Subgroup, report: StabilityReport) -> dict:
    """Machine-readable report; identity words render as empty strings.

    Construction order is fixed and the pipeline is deterministic, so the
    serialized document is byte-stable across runs on the same input.
    """
    reps = []
    for analysis in report.analyses:
        entry = {
            "g": analysis.rep.g.machine_str(),
            "rank": analysis.rep.intersection_rank,
            "outcome": analysis.outcome,
        }
        if analysis.generator is not None:
            entry["generator"] = analysis.generator.machine_str()
        if analysis.root is not None:
            entry["root"] = analysis.root.machine_str()
        if analysis.exponent is not None:
            entry["exponent"] = analysis.exponent
        if analysis.witness is not None:
            entry["witness"] = analysis.witness.machine_str()
        reps.append(entry)
    doc = {
        "verdict": report.verdict,
        "alphabet": str(H.alphabet),
        "generators": [g.machine_str() for g in H.generators],
        "reps": reps,
    }
    if report.certificate is not None:
        doc["certificate"] = certificate_document(report.certificate)
    doc["version"] = __version__
    return doc


def certificate_document(certificate) -> dict:
    return {
        "u": certificate.u.machine_str(),
        "v": certificate.v.machine_str(),
        "g": certificate.g.machine_str(),
    }


def _render_human(H: Subgroup, report: StabilityReport, elapsed: float) -> str:
    lines = [
        f"alphabet: {H.alphabet}",
        "generators: " + (" ".join(str(g) for g in H.generators) or "(none)"),
        f"verdict: {report.verdict}",
        f"candidates analyzed: {len(report.analyses)}",
    ]
    for analysis in report.analyses:
        parts = [
            f"  g={analysis.rep.g}",
            f"rank={analysis.rep.intersection_rank}",
            f"outcome={analysis.outcome}",
        ]
        if analysis.generator is not None:
            parts.append(f"generator={analysis.generator}")
        if analysis.root is not None:
            parts.append(f"root={analysis.root}")
        if analysis.exponent is not None:
            parts.append(f"exponent={analysis.exponent}")
        if analysis.witness is not None:
            parts.append(f"witness={analysis.witness}")
        lines.append(" ".join(parts))
    if report.certificate is not None:
        c = report.certificate
        lines.append(f"certificate: u={c.u} v={c.v} g={c.g}")
    lines.append(f"time_ms: {elapsed * 1000.0:.1f}")
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# corpus
# ---------------------------------------------------------------------------


def corpus_cases(max_gens: int, max_len: int, alphabet: Alphabet) -> list[Subgroup]:
    """All subgroups with <= max_gens generators of length <= max_len.

    Presentations are enumerated in sorted order and deduplicated by the
    canonical folded graph, so two generator lists spelling the same
    subgroup are decided once.
    """
    from itertools import combinations

    words = [w for w in enumerate_ball(BallSpec(alphabet, max_len)) if not w.is_identity]
    cases: list[Subgroup] = []
    seen = set()
    for size in range(max_gens + 1):
        for gens in combinations(words, size):
            H = build_graph(gens, alphabet)
            if H.graph in seen:
                continue
            seen.add(H.graph)
            cases.append(H)
    return cases


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def cmd_decide(args) -> int:
    H = load_subgroup(args.path)
    started = time.perf_counter()
    report = decide_stability(H)
    elapsed = time.perf_counter() - started
    if args.json:
        print(json.dumps(report_document(H, report), indent=2))
    elif args.certificate:
        if report.certificate is None:
            print("null")
        else:
            print(json.dumps(certificate_document(report.certificate), indent=2))
    else:
        print(_render_human(H, report, elapsed))
    return 0 if report.verdict != NOT_STABLE else 1


def cmd_membership(args) -> int:
    H = load_subgroup(args.path)
    w = H.alphabet.word(args.word)
    print("true" if H.contains(w) else "false")
    return 0


def cmd_intersect(args) -> int:
    A = load_subgroup(args.path_a)
    B = load_subgroup(args.path_b)
    K = intersection(A, B)
    for w in K.generators:
        print(w)
    return 0


def cmd_reps(args) -> int:
    H = load_subgroup(args.path)
    if H.is_trivial:
        return 0
    reps = dedup_double_cosets(H, candidate_reps(H))
    for rep in sorted(reps, key=lambda r: r.g.shortlex_key()):
        print(f"{rep.g} {rep.intersection_rank}")
    return 0


def cmd_dot(args) -> int:
    H = load_subgroup(args.path)
    text = to_dot(H.graph)
    if args.out is None:
        print(text, end="")
    else:
        Path(args.out).write_text(text)
    return 0


def cmd_oracle(args) -> int:
    H = load_subgroup(args.path)
    verdict = brute_stability_witness(H, args.radius)
    if verdict.witness is None:
        print(
            f"none up to radius {verdict.searched_radius} "
            f"(exact h-bound {verdict.h_bound_used})"
        )
        return 0
    u, v, g = verdict.witness
    print(f"witness u={u} v={v} g={g}")
    return 1


def cmd_corpus(args) -> int:
    alphabet = Alphabet(("a", "b"))
    cases = corpus_cases(args.max_gens, args.max_len, alphabet)
    disagreements = 0
    unstable = 0
    for H in cases:
        report = decide_stability(H)
        oracle = brute_stability_witness(H, args.radius)
        decided_unstable = report.verdict == NOT_STABLE
        oracle_unstable = oracle.witness is not None
        ok = decided_unstable == oracle_unstable
        if decided_unstable:
            unstable += 1
        if not ok:
            disagreements += 1
        gens = ",".join(str(g) for g in H.generators) or "1"
        oracle_str = (
            "none" if oracle.witness is None else "witness " + ",".join(map(str, oracle.witness))
        )
        print(f"{gens} verdict={report.verdict} oracle={oracle_str} {'ok' if ok else 'MISMATCH'}")
    agreement = 100.0 * (len(cases) - disagreements) / len(cases) if cases else 100.0
    print(f"agreement {agreement:.1f}% ({len(cases)} cases, {unstable} not stable)")
    return 0 if disagreements == 0 else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="conjstab",
        description="Decide conjugacy stability of subgroups of free groups.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("decide", help="decide conjugacy stability (exit 0 stable, 1 not)")
    p.add_argument("path", help="subgroup file")
    p.add_argument("--json", action="store_true", help="emit the JSON report")
    p.add_argument("--certificate", action="store_true", help="emit only the certificate JSON")
    p.set_defaults(func=cmd_decide)

    p = sub.add_parser("membership", help="test membership of a word")
    p.add_argument("path", help="subgroup file")
    p.add_argument("word", help="word in text form")
    p.set_defaults(func=cmd_membership)

    p = sub.add_parser("intersect", help="basis of the intersection of two subgroups")
    p.add_argument("path_a", help="first subgroup file")
    p.add_argument("path_b", help="second subgroup file")
    p.set_defaults(func=cmd_intersect)

    p = sub.add_parser("reps", help="candidate double-coset representatives with ranks")
    p.add_argument("path", help="subgroup file")
    p.set_defaults(func=cmd_reps)

    p = sub.add_parser("dot", help="write the core graph as Graphviz DOT")
    p.add_argument("path", help="subgroup file")
    p.add_argument("out", nargs="?", default=None, help="output file (default stdout)")
    p.set_defaults(func=cmd_dot)

    p = sub.add_parser("oracle", help="exhaustive witness search (exit 1 if witness found)")
    p.add_argument("path", help="subgroup file")
    p.add_argument("radius", type=int, help="search radius")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("corpus", help="decider vs oracle agreement over a corpus")
    p.add_argument("max_gens", type=int, help="maximum number of generators")
    p.add_argument("max_len", type=int, help="maximum generator length")
    p.add_argument("radius", type=int, help="oracle search radius")
    p.set_defaults(func=cmd_corpus)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

"""Command-line entry point.

Exit status is uniform: 0 when the checked property holds (answers found,
consistent, similar, closed, homomorphic, selftest passed), 1 when it does
not, 2 on malformed input or any other usage error.
"""

from __future__ import annotations

import argparse
import random
import re
import sys
from importlib import resources
from pathlib import Path
from typing import Callable, Sequence

from .answering import certain_answers, entails, inconsistency_reasons
from .chase import answers_over_chase, chase, chase_consistent
from .errors import DLError
from .reduction import HomInstance, brute_force_hom, encode
from .reformulation import DEFAULT_LIMIT, reformulate
from .simulation import (
    DEFAULT_CAP,
    KINDS,
    SimulationRelation,
    check_simulation,
    concept_preserved,
    fo_closed_under,
    format_pair,
    kind_for,
    maximal_simulation,
)
from .syntax import (
    parse_concept,
    parse_formula,
    parse_graph,
    parse_interpretation,
    parse_kb,
    parse_query,
    parse_relation,
    print_disjunct,
    print_interpretation,
    print_kb,
    print_query,
)

HOLDS, FAILS, ERROR = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    return Path(path).read_text(encoding="utf-8")


def _load(path: str, parse: Callable):
    try:
        return parse(_read(path))
    except DLError as exc:
        raise DLError(f"{path}:{exc}") from exc


def _write(path: str | None, text: str, out):
    if path is None or path == "-":
        out.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8")


def _tuple_arg(text: str) -> tuple[str, ...]:
    parts = [p.strip().strip('"') for p in text.split(",")] if text.strip() else []
    if any(not p for p in parts):
        raise UsageError(f"malformed --tuple {text!r}; expected c1,c2,...")
    return tuple(parts)


def _fmt_tuple(t: Sequence[str]) -> str:
    return ", ".join(t)


# -- subcommands ------------------------------------------------------------------


def cmd_answer(args, out) -> int:
    kb = _load(args.kb, parse_kb)
    q = _load(args.query, parse_query)
    answers = certain_answers(kb, q, args.limit)
    if args.tuple is not None:
        tup = _tuple_arg(args.tuple)
        holds = entails(kb, q, tup, args.limit)
    else:
        holds = bool(answers.tuples)
    if args.porcelain:
        out.write(f"inconsistent\t{str(answers.inconsistent).lower()}\n")
        if args.tuple is None and q.arity:
            for t in answers.sorted():
                out.write("answer\t" + "\t".join(t) + "\n")
        out.write(f"holds\t{str(holds).lower()}\n")
        return HOLDS if holds else FAILS
    if answers.inconsistent:
        out.write("INCONSISTENT\n")
    if args.tuple is not None or q.arity == 0:
        out.write(f"{str(holds).lower()}\n")
    else:
        for t in answers.sorted():
            out.write(_fmt_tuple(t) + "\n")
    if args.trace:
        for t in answers.sorted():
            w = answers.witnesses.get(t)
            if w is None:
                continue
            binding = ", ".join(f"{v.name}={e}" for v, e in sorted(w.assignment.items(), key=lambda kv: kv[0].name))
            out.write(f"# ({_fmt_tuple(t)}) via {print_disjunct(w.disjunct, q.name)}")
            out.write(f" with {binding}\n" if binding else "\n")
    return HOLDS if holds else FAILS


def cmd_rewrite(args, out) -> int:
    kb = _load(args.kb, parse_kb)
    q = _load(args.query, parse_query)
    rewritten, trace = reformulate(kb.tbox, q, args.limit)
    if args.trace:
        for step in trace.steps:
            out.write(f"# {step.rule}: {print_disjunct(step.before, q.name)} => {print_disjunct(step.after, q.name)}\n")
    out.write(print_query(rewritten))
    return HOLDS


def cmd_consistent(args, out) -> int:
    kb = _load(args.kb, parse_kb)
    reasons = inconsistency_reasons(kb, args.limit)
    if args.porcelain:
        out.write(f"consistent\t{str(not reasons).lower()}\n")
        for r in reasons:
            out.write(f"violated\t{r}\n")
    else:
        out.write("consistent\n" if not reasons else "INCONSISTENT\n")
        for r in reasons:
            out.write(f"# violates {r}\n")
    return FAILS if reasons else HOLDS


def cmd_chase(args, out) -> int:
    kb = _load(args.kb, parse_kb)
    model = chase(kb, args.depth)
    _write(args.output, print_interpretation(model.interpretation), out)
    return HOLDS


def cmd_simulate(args, out) -> int:
    i = _load(args.source, parse_interpretation)
    j = _load(args.target, parse_interpretation)
    rel = maximal_simulation(i, j, args.kind, args.cap)
    for p in rel.sorted_pairs():
        out.write(format_pair(p) + "\n")
    similar = bool(rel)
    if args.porcelain:
        out.write(f"similar\t{str(similar).lower()}\n")
    else:
        out.write(f"{'SIMILAR' if similar else 'NOT SIMILAR'} ({args.kind}, {len(rel)} pairs)\n")
    return HOLDS if similar else FAILS


_VERDICT = re.compile(r"(NOT )?SIMILAR\b.*|similar\t.*")


def _relation_text(text: str) -> frozenset:
    # accept `simulate` output verbatim: blank out its verdict line, keep line numbers
    lines = ["" if _VERDICT.fullmatch(line.strip()) else line for line in text.split("\n")]
    return parse_relation("\n".join(lines))


def cmd_closure(args, out) -> int:
    if (args.concept is None) == (args.formula is None):
        raise UsageError("closure needs exactly one of --concept or --formula")
    i = _load(args.source, parse_interpretation)
    j = _load(args.target, parse_interpretation)
    if args.concept is not None:
        subject = parse_concept(args.concept)
        kind = args.kind or kind_for(subject)
    else:
        subject = parse_formula(args.formula)
        kind = args.kind or "combined"
    if args.relation:
        rel = SimulationRelation(kind, _load(args.relation, _relation_text))
        check = check_simulation(rel, i, j)
        if not check.valid:
            out.write(f"# warning: the relation is not a {kind} simulation ({len(check.violations)} violations)\n")
            out.write(f"# first: {check.violations[0]}\n")
    else:
        rel = maximal_simulation(i, j, kind, args.cap)
    if args.concept is not None:
        report = concept_preserved(subject, i, j, rel)
    else:
        report = fo_closed_under(subject, i, j, rel)
    if args.porcelain:
        out.write(f"closed\t{str(report.verdict).lower()}\n")
        for c in report.failures:
            out.write(f"counterexample\t{c.describe()}\n")
    else:
        out.write("CLOSED\n" if report.verdict else "NOT CLOSED\n")
        if report.counterexample is not None:
            out.write(f"counterexample: {report.counterexample.describe()}\n")
    return HOLDS if report.verdict else FAILS


def _hom_instance(args) -> HomInstance:
    return HomInstance(_load(args.g1, parse_graph), _load(args.g2, parse_graph))


def cmd_encode_hom(args, out) -> int:
    kb, q = encode(_hom_instance(args))
    if args.kb is None and args.query is None:
        out.write(print_kb(kb))
        out.write("\n")
        out.write(print_query(q))
        return HOLDS
    _write(args.kb, print_kb(kb), out)
    _write(args.query, print_query(q), out)
    return HOLDS


def cmd_check_hom(args, out) -> int:
    holds = brute_force_hom(_hom_instance(args), args.budget)
    out.write(f"{str(holds).lower()}\n")
    return HOLDS if holds else FAILS


# -- selftest -----------------------------------------------------------------------


def load_hom_corpus(text: str) -> list[tuple[str, HomInstance, bool]]:
    """Blocks of ``pair NAME yes|no`` followed by ``G1`` and ``G2`` sections in graph syntax."""
    cases = []
    current = None
    for raw in text.splitlines() + ["pair __end__ no"]:
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("pair "):
            if current is not None:
                name, expect, sections = current
                g1, g2 = (parse_graph("\n".join(sections[k])) for k in ("G1", "G2"))
                cases.append((name, HomInstance(g1, g2), expect))
            _, name, expect = line.split()
            if expect not in ("yes", "no"):
                raise DLError(f"corpus entry {name}: expected 'yes' or 'no', got {expect!r}")
            current = (name, expect == "yes", {"G1": [], "G2": []})
            section = None
        elif line in ("G1", "G2"):
            section = line
        elif current is None or section is None:
            raise DLError(f"corpus line outside a G1/G2 section: {raw!r}")
        else:
            current[2][section].append(line)
    return cases


def bundled(name: str) -> str:
    return resources.files("dllite").joinpath("data", name).read_text(encoding="utf-8")


def _example_checks() -> list[tuple[str, bool, str]]:
    from .fixtures import EXAMPLE_PAIRS, example_i, example_j, example_phi
    from .generate import right_concepts

    i, j = example_i(), example_j()
    rel = maximal_simulation(i, j, "combined")
    rows = [
        ("example: relation pairs", all(p in rel for p in EXAMPLE_PAIRS), f"{len(rel)} pairs"),
        ("example: DL-similar", bool(rel), ""),
    ]
    report = fo_closed_under(example_phi(), i, j, rel)
    cx = report.counterexample
    rows.append(("example: formula not closed", not report.verdict, cx.describe() if cx else "closed"))
    broken = []
    for c in right_concepts(["A"], ["P"], 2):
        if not concept_preserved(c, i, j, maximal_simulation(i, j, kind_for(c))):
            broken.append(c)
    rows.append(("example: concepts preserved", not broken, f"{len(broken)} failures"))
    return rows


def _hom_checks() -> list[tuple[str, bool, str]]:
    cases = load_hom_corpus(bundled("hom_corpus.txt"))
    bad = []
    for name, inst, expect in cases:
        kb, q = encode(inst)
        via_query = bool(certain_answers(kb, q).tuples)
        if not (via_query == brute_force_hom(inst) == expect):
            bad.append(name)
    return [("reduction: iff on corpus", not bad, f"{len(cases)} pairs" + (f", failing {', '.join(bad)}" if bad else ""))]


def _rewrite_checks(seed: int, n: int, depth: int) -> list[tuple[str, bool, str]]:
    from .generate import random_kb, random_query

    rng = random.Random(seed)
    mismatches = 0
    for _ in range(n):
        kb = random_kb(rng)
        q = random_query(rng)
        answers = certain_answers(kb, q)
        if answers.inconsistent != (not chase_consistent(kb, depth)):
            mismatches += 1
        elif not answers.inconsistent and answers.tuples != answers_over_chase(kb, q, depth):
            mismatches += 1
    return [("rewrite vs chase", mismatches == 0, f"{n} instances, {mismatches} mismatches")]


def cmd_selftest(args, out) -> int:
    out.write(f"seed {args.seed}\n")
    groups = [
        ("example", _example_checks),
        ("reduction", _hom_checks),
        ("rewrite vs chase", lambda: _rewrite_checks(args.seed, args.instances, args.depth)),
    ]
    rows = []
    for label, group in groups:
        try:
            found = group()
        except DLError as exc:
            found = [(label, False, f"error: {exc}")]
        rows.extend(found)
    width = max(len(r[0]) for r in rows)
    for name, ok, detail in rows:
        out.write(f"{'PASS' if ok else 'FAIL'}  {name:<{width}}  {detail}".rstrip() + "\n")
    passed = sum(r[1] for r in rows)
    out.write(f"{passed}/{len(rows)} passed\n")
    return HOLDS if passed == len(rows) else FAILS


# -- wiring ------------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="dllite", description="DL-Lite query answering and simulation checks.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def limit(sp):
        sp.add_argument("--limit", type=int, default=DEFAULT_LIMIT, help="maximum number of rewritten disjuncts")

    def porcelain(sp):
        sp.add_argument("--porcelain", action="store_true", help="stable tab-separated output")

    sp = sub.add_parser("answer", help="certain answers of a query over a KB")
    sp.add_argument("kb")
    sp.add_argument("query")
    sp.add_argument("--tuple", help="decide a single tuple, e.g. --tuple a,b (empty for boolean)")
    sp.add_argument("--trace", action="store_true", help="show the disjunct and match behind each answer")
    porcelain(sp)
    limit(sp)
    sp.set_defaults(run=cmd_answer)

    sp = sub.add_parser("rewrite", help="perfect reformulation of a query")
    sp.add_argument("kb")
    sp.add_argument("query")
    sp.add_argument("--trace", action="store_true", help="emit rewriting steps as comments")
    limit(sp)
    sp.set_defaults(run=cmd_rewrite)

    sp = sub.add_parser("consistent", help="KB consistency")
    sp.add_argument("kb")
    porcelain(sp)
    limit(sp)
    sp.set_defaults(run=cmd_consistent)

    sp = sub.add_parser("chase", help="bounded chase model of a KB")
    sp.add_argument("kb")
    sp.add_argument("--depth", type=int, required=True)
    sp.add_argument("-o", "--output", help="write the .int file here instead of stdout")
    sp.set_defaults(run=cmd_chase)

    sp = sub.add_parser("simulate", help="maximal simulation between two interpretations")
    sp.add_argument("source")
    sp.add_argument("target")
    sp.add_argument("--kind", choices=KINDS, default="combined")
    sp.add_argument("--cap", type=int, default=DEFAULT_CAP, help="largest source domain accepted")
    porcelain(sp)
    sp.set_defaults(run=cmd_simulate)

    sp = sub.add_parser("closure", help="does a concept or formula transfer along a simulation")
    sp.add_argument("source")
    sp.add_argument("target")
    sp.add_argument("--concept")
    sp.add_argument("--formula")
    sp.add_argument("--relation", help="relation file (simulate output); default: the maximal simulation")
    sp.add_argument("--kind", choices=KINDS)
    sp.add_argument("--cap", type=int, default=DEFAULT_CAP)
    porcelain(sp)
    sp.set_defaults(run=cmd_closure)

    sp = sub.add_parser("encode-hom", help="graph homomorphism as an ABox and a boolean query")
    sp.add_argument("g1", help="target graph")
    sp.add_argument("g2", help="source graph")
    sp.add_argument("--kb", help="write the .dl file here")
    sp.add_argument("--query", help="write the .dlq file here")
    sp.set_defaults(run=cmd_encode_hom)

    sp = sub.add_parser("check-hom", help="brute-force homomorphism test G2 -> G1")
    sp.add_argument("g1", help="target graph")
    sp.add_argument("g2", help="source graph")
    sp.add_argument("--budget", type=int, default=10**7)
    sp.set_defaults(run=cmd_check_hom)

    sp = sub.add_parser("selftest", help="golden examples and randomized cross-checks")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--instances", type=int, default=100)
    sp.add_argument("--depth", type=int, default=5, help="chase depth for the cross-check")
    sp.set_defaults(run=cmd_selftest)
    return p


def run(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    try:
        args = build_parser().parse_args(argv)
        return args.run(args, out)
    except UsageError as exc:
        err.write(f"dllite: {exc}\n")
    except (DLError, ValueError) as exc:
        err.write(f"dllite: error: {str(exc).splitlines()[0] if str(exc) else type(exc).__name__}\n")
    except OSError as exc:
        err.write(f"dllite: error: {exc.strerror or exc}: {exc.filename}\n")
    except RecursionError:
        err.write("dllite: error: input nested too deeply\n")
    return ERROR


def main(argv: Sequence[str] | None = None) -> int:
    code = run(argv)
    sys.exit(code)


if __name__ == "__main__":
    main()

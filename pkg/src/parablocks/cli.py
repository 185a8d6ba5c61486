"""Command line front end: ``blocks <command> FAMILY RANK [options]``.

Exit codes: 0 when everything agrees, 1 when two pipelines disagree (or a
sweep has findings), 2 for bad input.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from fractions import Fraction

from .blocks import EmptyCoset, block_decomposition_oracle, linkage_graph
from .decomposition import FactorNode, System, factorize, format_segmented, render_T_table
from .partitions import PartitionReport, compatible_pairs, count_from_partitions, pi_I, richardson
from .rootsys import FAMILIES, InvalidSystem, ParabolicData, RootSystem, make_parabolic, phi_indices
from .separability import SeparabilityReport, predicted_block_count
from .sweep import MAX_RANK_WITHOUT_FORCE, run_sweep, write_findings
from .weights import (
    DegenerateSingularity,
    NotIntegral,
    SingularData,
    Weight,
    canonical_dominant,
    dominant_twice,
    enumerate_coset,
    parity,
    singular_set,
)

EXIT_OK, EXIT_DISAGREE, EXIT_INPUT = 0, 1, 2


class InputError(ValueError):
    """Anything wrong with the command line arguments."""


@dataclass(frozen=True)
class Setup:
    """A parsed (family, rank, I, dominant weight) request."""

    pd: ParabolicData
    dominant: Weight
    note: str | None = None

    @property
    def rs(self) -> RootSystem:
        return self.pd.rs

    @property
    def sd(self) -> SingularData:
        return singular_set(self.rs, self.dominant)

    @property
    def pd_J(self) -> ParabolicData:
        return self.sd.pd_J

    def header(self) -> str:
        return f"{self.pd.describe()}\n{self.sd.describe()} dominant={self.dominant}"

    def to_json(self) -> dict:
        return {
            "family": self.rs.family,
            "rank": self.rs.rank,
            "I": sorted(self.pd.included),
            "nonstandard": self.pd.nonstandard,
            "J": sorted(self.sd.J),
            "dominant": self.dominant.to_json(),
        }


def _index_list(text: str | None) -> list[int]:
    if text is None or text.strip() in ("", "-"):
        return []
    try:
        return [int(x) for x in text.replace(" ", "").split(",") if x]
    except ValueError:
        raise InputError(f"expected comma separated indices, got {text!r}") from None


def _weight(text: str) -> Weight:
    try:
        return Weight.of(*(Fraction(x) for x in text.replace(" ", "").split(",")))
    except (ValueError, ZeroDivisionError, NotIntegral) as exc:
        raise InputError(f"cannot read weight {text!r}: {exc}") from None


def build_setup(args: argparse.Namespace) -> Setup:
    family = args.family.upper()
    if family not in FAMILIES:
        raise InputError(f"family must be one of {', '.join(FAMILIES)}")
    rs = RootSystem(family, args.rank)
    k = rs.simple_count
    if args.exclude is not None and args.include is not None:
        raise InputError("give --exclude or --include, not both")
    if args.exclude is not None:
        drop = set(_index_list(args.exclude))
        included = {i for i in range(1, k + 1) if i not in drop}
    else:
        included = set(_index_list(args.include))
    if args.nonstandard:
        if family != "D":
            raise InputError("--nonstandard only applies to type D")
        included = set(phi_indices(rs, included))
    pd = make_parabolic(rs, included)
    if args.nonstandard and not pd.nonstandard:
        raise InputError("--nonstandard needs alpha_{n-1} in I and alpha_n not in I before the flip")
    if args.weight is not None and args.singular is not None:
        raise InputError("give --weight or --singular, not both")
    note = None
    if args.weight is not None:
        weight = _weight(args.weight)
        if len(weight) != rs.rank:
            raise InputError(f"weight has {len(weight)} coordinates, {rs} needs {rs.rank}")
        dominant = Weight(dominant_twice(family, weight.twice))
        if dominant != weight:
            note = f"using the dominant weight {dominant} of the orbit of {weight}"
    else:
        dominant = canonical_dominant(rs, _index_list(args.singular))
    singular_set(rs, dominant)  # rejects non-integral and degenerate weights early
    return Setup(pd, dominant, note)


# ---------------------------------------------------------------------------
# Commands


def _emit(args: argparse.Namespace, payload: dict, text: str) -> None:
    if args.json:
        print(json.dumps(payload, indent=2, sort_keys=True, ensure_ascii=False))
    else:
        print(text)


def cmd_enumerate(args, setup: Setup) -> int:
    coset = enumerate_coset(setup.pd, setup.dominant)
    sd = setup.sd
    lines = [setup.header(), f"{len(coset)} simple modules"]
    rows = []
    for w in coset:
        table = render_T_table(setup.pd, sd, w)
        rows.append({"weight": w.to_json(), "parity": parity(w), "segments": format_segmented(setup.pd, w), "table": table})
        lines += ["", f"{format_segmented(setup.pd, w)}  P={parity(w)}", table]
    _emit(args, {"system": setup.to_json(), "weights": rows}, "\n".join(lines))
    return EXIT_OK


def cmd_jantzen(args, setup: Setup) -> int:
    graph = linkage_graph(setup.pd, setup.dominant)
    lines = [setup.header()]
    for e in graph.entries:
        roots = ", ".join(f"{'+' if par == 0 else '-'}{r}" for r, par in e.witnesses)
        lines.append(f"c({e.source}, {e.target}) = {e.c}   [{roots}]")
    if not graph.entries:
        lines.append("no nonzero Jantzen coefficients")
    _emit(args, {"system": setup.to_json(), "graph": graph.to_json()}, "\n".join(lines))
    return EXIT_OK


def _tree_lines(node: FactorNode, indent: str = "") -> list[str]:
    sys_ = node.system
    head = f"{indent}{sys_.pd.describe()} J={{{','.join(map(str, sorted(sys_.J))) or '-'}}} dominant={sys_.dominant}: {node.block_count} block(s)"
    if node.is_leaf:
        return [head + " [leaf]"]
    fs = node.split
    out = [f"{head} split along {fs.pair} ({fs.layout.kind}{', via phi' if fs.twisted else ''})"]
    for k, (a, b) in enumerate(node.children):
        if len(node.children) > 1:
            out.append(f"{indent}  combo {k + 1}:")
        out += _tree_lines(a, indent + "    ")
        out += _tree_lines(b, indent + "    ")
    return out


def cmd_factorize(args, setup: Setup) -> int:
    tree = factorize(System(setup.pd, setup.dominant))
    factors = [leaf for leaf in tree.leaves() if leaf.system.rs.rank > 0]
    lines = _tree_lines(tree) + [f"k={len(factors)} nontrivial factor(s), {tree.block_count} block(s)"]
    payload = {"system": setup.to_json(), "tree": tree.to_json(), "k": len(factors), "blocks": tree.block_count}
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK


def cmd_separable(args, setup: Setup) -> int:
    report = SeparabilityReport(setup.pd, setup.sd)
    classes = report.classes
    lines = [setup.header()]
    for c, members in enumerate(classes.classes):
        tag = "trivial" if classes.class_trivial(c) else "nontrivial"
        shown = []
        for i in members:
            p = classes.pairs[i]
            flags = ("weak" if p.weak else "strong") + (" odd" if p.odd else "")
            shown.append(f"{p} {flags}")
        lines.append(f"class {c + 1} ({tag}): " + "; ".join(shown))
    if classes.empty:
        lines.append("no separable pairs")
    lines.append(f"predicted blocks: {report.prediction.count} ({report.prediction.theorem})")
    _emit(args, {"system": setup.to_json(), **report.to_json()}, "\n".join(lines))
    return EXIT_OK


def cmd_partitions(args, setup: Setup) -> int:
    report = PartitionReport(setup.pd, setup.pd_J)
    lines = [setup.header()]
    lines.append(f"pi_I: {pi_I(setup.pd)}   Richardson: {richardson(setup.pd)}")
    lines.append(f"pi_J: {pi_I(setup.pd_J)}   Richardson: {richardson(setup.pd_J)}")
    lines.append(f"nonempty: {report.nonempty}")
    if report.nonempty:
        cc = compatible_pairs(setup.pd, setup.pd_J)
        for c, members in enumerate(cc.classes):
            tag = "trivial" if any(cc.pairs[i].trivial for i in members) else "nontrivial"
            lines.append(f"class {c + 1} ({tag}): " + ", ".join(str(cc.pairs[i]) for i in members))
        if not cc.pairs:
            lines.append("no compatible pairs")
        count = count_from_partitions(setup.pd, setup.pd_J)
        lines.append(f"predicted blocks: {count.count} ({count.theorem})")
    _emit(args, {"system": setup.to_json(), **report.to_json()}, "\n".join(lines))
    return EXIT_OK


def cmd_blocks(args, setup: Setup) -> int:
    oracle = block_decomposition_oracle(setup.pd, setup.dominant)
    if not oracle.vertices:
        raise EmptyCoset("no simple modules for this system")
    sep = predicted_block_count(setup.pd, setup.sd)
    part = count_from_partitions(setup.pd, setup.pd_J)
    agree = oracle.oracle_count == sep.count == part.count
    tree = factorize(System(setup.pd, setup.dominant))
    factors = [leaf for leaf in tree.leaves() if leaf.system.rs.rank > 0]
    verdict = "AGREE" if agree else "DISAGREE"
    lines = [setup.header()]
    for b, members in enumerate(oracle.blocks):
        lines.append(f"block {b + 1}: " + ", ".join(format_segmented(setup.pd, oracle.vertices[i]) for i in members))
    lines.append(f"factor tree: k={len(factors)} leaves, {tree.block_count} block(s)")
    lines.append(f"oracle={oracle.oracle_count} separability={sep.count} partitions={part.count} {verdict}")
    payload = {
        "system": setup.to_json(),
        "blocks": [[oracle.vertices[i].to_json() for i in members] for members in oracle.blocks],
        "oracle": oracle.oracle_count,
        "separability": {"count": sep.count, "theorem": sep.theorem},
        "partitions": {"count": part.count, "theorem": part.theorem},
        "factor_leaves": len(factors),
        "agree": agree,
    }
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK if agree else EXIT_DISAGREE


def cmd_sweep(args) -> int:
    family = args.family.upper()
    if family not in FAMILIES:
        raise InputError(f"family must be one of {', '.join(FAMILIES)}")
    if args.max_rank > MAX_RANK_WITHOUT_FORCE and not args.force:
        raise InputError(f"rank {args.max_rank} is beyond {MAX_RANK_WITHOUT_FORCE}; pass --force to run it anyway")
    if args.max_rank < 1:
        raise InputError("max rank must be positive")
    summary = run_sweep(family, args.max_rank, workers=args.workers, min_rank=args.min_rank)
    written = write_findings(args.findings, summary.findings) if args.findings else None
    if args.json:
        print(json.dumps({**summary.to_json(), "findings_file": args.findings}, indent=2, sort_keys=True))
    else:
        print(summary)
        for f in summary.findings[:20]:
            print(f"  {f.cell.describe()} {f.check}: {f.detail}")
        if written is not None:
            print(f"findings written to {args.findings} ({written} lines)")
    return EXIT_OK if not summary.findings else EXIT_DISAGREE


COMMANDS = {
    "enumerate": (cmd_enumerate, "list the simple modules with their tables"),
    "jantzen": (cmd_jantzen, "nonzero Jantzen coefficients with witness roots"),
    "blocks": (cmd_blocks, "blocks from all three pipelines and the agreement verdict"),
    "separable": (cmd_separable, "separable pairs, their classes and the predicted count"),
    "partitions": (cmd_partitions, "orbit partitions, nonemptiness and compatible pairs"),
    "factorize": (cmd_factorize, "the factor tree of pseudo-indecomposable pieces"),
}


def _system_arguments(p: argparse.ArgumentParser) -> None:
    p.add_argument("family", help="A, B, C or D")
    p.add_argument("rank", type=int)
    group = p.add_mutually_exclusive_group()
    group.add_argument("--exclude", metavar="LIST", help="simple roots outside I, e.g. 2,6")
    group.add_argument("--include", metavar="LIST", help="simple roots in I (default: none)")
    wgroup = p.add_mutually_exclusive_group()
    wgroup.add_argument("--weight", metavar="LIST", help="a weight, e.g. 2,1,1,0 or 1/2,1/2")
    wgroup.add_argument("--singular", metavar="LIST", help="the singular simple roots J (default: none)")
    p.add_argument("--nonstandard", action="store_true", help="type D: swap alpha_{n-1} and alpha_n in I")
    p.add_argument("--json", action="store_true", help="machine readable output")


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="blocks", description="Blocks of parabolic category O for classical types.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (_, help_text) in COMMANDS.items():
        _system_arguments(sub.add_parser(name, help=help_text))
    sw = sub.add_parser("sweep", help="check every (I, J) up to a rank")
    sw.add_argument("family")
    sw.add_argument("max_rank", type=int)
    sw.add_argument("--min-rank", type=int, default=1)
    sw.add_argument("--workers", type=int, default=None, help="process pool size (1 runs in-process)")
    sw.add_argument("--findings", metavar="PATH", help="write findings as JSON lines")
    sw.add_argument("--force", action="store_true", help=f"allow ranks above {MAX_RANK_WITHOUT_FORCE}")
    sw.add_argument("--json", action="store_true")
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = make_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "sweep":
            return cmd_sweep(args)
        setup = build_setup(args)
        if setup.note and not args.json:
            print(f"note: {setup.note}", file=sys.stderr)
        return COMMANDS[args.command][0](args, setup)
    except DegenerateSingularity as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (InputError, InvalidSystem, NotIntegral, EmptyCoset, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())

"""Exhaustive cross-checks over every (I, J) of a family and rank.

Each cell is one parabolic I and one singular set J (through its canonical
dominant weight).  A cell runs every invariant that relates the three
pipelines and returns a list of findings; an empty list means the cell
agrees everywhere.  Cells are independent, so the driver farms them out to
a process pool and merges results in cell order.
"""

from __future__ import annotations

import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from itertools import combinations
from typing import Iterable, Iterator

from .blocks import block_decomposition_oracle
from .decomposition import System, block_labels, factorize, partition_from_labels, split, standardized
from .jantzen import is_linked, linked_criterion
from .partitions import count_from_partitions, nonempty_criterion
from .rootsys import ParabolicData, RootSystem, all_subsets, make_parabolic, reflect_twice
from .separability import (
    TheoremViolation,
    all_separable_pairs,
    is_pseudo_indecomposable,
    pair_partial_order,
    predicted_block_count,
    separable_keys,
    two_block_membership,
)
from .weights import (
    Weight,
    canonical_dominant,
    count_table,
    enumerate_coset,
    find_signed_permutation,
    is_phiI_regular,
    normalize_to_Lambda_I,
    singular_set,
)

MAX_RANK_WITHOUT_FORCE = 7


@dataclass(frozen=True, order=True)
class Cell:
    family: str
    rank: int
    I: tuple[int, ...]
    J: tuple[int, ...]

    def describe(self) -> str:
        return f"{self.family}{self.rank} I={{{','.join(map(str, self.I))}}} J={{{','.join(map(str, self.J))}}}"


@dataclass(frozen=True)
class Finding:
    cell: Cell
    check: str
    detail: str

    def to_json(self) -> dict:
        return {"cell": asdict(self.cell), "check": self.check, "detail": self.detail}


@dataclass
class CellResult:
    cell: Cell
    nonempty: bool
    oracle: int | None = None
    findings: list[Finding] = field(default_factory=list)


def cells(family: str, max_rank: int, min_rank: int = 1) -> Iterator[Cell]:
    # D_1 is a torus with no roots; it only shows up as a leaf of factor trees
    low = max(min_rank, 2) if family == "D" else min_rank
    for n in range(low, max_rank + 1):
        rs = RootSystem(family, n)
        subsets = all_subsets(rs)
        for I in subsets:
            for J in subsets:
                yield Cell(family, n, tuple(sorted(I)), tuple(sorted(J)))


def dual_weight(pd_J: ParabolicData, dominant_I: Weight, dominant_J: Weight, weight: Weight) -> Weight:
    """Image of a coset weight of (I, J) in the coset of (J, I).

    If ``u`` carries the dominant weight of J to ``weight`` then ``u`` lies
    in w W_J for the minimal w, and the W_J-orbit of u^{-1} applied to the
    dominant weight of I meets Lambda_J^+ exactly at w^{-1} of it.
    """
    family = pd_J.rs.family
    u = find_signed_permutation(family, dominant_J.twice, weight.twice)
    back = Weight(u.apply_inverse(dominant_I.twice))
    return normalize_to_Lambda_I(pd_J, back)[0]


def check_cell(cell: Cell) -> CellResult:
    rs = RootSystem(cell.family, cell.rank)
    pd = make_parabolic(rs, cell.I)
    pd_J = make_parabolic(rs, cell.J)
    dominant = canonical_dominant(rs, cell.J)
    coset = enumerate_coset(pd, dominant)
    result = CellResult(cell, bool(coset))
    found = result.findings

    def note(check: str, detail: str) -> None:
        found.append(Finding(cell, check, detail))

    def guarded(check: str, fn) -> None:
        try:
            fn()
        except Exception as exc:  # a crash inside a check is itself a finding
            note(check, f"{type(exc).__name__}: {exc}")

    # (a) nonemptiness
    guarded("a:nonempty", lambda: bool(coset) == nonempty_criterion(pd, pd_J) or note("a:nonempty", f"enumeration says {bool(coset)}"))
    if not coset:
        return result
    sd = singular_set(rs, dominant)
    oracle = block_decomposition_oracle(pd, dominant)
    result.oracle = oracle.oracle_count

    def linked() -> None:
        for weight in coset:
            for root in pd.nonlevi_roots:
                image = Weight(reflect_twice(weight.twice, root))
                if image == weight or not is_phiI_regular(pd, image):
                    continue
                if linked_criterion(pd, sd, weight, root) != is_linked(pd, weight, root):
                    note("b:linked", f"{weight} root {root}: direct {is_linked(pd, weight, root)}")

    def counts() -> None:
        sep = predicted_block_count(pd, sd).count
        part = count_from_partitions(pd, pd_J).count
        if not (oracle.oracle_count == sep == part):
            note("c:counts", f"oracle={oracle.oracle_count} separability={sep} partitions={part}")
        count = oracle.oracle_count
        p = count.bit_length() - 1
        if count != 1 << p or not p < min(pd.m, sd.m_bar):
            note("d:power", f"{count} blocks with m={pd.m} m_bar={sd.m_bar}")
        if cell.family == "A" and count != 1:
            note("f:typeA", f"{count} blocks")

    def tables() -> None:
        # every coset weight yields the same separable pairs
        distinct = {}
        for w in coset:
            table = count_table(pd, sd, w)
            distinct.setdefault(table.rows, table)
            if table.row_sums != pd.sizes or table.column_sums != sd.sizes:
                note("lemma:sums", f"{w}: rows {table.row_sums} columns {table.column_sums}")
        keys = {tuple(separable_keys(pd, sd, table)) for table in distinct.values()}
        if len(keys) != 1:
            note("lemma:homogeneous", f"{len(keys)} different pair sets over the coset")
        classes = all_separable_pairs(pd, sd)
        pairs = classes.pairs
        for p, q in combinations(pairs, 2):
            try:
                pair_partial_order(p, q)
            except TheoremViolation as exc:
                note("lemma:comparable", str(exc))
            same_size = len(p.S) == len(q.S) or len(p.S_bar) == len(q.S_bar)
            if same_size and classes.class_of(p) != classes.class_of(q):
                note("lemma:equal-size", f"{p} and {q} are not equivalent")
        if cell.family == "D" and len({p.odd for p in pairs}) > 1:
            note("lemma:homogeneous-parity", "odd and even pairs side by side")
        # the swapped system (J, I) on the canonical weight of I
        flipped = make_parabolic(rs, cell.J)
        dom_I = canonical_dominant(rs, cell.I)
        flipped_pairs = all_separable_pairs(flipped, singular_set(rs, dom_I))
        if flipped_pairs.has_strong != classes.has_strong:
            note("lemma:swap", f"strong separability {classes.has_strong} vs {flipped_pairs.has_strong} after swapping")

    def factor() -> None:
        system = System(pd, dominant)
        tree = factorize(system)
        if tree.block_count != oracle.oracle_count:
            note("e:factorize", f"tree gives {tree.block_count}, oracle {oracle.oracle_count}")
        labels = {w: tree.label(w) for w in coset}
        if partition_from_labels(tuple(coset), labels) != oracle.blocks:
            note("e:labels", "factor-tree labels do not reproduce the oracle blocks")
        working, _ = standardized(system)
        for pair in all_separable_pairs(working.pd, working.sd).strong_pairs:
            fs = split(system, pair)
            if sum(c.size for c in fs.combos) != len(coset):
                note("split:cardinality", f"{pair}")
            images = {fs.weight_map(w) for w in coset}
            if len(images) != len(coset):
                note("split:injective", f"{pair}")
            for k, a, b in images:
                combo = fs.combos[k]
                if a not in combo.first.coset or b not in combo.second.coset:
                    note("split:image", f"{pair} sends a weight outside the child cosets")
                    break
            if partition_from_labels(tuple(coset), block_labels(fs)) != oracle.blocks:
                note("split:blocks", f"{pair}")
            if not all(fs.parity_holds(w) for w in coset):
                note("split:parity", f"{pair}")
            if fs.layout.kind == "D-even" and pair.trivial:
                combo = fs.combos[0]
                if len(fs.combos) != 1 or min(len(combo.first.coset), len(combo.second.coset)) != 1:
                    note("split:trivial", f"{pair} has {len(fs.combos)} combos")

    def membership() -> None:
        if len(coset) < 2 or not is_pseudo_indecomposable(pd, sd) or predicted_block_count(pd, sd).count != 2:
            return
        for x, y in combinations(coset, 2):
            if two_block_membership(pd, sd, x, y) != (oracle.block_of(x) == oracle.block_of(y)):
                note("g:parity", f"{x} {y}")

    def duality() -> None:
        dual_pd = make_parabolic(rs, cell.J)
        dom_I = canonical_dominant(rs, cell.I)
        dual_oracle = block_decomposition_oracle(make_parabolic(rs, cell.J), dom_I)
        image = {w: dual_weight(dual_pd, dom_I, dominant, w) for w in coset}
        if sorted(set(image.values()), reverse=True) != list(dual_oracle.vertices):
            note("h:duality", "inversion is not a bijection onto the dual coset")
            return
        pulled = {w: dual_oracle.block_of(image[w]) for w in coset}
        if partition_from_labels(tuple(coset), pulled) != oracle.blocks:
            note("h:duality", "block partitions do not correspond")

    for name, fn in [
        ("b:linked", linked),
        ("c:counts", counts),
        ("lemma", tables),
        ("e:factorize", factor),
        ("g:parity", membership),
        ("h:duality", duality),
    ]:
        guarded(name, fn)
    return result


@dataclass
class SweepSummary:
    family: str
    max_rank: int
    cells: int = 0
    nonempty: int = 0
    findings: list[Finding] = field(default_factory=list)
    histogram: dict[int, int] = field(default_factory=dict)
    seconds: float = 0.0

    def to_json(self) -> dict:
        return {
            "family": self.family,
            "max_rank": self.max_rank,
            "cells": self.cells,
            "nonempty": self.nonempty,
            "findings": len(self.findings),
            "block_histogram": {str(k): v for k, v in sorted(self.histogram.items())},
            "seconds": round(self.seconds, 2),
        }

    def __str__(self) -> str:
        hist = " ".join(f"{k}:{v}" for k, v in sorted(self.histogram.items()))
        return (
            f"sweep {self.family} n<={self.max_rank}: {self.cells} cells, {self.nonempty} nonempty, "
            f"blocks {{{hist}}}, {len(self.findings)} findings, {self.seconds:.1f}s"
        )


def _batch(batch: list[Cell]) -> list[CellResult]:
    return [check_cell(c) for c in batch]


def _batches(items: Iterable[Cell], size: int) -> Iterator[list[Cell]]:
    chunk: list[Cell] = []
    for item in items:
        chunk.append(item)
        if len(chunk) == size:
            yield chunk
            chunk = []
    if chunk:
        yield chunk


def run_sweep(family: str, max_rank: int, workers: int | None = None, min_rank: int = 1, batch: int = 16) -> SweepSummary:
    """Check every cell up to ``max_rank``; ``workers=1`` runs in-process."""
    start = time.perf_counter()
    summary = SweepSummary(family, max_rank)
    # large ranks first so the pool is not left waiting on one slow batch at the end
    todo = sorted(cells(family, max_rank, min_rank), key=lambda c: (-c.rank, c))
    chunks = list(_batches(todo, batch))
    if workers == 1:
        results = [r for chunk in chunks for r in _batch(chunk)]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = [r for part in pool.map(_batch, chunks) for r in part]
    for res in sorted(results, key=lambda r: r.cell):
        summary.cells += 1
        if res.nonempty:
            summary.nonempty += 1
        if res.oracle is not None:
            summary.histogram[res.oracle] = summary.histogram.get(res.oracle, 0) + 1
        summary.findings.extend(res.findings)
    summary.seconds = time.perf_counter() - start
    return summary


def write_findings(path: str, findings: Iterable[Finding]) -> int:
    count = 0
    with open(path, "w", encoding="utf-8") as fh:
        for f in findings:
            fh.write(json.dumps(f.to_json(), sort_keys=True) + "\n")
            count += 1
    return count

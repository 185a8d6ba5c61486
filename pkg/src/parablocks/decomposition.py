"""Product decompositions of strongly separable systems.

A strongly separable pair (S, S_bar) lets every coset weight be rearranged,
inside the segments of S, so that the values of S_bar come first.  Dropping
those prefixes leaves two coordinate sets H1 and H2; restricting the
rearranged weight to them gives weights of two smaller systems whose blocks
multiply to the blocks of the parent.  Repeating until no strongly
separable pair is left gives the factor tree.

Two wrinkles of type D are handled explicitly:

* for an odd pair both factors keep the last coordinate, which is 0 in
  every rearranged weight;
* for an even pair the restricted weights may land in either of two W_i
  orbits related by the diagram flip, so a split can have two "combos" of
  child systems and the parent coset is their disjoint union.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

from .blocks import BlockDecomposition, EmptyCoset, block_decomposition_oracle, components
from .rootsys import DIFF, LONG, SHORT, SUM, ParabolicData, Root, RootSystem, SignedPermutation, make_parabolic
from .separability import PairClasses, SeparablePair, all_separable_pairs, minimal_strong_pair
from .weights import (
    SingularData,
    Weight,
    canonical_dominant,
    dominant_twice,
    enumerate_coset,
    find_signed_permutation,
    format_coordinate,
    is_degenerate,
    parity,
    phi,
    singular_roots,
    singular_set,
)


class PairNotSeparable(ValueError):
    """The weight does not have the layout the pair requires."""


class PairNotStronglySeparable(ValueError):
    """Only strongly separable pairs split a system."""


@dataclass(frozen=True)
class System:
    """A parabolic ``pd`` together with the dominant weight of one orbit.

    Separable pairs need a non-degenerate dominant weight; for the one
    degenerate configuration of type D the calculation runs on the canonical
    dominant weight with the same singular set, and weights are carried over
    by the Weyl group element that produced them.
    """

    pd: ParabolicData
    dominant: Weight

    @property
    def rs(self) -> RootSystem:
        return self.pd.rs

    @cached_property
    def J(self) -> frozenset[int]:
        return singular_roots(self.rs, self.dominant)

    @cached_property
    def degenerate(self) -> bool:
        return is_degenerate(self.rs, self.dominant)

    @cached_property
    def working_dominant(self) -> Weight:
        return canonical_dominant(self.rs, self.J) if self.degenerate else self.dominant

    @cached_property
    def sd(self) -> SingularData:
        return singular_set(self.rs, self.working_dominant)

    @cached_property
    def coset(self) -> tuple[Weight, ...]:
        return tuple(enumerate_coset(self.pd, self.dominant))

    @cached_property
    def oracle(self) -> BlockDecomposition:
        return block_decomposition_oracle(self.pd, self.dominant)

    @cached_property
    def pairs(self) -> PairClasses:
        return all_separable_pairs(self.pd, self.sd)

    def transport(self, weight: Weight) -> Weight:
        """Carry a coset weight to the orbit of :attr:`working_dominant`."""
        if not self.degenerate:
            return weight
        family = self.rs.family
        u = find_signed_permutation(family, self.dominant.twice, weight.twice)
        return Weight(u.apply(self.working_dominant.twice))

    def describe(self) -> str:
        return f"{self.pd.describe()} dominant={self.dominant}"

    def to_json(self) -> dict:
        return {
            "family": self.rs.family,
            "rank": self.rs.rank,
            "I": sorted(self.pd.included),
            "J": sorted(self.J),
            "dominant": self.dominant.to_json(),
            "simples": len(self.coset),
        }


def restrict(weight: Weight, coords: Iterable[int]) -> Weight:
    """Coordinates ``coords`` (0-based) of ``weight``, in the given order."""
    return Weight(tuple(weight.twice[i] for i in coords))


# ---------------------------------------------------------------------------
# The split of one system


@dataclass(frozen=True)
class Layout:
    """What a pair prescribes: prefix widths per segment and the two homes."""

    family: str
    kind: str  # "A", "BC", "D-odd" or "D-even"
    S: frozenset[int]  # 0-based segment indices
    prefix_values: frozenset[int]  # doubled absolute values (signed values for type A)
    widths: dict[int, int] = field(hash=False, compare=False)
    H1: tuple[int, ...] = ()
    H2: tuple[int, ...] = ()
    last: int = -1  # index of the B/C/D segment

    @property
    def shared(self) -> int | None:
        return self.H1[-1] if self.kind == "D-odd" else None

    @property
    def p(self) -> int:
        """Number of nonzero prefix values."""
        return len([v for v in self.prefix_values if v != 0]) if self.family != "A" else len(self.prefix_values)

    @property
    def g(self) -> int:
        """Segments of S other than the last, whose prefixes hold p negative entries each."""
        if self.family == "A":
            return 0
        return len([s for s in self.S if s != self.last])


def _layout(system: System, pair: SeparablePair) -> Layout:
    pd, sd = system.pd, system.sd
    family = pd.rs.family
    n = pd.rs.rank
    m = pd.m
    S = frozenset(s - 1 for s in pair.S)
    chosen = [sd.values[t - 1] for t in pair.S_bar]
    if family == "A":
        values = frozenset(chosen)
        p = len(values)
        widths = {s: p for s in S}
        H1 = [i for s in sorted(S) for i in range(pd.segments[s][0] + p, pd.segments[s][1])]
        H2 = [i for s in range(m) if s not in S for i in range(*pd.segments[s])]
        return Layout(family, "A", S, values, widths, tuple(H1), tuple(H2), m - 1)
    values = frozenset(v for v in chosen if v > 0)
    p = len(values)
    last = m - 1
    lo_last = pd.segments[last][0]
    h = lo_last + p
    widths = {s: (p if s == last else 2 * p) for s in S}
    H1 = [i for s in sorted(S) if s != last for i in range(pd.segments[s][0] + 2 * p, pd.segments[s][1])]
    H2 = [i for s in range(last) if s not in S for i in range(*pd.segments[s])]
    if family in "BC":
        kind = "BC"
        H1 += range(h, n)
        H2 += range(lo_last, min(h, n))
    elif last in S:
        kind = "D-odd"
        H1 += range(h, n)
        H2 += list(range(lo_last, h)) + [n - 1]
    else:
        kind = "D-even"
        H2 += range(lo_last, n)
    return Layout(family, kind, S, values, widths, tuple(sorted(H1)), tuple(sorted(set(H2))), last)


def _in_prefix(layout: Layout, x: int) -> bool:
    if layout.family == "A":
        return x in layout.prefix_values
    return x != 0 and abs(x) in layout.prefix_values


def normalize_for_split(system: System, pair: SeparablePair, weight: Weight) -> tuple[Weight, SignedPermutation]:
    """Rearrange each segment of S so the pair's values come first.

    Both parts of a segment stay strictly decreasing; the rearranging
    element is a plain permutation inside the Levi.  Raises
    :class:`PairNotSeparable` if a segment holds the wrong number of
    prefix values.
    """
    pd = system.pd
    layout = _layout(system, pair)
    return _normalize(pd, layout, weight)


def _normalize(pd: ParabolicData, layout: Layout, weight: Weight) -> tuple[Weight, SignedPermutation]:
    t = list(weight.twice)
    perm = list(range(len(t)))
    for s in sorted(layout.S):
        lo, hi = pd.segments[s]
        seg = t[lo:hi]
        head = sorted((x for x in seg if _in_prefix(layout, x)), reverse=True)
        if len(head) != layout.widths[s]:
            raise PairNotSeparable(f"segment {s + 1} of {weight} has {len(head)} prefix entries, expected {layout.widths[s]}")
        tail = sorted((x for x in seg if not _in_prefix(layout, x)), reverse=True)
        new = head + tail
        where = {x: lo + k for k, x in enumerate(new)}
        for k, x in enumerate(seg):
            perm[lo + k] = where[x]
        t[lo:hi] = new
    return Weight(tuple(t)), SignedPermutation(tuple(perm), (1,) * len(t), pd.rs.family)


def child_simple_roots(family: str, coords: Sequence[int]) -> list[Root]:
    """Simple roots of the coordinate subsystem on ``coords``, in parent terms."""
    k = len(coords)
    roots = [Root(DIFF, coords[r], coords[r + 1]) for r in range(k - 1)]
    if family == "B" and k:
        roots.append(Root(SHORT, coords[-1], coords[-1]))
    elif family == "C" and k:
        roots.append(Root(LONG, coords[-1], coords[-1]))
    elif family == "D" and k >= 2:
        roots.append(Root(SUM, coords[-2], coords[-1]))
    return roots


def child_parabolic(pd: ParabolicData, coords: Sequence[int]) -> ParabolicData:
    family = pd.rs.family
    rs = RootSystem(family, len(coords))
    included = [r + 1 for r, root in enumerate(child_simple_roots(family, coords)) if pd.contains_root(root)]
    return make_parabolic(rs, included)


@dataclass(frozen=True)
class Combo:
    """One pair of child systems; D even nontrivial splits have two."""

    first: System
    second: System

    @property
    def size(self) -> int:
        return len(self.first.coset) * len(self.second.coset)


@dataclass(frozen=True)
class FactorSystem:
    """A split of ``parent`` along ``pair``.

    ``twisted`` marks a nonstandard type D parent: the split is then carried
    out on its image under the diagram flip, and :meth:`weight_map` applies
    the flip first.
    """

    parent: System
    working: System
    twisted: bool
    pair: SeparablePair
    layout: Layout
    combos: tuple[Combo, ...]

    @property
    def H1(self) -> tuple[int, ...]:
        return self.layout.H1

    @property
    def H2(self) -> tuple[int, ...]:
        return self.layout.H2

    def weight_map(self, weight: Weight) -> tuple[int, Weight, Weight]:
        """``weight`` -> (combo index, first child weight, second child weight)."""
        w = phi(weight) if self.twisted else weight
        image, _ = _normalize(self.working.pd, self.layout, self.working.transport(w))
        first, second = restrict(image, self.H1), restrict(image, self.H2)
        key = (dominant_twice(self.layout.family, first.twice), dominant_twice(self.layout.family, second.twice))
        for k, combo in enumerate(self.combos):
            if (combo.first.dominant.twice, combo.second.dominant.twice) == key:
                return k, first, second
        raise PairNotSeparable(f"{weight} maps outside every child orbit")

    def parity_holds(self, weight: Weight) -> bool:
        """Negative entries add up: P(lambda) = P(lambda^1) + P(lambda^2) + p g (mod 2)."""
        if self.layout.family == "A":
            return True
        w = phi(weight) if self.twisted else weight
        _, first, second = self.weight_map(weight)
        total = parity(self.working.transport(w)) + parity(first) + parity(second) + self.layout.p * self.layout.g
        return total % 2 == 0

    def to_json(self) -> dict:
        return {
            "pair": self.pair.to_json(),
            "kind": self.layout.kind,
            "twisted": self.twisted,
            "H1": [i + 1 for i in self.H1],
            "H2": [i + 1 for i in self.H2],
            "combos": [
                {"first": c.first.to_json(), "second": c.second.to_json()} for c in self.combos
            ],
            "weight_map": [
                {"weight": w.to_json(), "combo": k, "first": a.to_json(), "second": b.to_json()}
                for w in self.parent.coset
                for k, a, b in [self.weight_map(w)]
            ],
        }


def standardized(system: System) -> tuple[System, bool]:
    if not system.pd.nonstandard:
        return system, False
    return System(system.pd.standard, phi(system.dominant)), True


def split(system: System, pair: SeparablePair) -> FactorSystem:
    """Split along a strongly separable pair of ``system``."""
    if pair.weak:
        raise PairNotStronglySeparable(f"{pair} is only weakly separable")
    working, twisted = standardized(system)
    if not system.coset:
        raise EmptyCoset(system.describe())
    layout = _layout(working, pair)
    pd1 = child_parabolic(working.pd, layout.H1)
    pd2 = child_parabolic(working.pd, layout.H2)
    keys: dict[tuple[tuple[int, ...], tuple[int, ...]], None] = {}
    for weight in working.coset:
        image, _ = _normalize(working.pd, layout, working.transport(weight))
        first, second = restrict(image, layout.H1), restrict(image, layout.H2)
        keys[(dominant_twice(layout.family, first.twice), dominant_twice(layout.family, second.twice))] = None
    combos = tuple(
        Combo(System(pd1, Weight(a)), System(pd2, Weight(b))) for a, b in sorted(keys, reverse=True)
    )
    return FactorSystem(system, working, twisted, pair, layout, combos)


def block_labels(fs: FactorSystem) -> dict[Weight, tuple]:
    """Label each parent weight by its combo and its child blocks."""
    out = {}
    for weight in fs.parent.coset:
        k, first, second = fs.weight_map(weight)
        combo = fs.combos[k]
        out[weight] = (k, combo.first.oracle.block_of(first), combo.second.oracle.block_of(second))
    return out


def partition_from_labels(vertices: Sequence[Weight], labels: dict[Weight, object]) -> tuple[tuple[int, ...], ...]:
    """Blocks as index tuples, grouping vertices with equal labels."""
    index = {}
    edges = []
    for i, v in enumerate(vertices):
        key = labels[v]
        if key in index:
            edges.append((index[key], i))
        else:
            index[key] = i
    return components(len(vertices), edges)


# ---------------------------------------------------------------------------
# Factor trees


@dataclass(frozen=True)
class FactorNode:
    """A node of the factor tree; leaves have ``split is None``."""

    system: System
    split: FactorSystem | None = None
    children: tuple[tuple["FactorNode", "FactorNode"], ...] = ()

    @property
    def is_leaf(self) -> bool:
        return self.split is None

    @property
    def block_count(self) -> int:
        if self.is_leaf:
            return self.system.oracle.oracle_count
        return sum(a.block_count * b.block_count for a, b in self.children)

    @property
    def leaf_count(self) -> int:
        """Number of pseudo-indecomposable factors (largest over combos)."""
        if self.is_leaf:
            return 1
        return max(a.leaf_count + b.leaf_count for a, b in self.children)

    def leaves(self, combo: int = 0) -> list["FactorNode"]:
        """Leaves along one combo choice at every level (the first by default)."""
        if self.is_leaf:
            return [self]
        a, b = self.children[min(combo, len(self.children) - 1)]
        return a.leaves(combo) + b.leaves(combo)

    def label(self, weight: Weight) -> tuple:
        if self.is_leaf:
            return (self.system.oracle.block_of(weight),)
        k, first, second = self.split.weight_map(weight)
        a, b = self.children[k]
        return (k, a.label(first), b.label(second))

    def leaf_weights(self, weight: Weight) -> list[Weight]:
        """The composed weight map: one weight per leaf on the weight's own branch."""
        if self.is_leaf:
            return [weight]
        k, first, second = self.split.weight_map(weight)
        a, b = self.children[k]
        return a.leaf_weights(first) + b.leaf_weights(second)

    def to_json(self) -> dict:
        out = {"system": self.system.to_json(), "blocks": self.block_count}
        if not self.is_leaf:
            out["split"] = self.split.to_json()
            out["children"] = [[a.to_json(), b.to_json()] for a, b in self.children]
        return out


class FactorizationLoop(RuntimeError):
    """A split produced a child no smaller than its parent."""


def factorize(system: System) -> FactorNode:
    """Split on minimal strongly separable pairs until every leaf is pseudo-indecomposable."""
    if not system.coset:
        raise EmptyCoset(system.describe())
    working, _ = standardized(system)
    pair = minimal_strong_pair(all_separable_pairs(working.pd, working.sd))
    if pair is None:
        return FactorNode(system)
    fs = split(system, pair)
    children = []
    for combo in fs.combos:
        for child in (combo.first, combo.second):
            if child.rs.rank >= system.rs.rank:
                raise FactorizationLoop(f"splitting {system.describe()} along {pair} did not shrink")
        children.append((factorize(combo.first), factorize(combo.second)))
    return FactorNode(system, fs, tuple(children))


# ---------------------------------------------------------------------------
# Rendering


def format_segmented(pd: ParabolicData, weight: Weight) -> str:
    """``(2, 1, 0, -1 | 1, 0 | )`` style, one bar between segments."""
    parts = [", ".join(format_coordinate(x) for x in weight.twice[lo:hi]) for lo, hi in pd.segments]
    return "(" + " | ".join(parts) + ")"


def _cell(entries: list[int]) -> str:
    if not entries:
        return ""
    shown = []
    for x in sorted(set(abs(e) for e in entries), reverse=True):
        signs = {e for e in entries if abs(e) == x}
        if len(signs) == 2:
            shown.append("±" + format_coordinate(x))
        else:
            shown.append(format_coordinate(next(iter(signs))))
    return " ".join(shown)


def render_T_table(pd: ParabolicData, sd: SingularData, weight: Weight) -> str:
    """The value-by-segment table of a Levi-regular weight, with box drawing.

    Columns are segments (the empty last segment is dropped) and rows are the
    block values a_t (the last row is dropped when the last block is empty).
    """
    family = pd.rs.family
    t = weight.twice
    segments = [seg for k, seg in enumerate(pd.segments) if not (k == pd.m - 1 and seg[0] == seg[1])]
    rows = [k for k in range(sd.m_bar) if not (k == sd.m_bar - 1 and sd.sizes[-1] == 0)]
    grid = []
    for k in rows:
        a = sd.values[k]
        line = []
        for lo, hi in segments:
            if family == "A":
                line.append(_cell([x for x in t[lo:hi] if x == a]))
            else:
                line.append(_cell([x for x in t[lo:hi] if abs(x) == a]))
        grid.append(line)
    widths = [max([1] + [len(r[c]) for r in grid]) for c in range(len(segments))]

    def rule(left: str, mid: str, right: str) -> str:
        return left + mid.join("─" * (w + 2) for w in widths) + right

    out = [rule("┌", "┬", "┐")]
    for r, line in enumerate(grid):
        out.append("│" + "│".join(f" {cell:^{w}} " for cell, w in zip(line, widths)) + "│")
        out.append(rule("├", "┼", "┤") if r < len(grid) - 1 else rule("└", "┴", "┘"))
    return "\n".join(out)

"""Partition-side invariants of a parabolic system.

Everything here is computed from the two subsets I and J alone, without any
weight: the partition of the Levi's principal nilpotent, its Richardson
partition after collapse, the nonemptiness test and the compatible pairs
(k, l) whose equivalence classes give a block count.  That independence is
what makes this a useful cross-check on the weight-based pipelines.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from itertools import accumulate
from typing import Iterable, Iterator

from networkx.utils import UnionFind

from .blocks import EmptyCoset
from .rootsys import ParabolicData, RootSystem, make_parabolic, phi_indices

SUPERSCRIPTS = str.maketrans("0123456789", "⁰¹²³⁴⁵⁶⁷⁸⁹")


class UnequalN(ValueError):
    """Dominance is only defined between partitions of the same integer."""


@dataclass(frozen=True, order=True)
class Partition:
    """Weakly decreasing positive parts; trailing zeros are dropped."""

    parts: tuple[int, ...]

    def __post_init__(self) -> None:
        parts = tuple(p for p in self.parts if p != 0)
        if any(p < 0 for p in parts):
            raise ValueError("partition parts must be non-negative")
        if list(parts) != sorted(parts, reverse=True):
            raise ValueError(f"parts {self.parts} are not weakly decreasing")
        object.__setattr__(self, "parts", parts)

    @classmethod
    def arrange(cls, values: Iterable[int]) -> "Partition":
        return cls(tuple(sorted(values, reverse=True)))

    @property
    def N(self) -> int:
        return sum(self.parts)

    def part(self, i: int) -> int:
        """The 1-based part ``i``, zero beyond the length."""
        return self.parts[i - 1] if 1 <= i <= len(self.parts) else 0

    def prefix(self, k: int) -> int:
        return sum(self.parts[:k])

    def multiplicity(self, value: int) -> int:
        return self.parts.count(value)

    @property
    def very_even(self) -> bool:
        return all(p % 2 == 0 and self.multiplicity(p) % 2 == 0 for p in self.parts)

    def __str__(self) -> str:
        if not self.parts:
            return "∅"
        out = []
        for value in sorted(set(self.parts), reverse=True):
            mult = self.multiplicity(value)
            out.append(str(value) + (str(mult).translate(SUPERSCRIPTS) if mult > 1 else ""))
        return "".join(out) if all(v < 10 for v in self.parts) else ",".join(out)

    def to_json(self) -> list[int]:
        return list(self.parts)


def dual(shape: Partition) -> Partition:
    """Transpose of the Young diagram."""
    if not shape.parts:
        return shape
    return Partition(tuple(sum(1 for p in shape.parts if p >= i) for i in range(1, shape.parts[0] + 1)))


def dominance_leq(lower: Partition, upper: Partition) -> bool:
    if lower.N != upper.N:
        raise UnequalN(f"{lower} and {upper} are partitions of different integers")
    length = max(len(lower.parts), len(upper.parts))
    return all(a <= b for a, b in zip(_prefixes(lower, length), _prefixes(upper, length)))


def _prefixes(shape: Partition, length: int) -> list[int]:
    return list(accumulate(shape.part(i) for i in range(1, length + 1)))


# ---------------------------------------------------------------------------
# Admissible partitions and collapse


def _bad_parity(family: str) -> int:
    """Parts of this parity must occur with even multiplicity."""
    return 1 if family == "C" else 0


def is_admissible(shape: Partition, family: str) -> bool:
    if family == "A":
        return True
    bad = _bad_parity(family)
    return all(shape.multiplicity(p) % 2 == 0 for p in set(shape.parts) if p % 2 == bad)


def collapse(shape: Partition, family: str) -> Partition:
    """The largest admissible partition dominated by ``shape``.

    Greedy repair: take the largest offending part q, lower its last copy by
    one and raise the first later part that is below q - 1.  Each step stays
    below the previous partition, and the brute-force search in
    :func:`collapse_brute_force` confirms the result is the maximum.
    """
    if family == "A":
        return shape
    if family == "C" and shape.N % 2:
        # odd parts pair up, so no partition of an odd integer is admissible
        raise ValueError(f"no type C partitions of the odd integer {shape.N}")
    bad = _bad_parity(family)
    parts = list(shape.parts)
    while True:
        offenders = [p for p in set(parts) if p > 0 and p % 2 == bad and parts.count(p) % 2]
        if not offenders:
            return Partition(tuple(parts))
        q = max(offenders)
        last = max(i for i, p in enumerate(parts) if p == q)
        parts[last] -= 1
        k = next((i for i in range(last + 1, len(parts)) if parts[i] < q - 1), None)
        if k is None:
            parts.append(1)
        else:
            parts[k] += 1
        parts.sort(reverse=True)


def all_partitions(N: int) -> Iterator[Partition]:
    """Every partition of N, in decreasing lexicographic order."""

    def rec(rest: int, cap: int) -> Iterator[tuple[int, ...]]:
        if rest == 0:
            yield ()
            return
        for first in range(min(rest, cap), 0, -1):
            for tail in rec(rest - first, first):
                yield (first,) + tail

    for parts in rec(N, N):
        yield Partition(parts)


@lru_cache(maxsize=None)
def admissible_partitions(family: str, N: int) -> tuple[Partition, ...]:
    return tuple(p for p in all_partitions(N) if is_admissible(p, family))


def collapse_brute_force(shape: Partition, family: str) -> Partition:
    """Reference collapse: the dominance maximum of the admissible set below ``shape``."""
    below = [candidate for candidate in admissible_partitions(family, shape.N) if dominance_leq(candidate, shape)]
    top = [candidate for candidate in below if all(dominance_leq(other, candidate) for other in below)]
    if len(top) != 1:
        raise ArithmeticError(f"no unique maximum below {shape} for type {family}")
    return top[0]


def orbit_dimension_N(rs: RootSystem) -> int:
    """Size of the natural representation, the integer being partitioned."""
    return rs.rank if rs.family == "A" else 2 * rs.rank + (rs.family == "B")


# ---------------------------------------------------------------------------
# Orbit labels


@dataclass(frozen=True)
class OrbitLabel:
    partition: Partition
    tag: str | None = None  # "I" or "II" for very even partitions in type D

    def __str__(self) -> str:
        return f"{self.partition}" + (f" ({self.tag})" if self.tag else "")

    def to_json(self) -> dict:
        return {"partition": self.partition.to_json(), "tag": self.tag}


def levi_partition(pd: ParabolicData) -> Partition:
    """The partition attached to the principal nilpotent of the Levi."""
    family = pd.rs.family
    sizes = pd.sizes
    if family == "A":
        return Partition.arrange(sizes)
    pairs = [x for size in sizes[:-1] for x in (size, size)]
    last = sizes[-1]
    if family == "B":
        return Partition.arrange(pairs + [2 * last + 1])
    if family == "C":
        return Partition.arrange(pairs + [2 * last])
    return Partition.arrange(pairs + ([2 * last - 1, 1] if last >= 2 else []))


def pi_I(pd: ParabolicData) -> OrbitLabel:
    shape = levi_partition(pd)
    tag = None
    if pd.rs.family == "D" and shape.very_even and shape.parts:
        tag = "II" if pd.nonstandard else "I"
    return OrbitLabel(shape, tag)


def richardson(pd: ParabolicData) -> OrbitLabel:
    """Collapse of the dual partition, with the type D very even label."""
    family = pd.rs.family
    shape = collapse(dual(levi_partition(pd)), family)
    tag = None
    if family == "D" and shape.very_even and shape.parts:
        four = pd.rs.rank % 4 == 0
        tag = "I" if four != pd.nonstandard else "II"
    return OrbitLabel(shape, tag)


def nonempty_criterion(pd_I: ParabolicData, pd_J: ParabolicData) -> bool:
    """Whether W.lambda-bar meets Lambda_I^+, decided from partitions alone.

    Both dominance inequalities are necessary.  They are also sufficient
    except for a type D configuration of very even partitions, where the
    standardness of J relative to n mod 4 decides.
    """
    rs = pd_I.rs
    if pd_I.nonstandard:
        pd_I = make_parabolic(rs, phi_indices(rs, pd_I.included))
        pd_J = make_parabolic(rs, phi_indices(rs, pd_J.included))
    a, b = levi_partition(pd_I), levi_partition(pd_J)
    if not (dominance_leq(a, dual(b)) and dominance_leq(b, dual(a))):
        return False
    if rs.family != "D" or not (a.very_even and b.very_even):
        return True
    if a != dual(b) or b != dual(a):
        return True
    four = rs.rank % 4 == 0
    return not ((pd_J.nonstandard and four) or (not pd_J.nonstandard and not four))


# ---------------------------------------------------------------------------
# Compatible pairs


@dataclass(frozen=True)
class _Side:
    """The data one side of the system contributes to compatibility."""

    family: str
    m: int
    sizes: tuple[int, ...]
    shape: Partition

    @property
    def last(self) -> int:
        return self.sizes[-1]


def _side(pd: ParabolicData) -> _Side:
    return _Side(pd.rs.family, pd.m, pd.sizes, levi_partition(pd))


def _compatible(k: int, own: _Side, other: _Side) -> bool:
    """k is compatible with (Phi, Phi_own, Phi_other)."""
    if own.family == "A" or not 1 <= k <= 2 * own.m - 1:
        return False
    nm, nbar = own.last, other.last
    pk = own.shape.part(k)
    second = other.shape.part(2)
    if own.family in "BC":
        if k % 2:
            cap = 2 * nm + 1 if own.family == "B" else 2 * nm
            return second >= k >= 2 * nbar + 1 and pk <= cap
        return k <= 2 * nbar and pk >= 2 * nm + 1
    if k % 2 == 0:
        return second >= k >= 2 * nbar and pk >= 2 * nm
    return k <= 2 * nbar - 1 and pk <= 2 * nm - 1


def compatible_k(k: int, pd_I: ParabolicData, pd_J: ParabolicData) -> bool:
    return _compatible(k, _side(pd_I), _side(pd_J))


def prefix_gap(k: int, own: _Side, other: _Side) -> int:
    """How far the prefix of pi_other^t exceeds that of pi_own at a separable k.

    Zero except for type D with k odd: there pi_other ends in the part 1
    coming from the last Levi factor, which always contributes one box to
    the dual's first column that the own side cannot match.  Counting the
    largest possible contributions of n_s(a_t) column by column gives the
    same chain of inequalities as in types B/C, ending in ``+1`` instead of
    an equality.
    """
    return 1 if own.family == "D" and k % 2 == 1 else 0


def _prefix_match(k: int, own: _Side, other: _Side) -> bool:
    return own.shape.prefix(k) + prefix_gap(k, own, other) == dual(other.shape).prefix(k)


def _l_range(k: int, other: _Side) -> tuple[int, int]:
    low = 2 * sum(1 for t in other.sizes[:-1] if t > k)
    high = 2 * sum(1 for t in other.sizes[:-1] if t >= k)
    return low, high


@dataclass(frozen=True, order=True)
class CompatiblePair:
    k: int
    l: int
    trivial: bool = False

    @property
    def odd(self) -> bool:
        return self.k % 2 == 1

    def __str__(self) -> str:
        return f"({self.k},{self.l})"

    def to_json(self) -> dict:
        return {"k": self.k, "l": self.l, "trivial": self.trivial, "odd": self.odd}


@dataclass(frozen=True)
class CompatibleClasses:
    family: str
    pairs: tuple[CompatiblePair, ...]
    classes: tuple[tuple[int, ...], ...]

    @property
    def nontrivial_class_count(self) -> int:
        return sum(1 for members in self.classes if not any(self.pairs[i].trivial for i in members))

    @property
    def has_odd(self) -> bool:
        return any(p.odd for p in self.pairs)

    def to_json(self) -> dict:
        return {
            "pairs": [p.to_json() for p in self.pairs],
            "classes": [[str(self.pairs[i]) for i in members] for members in self.classes],
        }


def _trivial_anchors(family: str, m: int, m_bar: int) -> set[tuple[int, int]]:
    if family == "D":
        return {(2, 2 * m_bar - 2), (2 * m - 2, 2)}
    return {(2, 2 * m_bar - 1), (2 * m - 1, 2)}


def compatible_pairs(pd_I: ParabolicData, pd_J: ParabolicData) -> CompatibleClasses:
    """The set of compatible pairs, its classes and trivial flags."""
    own, other = _side(pd_I), _side(pd_J)
    family = own.family
    if family == "A":
        return CompatibleClasses(family, (), ())
    ks = [k for k in range(1, 2 * own.m) if _compatible(k, own, other) and _prefix_match(k, own, other)]
    ls = [l for l in range(1, 2 * other.m) if _compatible(l, other, own) and _prefix_match(l, other, own)]
    found = []
    for k in ks:
        low, high = _l_range(k, other)
        wants_even = (k % 2 == 1) if family in "BC" else (k % 2 == 0)
        for l in ls:
            if wants_even and l % 2 == 0 and low <= l <= high:
                found.append((k, l))
            elif not wants_even and l % 2 == 1 and low + 1 <= l <= high + 1:
                found.append((k, l))
    found.sort()
    uf = UnionFind(range(len(found)))
    for a in range(len(found)):
        for b in range(a + 1, len(found)):
            (k1, l1), (k2, l2) = found[a], found[b]
            if (l1 == l2 and (k1 - k2) % 2 == 0) or (k1 == k2 and (l1 - l2) % 2 == 0):
                uf.union(a, b)
    classes = tuple(sorted(tuple(sorted(c)) for c in uf.to_sets())) if found else ()
    anchors = _trivial_anchors(family, own.m, other.m)
    trivial = set()
    for members in classes:
        if any(found[i] in anchors for i in members):
            trivial.update(members)
    pairs = tuple(CompatiblePair(k, l, i in trivial) for i, (k, l) in enumerate(found))
    return CompatibleClasses(family, pairs, classes)


@dataclass(frozen=True)
class PartitionCount:
    count: int
    theorem: str


def count_from_partitions(pd_I: ParabolicData, pd_J: ParabolicData) -> PartitionCount:
    """Block count from the compatible pairs; raises for empty systems."""
    if not nonempty_criterion(pd_I, pd_J):
        raise EmptyCoset(f"{pd_I.describe()} with J={sorted(pd_J.included)} has no simple modules")
    family = pd_I.rs.family
    if family == "A":
        return PartitionCount(1, "type A: at most one block")
    cc = compatible_pairs(pd_I, pd_J)
    if family in "BC":
        return PartitionCount(2 ** cc.nontrivial_class_count, "compatible pairs (B/C)")
    if cc.has_odd:
        return PartitionCount(2 ** max(len(cc.classes) - 1, 0), "compatible pairs, odd (D)")
    return PartitionCount(2 ** cc.nontrivial_class_count, "compatible pairs, even (D)")


@dataclass(frozen=True)
class PartitionReport:
    pd_I: ParabolicData
    pd_J: ParabolicData

    @cached_property
    def nonempty(self) -> bool:
        return nonempty_criterion(self.pd_I, self.pd_J)

    def to_json(self) -> dict:
        out = {
            "pi_I": pi_I(self.pd_I).to_json(),
            "pi_J": pi_I(self.pd_J).to_json(),
            "richardson_I": richardson(self.pd_I).to_json(),
            "richardson_J": richardson(self.pd_J).to_json(),
            "nonempty": self.nonempty,
        }
        if self.nonempty:
            out["compatible"] = compatible_pairs(self.pd_I, self.pd_J).to_json()
            out["predicted_blocks"] = count_from_partitions(self.pd_I, self.pd_J).count
        return out

"""Separable pairs (S, S_bar) and the block counts they predict.

Segments and blocks are numbered from 1 in this module to match the tables
printed by the command line; internally ``m`` is the number of Levi segments
and ``m_bar`` the number of blocks of the dominant weight.

The central statistic is the count table of one coset weight: a pair is
separable when the table is at its structural cap on S x S_bar and vanishes
off both.  The table of any coset weight gives the same answer, so one
representative suffices (the sweep re-checks this on every weight).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from itertools import combinations

from networkx.utils import UnionFind

from .blocks import EmptyCoset
from .rootsys import ParabolicData
from .weights import CountTable, SingularData, Weight, count_table, enumerate_coset, max_count, parity


class TheoremViolation(AssertionError):
    """Two separable pairs that the comparability lemma says cannot coexist."""


class TooFewSimples(ValueError):
    """Pseudo-indecomposability needs at least two simple modules."""


class NotTwoBlockCase(ValueError):
    """The parity criterion applies only to two-block pseudo-indecomposable systems."""


@dataclass(frozen=True, order=True)
class SeparablePair:
    S: tuple[int, ...]
    S_bar: tuple[int, ...]
    weak: bool = False
    trivial: bool = False
    odd: bool = False

    @property
    def strong(self) -> bool:
        return not self.weak

    @property
    def key(self) -> tuple[tuple[int, ...], tuple[int, ...]]:
        return self.S, self.S_bar

    def __str__(self) -> str:
        left = ",".join(map(str, self.S))
        right = ",".join(map(str, self.S_bar))
        return f"({{{left}}},{{{right}}})"

    def to_json(self) -> dict:
        return {
            "S": list(self.S),
            "S_bar": list(self.S_bar),
            "strong": self.strong,
            "trivial": self.trivial,
            "odd": self.odd,
        }


def pair_leq(p: SeparablePair, q: SeparablePair) -> bool:
    """``p <= q`` iff S_p is inside S_q and S_bar_p contains S_bar_q."""
    return set(p.S) <= set(q.S) and set(p.S_bar) >= set(q.S_bar)


def pair_partial_order(p: SeparablePair, q: SeparablePair) -> str:
    """``less``, ``greater``, ``equal`` or ``incomparable``.

    Raises :class:`TheoremViolation` for incomparable pairs differing in both
    coordinates, which the comparability lemma excludes.
    """
    if p.key == q.key:
        return "equal"
    if pair_leq(p, q):
        return "less"
    if pair_leq(q, p):
        return "greater"
    if p.S != q.S and p.S_bar != q.S_bar:
        raise TheoremViolation(f"incomparable separable pairs {p} and {q}")
    return "incomparable"


def is_separable_pair(pd: ParabolicData, sd: SingularData, weight: Weight, S, S_bar) -> bool:
    """Check the five defining conditions for one weight (1-based S, S_bar)."""
    table = count_table(pd, sd, weight)
    return _is_separable(pd, sd, table, frozenset(S), frozenset(S_bar))


def _is_separable(pd: ParabolicData, sd: SingularData, table: CountTable, S: frozenset, S_bar: frozenset) -> bool:
    m, mb = pd.m, sd.m_bar
    if m <= 1 or mb <= 1 or not S or not S_bar:
        return False
    for s in range(1, m + 1):
        for t in range(1, mb + 1):
            value = table[s - 1, t - 1]
            if s in S and t in S_bar and value != max_count(pd, s - 1, sd.values[t - 1]):
                return False
            if s not in S and t not in S_bar and value != 0:
                return False
    return _last_condition(pd, sd, S, S_bar)


def _last_condition(pd: ParabolicData, sd: SingularData, S, S_bar) -> bool:
    family = pd.rs.family
    if family in "BC":
        return (pd.m in S) == (sd.m_bar not in S_bar)
    if family == "D":
        return (pd.m in S) == (sd.m_bar in S_bar)
    return True


def _subsets(items: list[int]):
    for r in range(len(items) + 1):
        for combo in combinations(items, r):
            yield frozenset(combo)


def separable_keys(pd: ParabolicData, sd: SingularData, table: CountTable) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
    """All separable (S, S_bar) for a count table, sorted lexicographically.

    For each S the admissible S_bar form an interval: they must avoid every
    column where some s in S misses its cap, and must contain every column
    where some s outside S is nonzero.
    """
    m, mb = pd.m, sd.m_bar
    if m <= 1 or mb <= 1:
        return []
    cap = [[table[s, t] == max_count(pd, s, sd.values[t]) for t in range(mb)] for s in range(m)]
    zero = [[table[s, t] == 0 for t in range(mb)] for s in range(m)]
    found = []
    for S0 in _subsets(list(range(m))):
        if not S0:
            continue
        allowed = {t for t in range(mb) if all(cap[s][t] for s in S0)}
        required = {t for t in range(mb) if not all(zero[s][t] for s in range(m) if s not in S0)}
        if not required <= allowed:
            continue
        for extra in _subsets(sorted(allowed - required)):
            Sb0 = required | extra
            if not Sb0:
                continue
            S = frozenset(s + 1 for s in S0)
            S_bar = frozenset(t + 1 for t in Sb0)
            if _last_condition(pd, sd, S, S_bar):
                found.append((tuple(sorted(S)), tuple(sorted(S_bar))))
    return sorted(found)


@dataclass(frozen=True)
class PairClasses:
    """The set of separable pairs, its equivalence classes and their flags."""

    family: str
    m: int
    m_bar: int
    pairs: tuple[SeparablePair, ...]
    classes: tuple[tuple[int, ...], ...]

    @property
    def empty(self) -> bool:
        return not self.pairs

    def class_trivial(self, c: int) -> bool:
        return any(self.pairs[i].trivial for i in self.classes[c])

    @property
    def nontrivial_class_count(self) -> int:
        return sum(1 for c in range(len(self.classes)) if not self.class_trivial(c))

    @property
    def strong_pairs(self) -> tuple[SeparablePair, ...]:
        return tuple(p for p in self.pairs if p.strong)

    @property
    def has_strong(self) -> bool:
        return bool(self.strong_pairs)

    @property
    def odd(self) -> bool:
        return any(p.odd for p in self.pairs)

    def class_of(self, pair: SeparablePair) -> int:
        k = self.pairs.index(pair)
        return next(c for c, members in enumerate(self.classes) if k in members)

    def to_json(self) -> dict:
        return {
            "pairs": [p.to_json() for p in self.pairs],
            "classes": [[str(self.pairs[i]) for i in members] for members in self.classes],
        }


def _weak_shapes(m: int, mb: int) -> set[tuple[tuple[int, ...], tuple[int, ...]]]:
    low = tuple(range(1, m))
    full = tuple(range(1, m + 1))
    low_bar = tuple(range(1, mb))
    full_bar = tuple(range(1, mb + 1))
    return {(low, (mb,)), (full, (mb,)), ((m,), low_bar), ((m,), full_bar)}


def _trivial_anchors(family: str, m: int, mb: int) -> set[tuple[tuple[int, ...], tuple[int, ...]]]:
    if family in "BC":
        left = {((s0,), tuple(range(1, mb + 1))) for s0 in range(1, m)}
        right = {(tuple(range(1, m + 1)), (t0,)) for t0 in range(1, mb)}
    elif family == "D":
        left = {((s0,), tuple(range(1, mb))) for s0 in range(1, m)}
        right = {(tuple(range(1, m)), (t0,)) for t0 in range(1, mb)}
    else:
        return set()
    return left | right


def classify(family: str, m: int, mb: int, keys) -> PairClasses:
    """Attach weak/trivial/odd flags and equivalence classes to pair keys."""
    keys = sorted(keys)
    weak_shapes = _weak_shapes(m, mb) if family != "A" else set()
    uf = UnionFind(range(len(keys)))
    for a in range(len(keys)):
        for b in range(a + 1, len(keys)):
            (S1, T1), (S2, T2) = keys[a], keys[b]
            same_bar = T1 == T2 and (set(S1) < set(S2) or set(S2) < set(S1))
            same_s = S1 == S2 and (set(T1) < set(T2) or set(T2) < set(T1))
            if same_bar or same_s:
                uf.union(a, b)
    classes = tuple(sorted(tuple(sorted(c)) for c in uf.to_sets())) if keys else ()
    anchors = _trivial_anchors(family, m, mb)
    anchored = {i for i, k in enumerate(keys) if k in anchors}
    trivial_members = set()
    for members in classes:
        if anchored & set(members):
            trivial_members.update(members)
    pairs = tuple(
        SeparablePair(
            S,
            T,
            weak=(S, T) in weak_shapes,
            trivial=i in trivial_members,
            odd=family == "D" and m in S,
        )
        for i, (S, T) in enumerate(keys)
    )
    return PairClasses(family, m, mb, pairs, classes)


@lru_cache(maxsize=8192)
def _pair_classes(pd: ParabolicData, sd: SingularData) -> PairClasses:
    coset = enumerate_coset(pd, sd.dominant)
    if not coset:
        raise EmptyCoset(f"no simple modules for {pd.describe()} and {sd.describe()}")
    table = count_table(pd, sd, coset[0])
    return classify(pd.rs.family, pd.m, sd.m_bar, separable_keys(pd, sd, table))


def all_separable_pairs(pd: ParabolicData, sd: SingularData) -> PairClasses:
    return _pair_classes(pd, sd)


@dataclass(frozen=True)
class Prediction:
    count: int
    theorem: str


def _pow2_guard(k: int) -> int:
    return 2 ** max(k, 0)


def predicted_block_count(pd: ParabolicData, sd: SingularData) -> Prediction:
    """Block count from the separable-pair theorems."""
    family = pd.rs.family
    classes = all_separable_pairs(pd, sd)
    if family == "A":
        return Prediction(1, "type A: at most one block")
    if classes.empty:
        return Prediction(1, "not separable: one block")
    n_last = pd.sizes[-1]
    nb_last = sd.sizes[-1]
    m, mb = pd.m, sd.m_bar
    if not classes.has_strong:
        if family in "BC":
            two = (n_last, nb_last) in {(0, m - 1), (mb - 1, 0)}
        else:
            two = (n_last, nb_last) == (mb, m)
        return Prediction(2 if two else 1, "weakly separable")
    if family in "BC":
        return Prediction(_pow2_guard(classes.nontrivial_class_count), "strongly separable (B/C)")
    if classes.odd:
        return Prediction(_pow2_guard(len(classes.classes) - 1), "strongly separable, odd (D)")
    return Prediction(_pow2_guard(classes.nontrivial_class_count), "strongly separable, even (D)")


def is_pseudo_indecomposable(pd: ParabolicData, sd: SingularData) -> bool:
    if len(enumerate_coset(pd, sd.dominant)) < 2:
        raise TooFewSimples("pseudo-indecomposability needs at least two simple modules")
    return not all_separable_pairs(pd, sd).has_strong


def two_block_membership(pd: ParabolicData, sd: SingularData, x: Weight, y: Weight) -> bool:
    """Same block iff equal parity, for two-block pseudo-indecomposable systems."""
    if not is_pseudo_indecomposable(pd, sd) or predicted_block_count(pd, sd).count != 2:
        raise NotTwoBlockCase("the parity criterion needs a pseudo-indecomposable two-block system")
    return parity(x) == parity(y)


def minimal_strong_pair(classes: PairClasses) -> SeparablePair | None:
    """A minimal strongly separable pair; ties broken lexicographically."""
    strong = classes.strong_pairs
    minimal = [p for p in strong if not any(q.key != p.key and pair_leq(q, p) for q in strong)]
    return min(minimal, key=lambda p: p.key) if minimal else None


@dataclass(frozen=True)
class SeparabilityReport:
    pd: ParabolicData
    sd: SingularData

    @cached_property
    def classes(self) -> PairClasses:
        return all_separable_pairs(self.pd, self.sd)

    @cached_property
    def prediction(self) -> Prediction:
        return predicted_block_count(self.pd, self.sd)

    def to_json(self) -> dict:
        return {
            **self.classes.to_json(),
            "predicted_blocks": self.prediction.count,
            "theorem": self.prediction.theorem,
        }

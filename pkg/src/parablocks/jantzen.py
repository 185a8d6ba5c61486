"""Jantzen coefficients between generalized Verma modules and linked roots.

For lambda in Lambda_I^+ the coefficient c(lambda, mu) is a signed count over
the non-Levi positive roots beta with <lambda, beta^vee> > 0: reflect, drop the
result if it is singular for the Levi, conjugate it into Lambda_I^+ and add
(-1)^length of the conjugating element to the entry of the target.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from .rootsys import DIFF, LONG, SHORT, SUM, ParabolicData, Root, coroot_pairing, phi_root, reflect_twice
from .weights import (
    SingularData,
    Weight,
    WeightNotInCoset,
    in_Lambda_I_plus,
    normalize_twice,
    phi,
    same_orbit,
)


@dataclass(frozen=True)
class JantzenEntry:
    """One coefficient together with the roots that contribute to it."""

    source: Weight
    target: Weight
    witnesses: tuple[tuple[Root, int], ...] = field(default=())

    @property
    def c(self) -> int:
        return sum(1 if par == 0 else -1 for _, par in self.witnesses)

    def to_json(self) -> dict:
        return {
            "source": self.source.to_json(),
            "target": self.target.to_json(),
            "c": self.c,
            "witnesses": [{"root": str(r), "sign": 1 if par == 0 else -1} for r, par in self.witnesses],
        }


def psi_plus(pd: ParabolicData, weight: Weight) -> list[Root]:
    """Non-Levi positive roots pairing strictly positively with ``weight``."""
    return [r for r in pd.nonlevi_roots if coroot_pairing(weight.twice, r) > 0]


def jantzen_row(pd: ParabolicData, weight: Weight) -> dict[Weight, JantzenEntry]:
    """The nonzero coefficients c(weight, .), keyed by target.

    Targets come out in decreasing lexicographic order.  Targets whose
    witnesses cancel are left out here; :func:`jantzen_coefficient` still
    reports them with their witnesses.
    """
    if not in_Lambda_I_plus(pd, weight):
        raise WeightNotInCoset(f"{weight} is not in Lambda_I^+ for {pd.describe()}")
    return {t: e for t, e in _row(pd, weight).items() if e.c}


@lru_cache(maxsize=65536)
def _row(pd: ParabolicData, weight: Weight) -> dict[Weight, JantzenEntry]:
    # shared between callers: read it, never mutate it
    return dict(_row_items(pd, weight))


@lru_cache(maxsize=65536)
def _row_items(pd: ParabolicData, weight: Weight) -> tuple[tuple[Weight, JantzenEntry], ...]:
    grouped: dict[tuple[int, ...], list[tuple[Root, int]]] = {}
    for root in psi_plus(pd, weight):
        res = normalize_twice(pd, reflect_twice(weight.twice, root))
        if res is None:
            continue
        target, par = res
        grouped.setdefault(target, []).append((root, par))
    return tuple(
        (Weight(t), JantzenEntry(weight, Weight(t), tuple(ws)))
        for t, ws in sorted(grouped.items(), reverse=True)
    )


def jantzen_coefficient(pd: ParabolicData, source: Weight, target: Weight) -> JantzenEntry:
    """The entry c(source, target); both must lie in Lambda_I^+ and one W-orbit."""
    if not in_Lambda_I_plus(pd, source) or not in_Lambda_I_plus(pd, target):
        raise WeightNotInCoset("both weights must lie in Lambda_I^+")
    if not same_orbit(pd.rs, source, target):
        raise WeightNotInCoset(f"{source} and {target} lie in different Weyl group orbits")
    return _row(pd, source).get(target, JantzenEntry(source, target))


def is_linked(pd: ParabolicData, weight: Weight, root: Root) -> bool:
    """Direct test whether ``root`` links ``weight`` and its reflection.

    Both endpoints are conjugated into Lambda_I^+; the coefficient is read
    from the side where the root pairs positively.
    """
    pairing = coroot_pairing(weight.twice, root)
    if pairing == 0:
        return False
    here = normalize_twice(pd, weight.twice)
    there = normalize_twice(pd, reflect_twice(weight.twice, root))
    if here is None or there is None or here[0] == there[0]:
        return False
    src, dst = (here[0], there[0]) if pairing > 0 else (there[0], here[0])
    entry = _row(pd, Weight(src)).get(Weight(dst))
    return entry is not None and entry.c != 0


# ---------------------------------------------------------------------------
# The closed-form criterion


def _segment_counts(pd: ParabolicData, t: tuple[int, ...], s: int) -> dict[int, int]:
    lo, hi = pd.segments[s]
    counts: dict[int, int] = {}
    for x in t[lo:hi]:
        counts[abs(x)] = counts.get(abs(x), 0) + 1
    return counts


def linked_criterion(pd: ParabolicData, sd: SingularData, weight: Weight, root: Root) -> bool:
    """Predict :func:`is_linked` from segment counts alone.

    Assumes ``weight`` and its reflection are distinct and Levi-regular.  Type
    A has no exceptions; for B/C/D the exception shapes are checked one
    predicate per shape so that a disagreement points at a single rule.
    """
    family = pd.rs.family
    if family == "A":
        return True
    if pd.nonstandard:
        return linked_criterion(pd.standard, sd, phi(weight), phi_root(pd.rs, root))
    t = weight.twice
    last = pd.m - 1
    if family in "BC":
        return not any(rule(pd, t, root, last) for rule in (_bc_one_coordinate, _bc_inside, _bc_across_sum, _bc_across_diff))
    return not any(rule(pd, t, root, last) for rule in (_d_inside, _d_across_sum, _d_across_diff))


def _bc_guard(pd: ParabolicData, t: tuple[int, ...], s: int, a: int, last: int) -> bool:
    """n_s(a) = 1 and n_s(0) + n_m(a) = 1 with s < m and a > 0."""
    if s >= last or a <= 0:
        return False
    here = _segment_counts(pd, t, s)
    there = _segment_counts(pd, t, last)
    return here.get(a, 0) == 1 and here.get(0, 0) + there.get(a, 0) == 1


def _bc_one_coordinate(pd, t, root, last) -> bool:
    if root.kind not in (SHORT, LONG):
        return False
    return _bc_guard(pd, t, pd.segment_of(root.i), abs(t[root.i]), last)


def _bc_inside(pd, t, root, last) -> bool:
    """e_i + e_j inside one segment joining the a-entry and the 0-entry."""
    if root.kind != SUM:
        return False
    s = pd.segment_of(root.i)
    if s != pd.segment_of(root.j):
        return False
    x, y = abs(t[root.i]), abs(t[root.j])
    if min(x, y) != 0:
        return False
    return _bc_guard(pd, t, s, max(x, y), last)


def _bc_across_sum(pd, t, root, last) -> bool:
    """e_i + e_j from segment s into the last segment with equal entries."""
    if root.kind != SUM or pd.segment_of(root.j) != last or pd.segment_of(root.i) == last:
        return False
    if t[root.i] != t[root.j]:
        return False
    return _bc_guard(pd, t, pd.segment_of(root.i), abs(t[root.i]), last)


def _bc_across_diff(pd, t, root, last) -> bool:
    """e_i - e_j from segment s into the last segment with opposite entries."""
    if root.kind != DIFF or pd.segment_of(root.j) != last or pd.segment_of(root.i) == last:
        return False
    if t[root.i] != -t[root.j]:
        return False
    return _bc_guard(pd, t, pd.segment_of(root.i), abs(t[root.i]), last)


def _d_guard(pd: ParabolicData, t: tuple[int, ...], s: int, a: int, last: int) -> bool:
    """n_s(a) = n_m(a) = 1 and n_s(0) = n_m(0) = 1 with s < m and a > 0."""
    if s >= last or a <= 0:
        return False
    here = _segment_counts(pd, t, s)
    there = _segment_counts(pd, t, last)
    return here.get(a, 0) == 1 and there.get(a, 0) == 1 and here.get(0, 0) == 1 and there.get(0, 0) == 1


def _d_inside(pd, t, root, last) -> bool:
    if root.kind != SUM:
        return False
    s = pd.segment_of(root.i)
    if s != pd.segment_of(root.j):
        return False
    x, y = abs(t[root.i]), abs(t[root.j])
    if min(x, y) != 0:
        return False
    return _d_guard(pd, t, s, max(x, y), last)


def _d_across_sum(pd, t, root, last) -> bool:
    if root.kind != SUM or pd.segment_of(root.j) != last or pd.segment_of(root.i) == last:
        return False
    if t[root.i] != t[root.j]:
        return False
    return _d_guard(pd, t, pd.segment_of(root.i), abs(t[root.i]), last)


def _d_across_diff(pd, t, root, last) -> bool:
    if root.kind != DIFF or pd.segment_of(root.j) != last or pd.segment_of(root.i) == last:
        return False
    if t[root.i] != -t[root.j]:
        return False
    return _d_guard(pd, t, pd.segment_of(root.i), abs(t[root.i]), last)

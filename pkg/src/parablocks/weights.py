"""Weights, Levi normalization, dominant representatives and coset enumeration.

A :class:`Weight` stores twice its coordinates so that the all-half-integer
weights of types B and D stay exact.  Most routines here work on one Levi
segment at a time; nonstandard D parabolics are handled by conjugating with
``phi`` (negate the last coordinate), which swaps alpha_{n-1} and alpha_n.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Iterable, Iterator, Sequence

from .rootsys import (
    InvalidSystem,
    ParabolicData,
    RootSystem,
    SignedPermutation,
    coroot_pairing,
    make_parabolic,
)


class NotIntegral(ValueError):
    """The weight is not integral for the root system."""


class NotRegular(ValueError):
    """The weight pairs to zero with some root of the Levi subsystem."""


class DegenerateSingularity(ValueError):
    """D_n dominant weight whose only zero coordinate is the last one.

    For such weights the last nonzero block value would be 0, a configuration
    the separable-pair calculus does not cover.  The same singular set J is
    realized by :func:`canonical_dominant`, which never degenerates.
    """


class WeightNotInCoset(ValueError):
    """The weight is not in W.lambda-bar intersected with Lambda_I^+."""


@dataclass(frozen=True, order=True)
class Weight:
    """A weight given by doubled coordinates (``twice[i] == 2 * lambda_i``)."""

    twice: tuple[int, ...]

    @classmethod
    def of(cls, *values: int | Fraction | str) -> "Weight":
        out = []
        for v in values:
            q = Fraction(v)
            if (2 * q).denominator != 1:
                raise NotIntegral(f"{v} is not a half-integer")
            out.append(int(2 * q))
        return cls(tuple(out))

    @classmethod
    def parse(cls, text: str) -> "Weight":
        """Parse ``"2,1,1,0"`` or ``"1/2,-1/2"`` (commas or spaces)."""
        parts = [p for p in text.replace(",", " ").split() if p]
        return cls.of(*parts)

    @property
    def values(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(t, 2) for t in self.twice)

    @property
    def rank(self) -> int:
        return len(self.twice)

    def __len__(self) -> int:
        return len(self.twice)

    def __str__(self) -> str:
        return "(" + ", ".join(format_coordinate(t) for t in self.twice) + ")"

    def to_json(self) -> list[int | str]:
        return [t // 2 if t % 2 == 0 else f"{t}/2" for t in self.twice]


def format_coordinate(twice: int) -> str:
    return str(twice // 2) if twice % 2 == 0 else f"{twice}/2"


def check_integral(rs: RootSystem, weight: Weight) -> None:
    """Raise :class:`NotIntegral` unless every coroot pairing is an integer."""
    if len(weight) != rs.rank:
        raise NotIntegral(f"expected {rs.rank} coordinates, got {len(weight)}")
    odd = [t % 2 for t in weight.twice]
    if rs.family in "AC" and any(odd):
        raise NotIntegral(f"{rs} weights must have integer coordinates")
    if rs.family in "BD" and len(set(odd)) > 1:
        raise NotIntegral(f"{rs} weights must be all integers or all half-integers")


def parity(weight: Weight) -> int:
    """Number of strictly negative coordinates, mod 2."""
    return sum(1 for t in weight.twice if t < 0) % 2


def phi(weight: Weight) -> Weight:
    """Negate the last coordinate (the D_n diagram automorphism)."""
    if not weight.twice:
        return weight
    return Weight(weight.twice[:-1] + (-weight.twice[-1],))


def _phi_twice(t: tuple[int, ...]) -> tuple[int, ...]:
    return t[:-1] + (-t[-1],) if t else t


# ---------------------------------------------------------------------------
# Levi normalization


@lru_cache(maxsize=1 << 16)
def _normalize_segment(kind: str, seg: tuple[int, ...]) -> tuple[tuple[int, ...], int] | None:
    """Sort one segment into its dominant chamber.

    Returns the sorted entries together with the number of Levi positive
    roots pairing negatively with the input (the length of the sorting
    element), or ``None`` if the segment is singular.
    """
    k = len(seg)
    if kind == "A":
        if len(set(seg)) < k:
            return None
        inv = sum(1 for i in range(k) for j in range(i + 1, k) if seg[i] < seg[j])
        return tuple(sorted(seg, reverse=True)), inv
    absolute = [abs(x) for x in seg]
    if len(set(absolute)) < k:
        return None
    inv = sum(
        (seg[i] < seg[j]) + (seg[i] + seg[j] < 0) for i in range(k) for j in range(i + 1, k)
    )
    negatives = sum(1 for x in seg if x < 0)
    out = sorted(absolute, reverse=True)
    if kind in "BC":
        if 0 in absolute:
            return None
        return tuple(out), inv + negatives
    if out and out[-1] != 0 and negatives % 2:
        out[-1] = -out[-1]
    return tuple(out), inv


@lru_cache(maxsize=None)
def _segment_plan(pd: ParabolicData) -> tuple[tuple[str, int, int], ...]:
    return tuple((pd.segment_kind(s), a, b) for s, (a, b) in enumerate(pd.segments))


def _normalize_standard(pd: ParabolicData, t: tuple[int, ...]) -> tuple[tuple[int, ...], int] | None:
    out = list(t)
    length = 0
    for kind, a, b in _segment_plan(pd):
        res = _normalize_segment(kind, t[a:b])
        if res is None:
            return None
        out[a:b], inv = res
        length += inv
    return tuple(out), length % 2


@lru_cache(maxsize=1 << 18)
def normalize_twice(pd: ParabolicData, t: tuple[int, ...]) -> tuple[tuple[int, ...], int] | None:
    """Doubled-coordinate core of :func:`normalize_to_Lambda_I`; ``None`` if singular."""
    if pd.nonstandard:
        res = _normalize_standard(pd.standard, _phi_twice(t))
        if res is None:
            return None
        return _phi_twice(res[0]), res[1]
    return _normalize_standard(pd, t)


def normalize_to_Lambda_I(pd: ParabolicData, weight: Weight) -> tuple[Weight, int]:
    """The unique W_I-conjugate in Lambda_I^+ and the parity of the conjugating element."""
    res = normalize_twice(pd, weight.twice)
    if res is None:
        raise NotRegular(f"{weight} is singular for {pd.describe()}")
    return Weight(res[0]), res[1]


def is_phiI_regular(pd: ParabolicData, weight: Weight) -> bool:
    return normalize_twice(pd, weight.twice) is not None


def in_Lambda_I_plus(pd: ParabolicData, weight: Weight) -> bool:
    """Every simple root of I pairs strictly positively with the weight."""
    return all(
        coroot_pairing(weight.twice, pd.rs.simple_root(k)) > 0 for k in pd.included
    )


# ---------------------------------------------------------------------------
# Dominant representatives


def dominant_twice(family: str, t: Sequence[int]) -> tuple[int, ...]:
    if family == "A":
        return tuple(sorted(t, reverse=True))
    out = sorted((abs(x) for x in t), reverse=True)
    if family == "D" and out and out[-1] != 0 and sum(1 for x in t if x < 0) % 2:
        out[-1] = -out[-1]
    return tuple(out)


def find_signed_permutation(family: str, src: Sequence[int], dst: Sequence[int]) -> SignedPermutation:
    """Some Weyl group element ``w`` with ``w src = dst``.

    Raises ``ValueError`` when the two weights lie in different orbits.
    """
    n = len(src)
    used = [False] * n
    perm = [0] * n
    signs = [1] * n
    for j, x in enumerate(src):
        for k, y in enumerate(dst):
            if used[k]:
                continue
            if y == x or (family != "A" and y == -x):
                used[k] = True
                perm[j] = k
                signs[j] = -1 if (y == -x and x != 0) else 1
                break
        else:
            raise ValueError("weights lie in different Weyl group orbits")
    if family == "D" and signs.count(-1) % 2:
        zero = next((j for j, x in enumerate(src) if x == 0), None)
        if zero is None:
            raise ValueError("weights lie in different W(D) orbits")
        signs[zero] = -signs[zero]
    return SignedPermutation(tuple(perm), tuple(signs), family)


def dominant_rep(rs: RootSystem, weight: Weight) -> tuple[Weight, SignedPermutation]:
    """The dominant weight of the orbit and an element carrying ``weight`` to it."""
    target = dominant_twice(rs.family, weight.twice)
    return Weight(target), find_signed_permutation(rs.family, weight.twice, target)


def is_dominant(rs: RootSystem, weight: Weight) -> bool:
    return all(coroot_pairing(weight.twice, r) >= 0 for r in rs.simple_roots())


def same_orbit(rs: RootSystem, x: Weight, y: Weight) -> bool:
    return dominant_twice(rs.family, x.twice) == dominant_twice(rs.family, y.twice)


# ---------------------------------------------------------------------------
# Singular data


def singular_roots(rs: RootSystem, weight: Weight) -> frozenset[int]:
    """Indices of the simple roots orthogonal to ``weight``."""
    return frozenset(
        k for k in range(1, rs.simple_count + 1) if coroot_pairing(weight.twice, rs.simple_root(k)) == 0
    )


@dataclass(frozen=True)
class SingularData:
    """Block structure of a dominant weight: J, block sizes and block values.

    ``values[t]`` holds twice the value a_{t+1}; for B/C/D it is an absolute
    value and the last entry is 0, for type A it is the last block's value.
    """

    rs: RootSystem
    dominant: Weight
    pd_J: ParabolicData
    values: tuple[int, ...]

    @property
    def J(self) -> frozenset[int]:
        return self.pd_J.included

    @property
    def m_bar(self) -> int:
        return self.pd_J.m

    @property
    def sizes(self) -> tuple[int, ...]:
        return self.pd_J.sizes

    @cached_property
    def value_set(self) -> frozenset[int]:
        return frozenset(self.values)

    def describe(self) -> str:
        vals = ",".join(format_coordinate(v) for v in self.values)
        js = ",".join(str(k) for k in sorted(self.J)) or "-"
        return f"J={{{js}}} sizes={self.sizes} values=({vals})"


def is_degenerate(rs: RootSystem, dominant: Weight) -> bool:
    t = dominant.twice
    return rs.family == "D" and len(t) >= 2 and t[-1] == 0 and t[-2] != 0


def singular_set(rs: RootSystem, dominant: Weight) -> SingularData:
    check_integral(rs, dominant)
    if not is_dominant(rs, dominant):
        raise ValueError(f"{dominant} is not dominant for {rs}")
    if is_degenerate(rs, dominant):
        raise DegenerateSingularity(
            f"{dominant}: the last nonzero block of a D_n weight must not be followed by a "
            "single zero (the separable-pair calculus assumes a positive second-to-last "
            "block value); use the same J through its canonical dominant weight instead"
        )
    pd_J = make_parabolic(rs, singular_roots(rs, dominant))
    t = dominant.twice
    values = []
    for b, (lo, hi) in enumerate(pd_J.segments):
        if b == pd_J.m - 1 and rs.family != "A":
            values.append(0)
        else:
            v = t[hi - 1] if hi > lo else 0
            values.append(v if rs.family == "A" else abs(v))
    return SingularData(rs, dominant, pd_J, tuple(values))


def canonical_dominant(rs: RootSystem, J: Iterable[int]) -> Weight:
    """A dominant integral weight whose singular simple roots are exactly J.

    Block t (1-based) of the standard form receives the value m_bar - t, so the
    last block is 0; nonstandard D sets are handled through phi.
    """
    pd_J = make_parabolic(rs, J)
    std = pd_J.standard
    out = [0] * rs.rank
    for b, (lo, hi) in enumerate(std.segments):
        for i in range(lo, hi):
            out[i] = 2 * (std.m - 1 - b)
    w = Weight(tuple(out))
    return phi(w) if pd_J.nonstandard else w


# ---------------------------------------------------------------------------
# Coset enumeration


def _signed_choices(pool: Counter, k: int, keys: list[int], start: int) -> Iterator[list[int]]:
    """Choose ``k`` distinct signed values from an absolute-value multiset."""
    if k == 0:
        yield []
        return
    if start >= len(keys):
        return
    v = keys[start]
    c = pool[v]
    options: list[list[int]] = [[]]
    if c >= 1:
        options += [[0]] if v == 0 else [[v], [-v]]
    if v != 0 and c >= 2:
        options.append([v, -v])
    for opt in options:
        if len(opt) > k:
            continue
        pool[v] -= len(opt)
        for rest in _signed_choices(pool, k - len(opt), keys, start + 1):
            yield opt + rest
        pool[v] += len(opt)


def _plain_choices(pool: Counter, k: int, keys: list[int], start: int) -> Iterator[list[int]]:
    """Choose ``k`` distinct values from a multiset (type A)."""
    if k == 0:
        yield []
        return
    for idx in range(start, len(keys)):
        v = keys[idx]
        if pool[v] == 0:
            continue
        pool[v] -= 1
        for rest in _plain_choices(pool, k - 1, keys, idx + 1):
            yield [v] + rest
        pool[v] += 1


def _enumerate_standard(pd: ParabolicData, t: tuple[int, ...]) -> list[tuple[int, ...]]:
    family = pd.rs.family
    if family == "A":
        pool = Counter(t)
    else:
        pool = Counter(abs(x) for x in t)
    keys = sorted(pool, reverse=True)
    has_zero = 0 in t
    target_parity = sum(1 for x in t if x < 0) % 2
    results: list[tuple[int, ...]] = []

    def fill(s: int, acc: list[int]) -> None:
        if s == pd.m:
            if family == "D" and not has_zero and sum(1 for x in acc if x < 0) % 2 != target_parity:
                return
            results.append(tuple(acc))
            return
        size = pd.sizes[s]
        kind = pd.segment_kind(s)
        if kind == "A":
            chooser = _plain_choices if family == "A" else _signed_choices
            for pick in chooser(pool, size, keys, 0):
                fill(s + 1, acc + sorted(pick, reverse=True))
            return
        rest = sorted((v for v in keys for _ in range(pool[v])), reverse=True)
        if len(set(rest)) < len(rest) or (kind in "BC" and 0 in rest):
            return
        fill(s + 1, acc + rest)
        if kind == "D" and rest and rest[-1] != 0:
            fill(s + 1, acc + rest[:-1] + [-rest[-1]])

    fill(0, [])
    return results


@lru_cache(maxsize=4096)
def _enumerate_cached(pd: ParabolicData, t: tuple[int, ...]) -> tuple[Weight, ...]:
    if pd.nonstandard:
        raw = [_phi_twice(x) for x in _enumerate_standard(pd.standard, _phi_twice(t))]
    else:
        raw = _enumerate_standard(pd, t)
    return tuple(Weight(x) for x in sorted(set(raw), reverse=True))


def enumerate_coset(pd: ParabolicData, weight: Weight) -> list[Weight]:
    """All of W.weight intersected with Lambda_I^+, in decreasing lexicographic order.

    Only the orbit of ``weight`` matters, so any orbit member may be passed.
    Segments are filled directly from the multiset of absolute values rather
    than by running over the Weyl group.
    """
    check_integral(pd.rs, weight)
    return list(_enumerate_cached(pd, weight.twice))


# ---------------------------------------------------------------------------
# Count tables


@dataclass(frozen=True)
class CountTable:
    """``rows[s][t]`` is the number of entries of segment s with value +-a_t."""

    rows: tuple[tuple[int, ...], ...]

    def __getitem__(self, st: tuple[int, int]) -> int:
        s, t = st
        return self.rows[s][t]

    @property
    def row_sums(self) -> tuple[int, ...]:
        return tuple(sum(r) for r in self.rows)

    @property
    def column_sums(self) -> tuple[int, ...]:
        if not self.rows:
            return ()
        return tuple(sum(col) for col in zip(*self.rows))


def count_table(pd: ParabolicData, sd: SingularData, weight: Weight) -> CountTable:
    t = weight.twice
    exact = pd.rs.family == "A"
    rows = []
    for lo, hi in pd.segments:
        seg = t[lo:hi] if exact else [abs(x) for x in t[lo:hi]]
        rows.append(tuple(seg.count(a) for a in sd.values))
    return CountTable(tuple(rows))


def max_count(pd: ParabolicData, s: int, a_twice: int) -> int:
    """Structural cap on segment counts (``s`` is 0-based, ``a_twice`` doubled and >= 0)."""
    family = pd.rs.family
    if family == "A":
        return 1
    last = s == pd.m - 1
    if family in "BC":
        if last and a_twice == 0:
            return 0
        return 1 if (a_twice == 0 or last) else 2
    return 1 if (a_twice == 0 or last) else 2


def check_weight(rs: RootSystem, weight: Weight) -> None:
    """Validate length and integrality, raising :class:`InvalidSystem` style errors."""
    try:
        check_integral(rs, weight)
    except NotIntegral as exc:
        raise InvalidSystem(str(exc)) from exc

"""Classical root systems in the standard orthonormal coordinates.

Coordinates are 0-based internally and printed 1-based.  Simple roots
follow Bourbaki: alpha_i = e_i - e_{i+1}, and the last simple root is
e_n (B), 2e_n (C) or e_{n-1} + e_n (D).  Type A lives in gl_n
coordinates, so rank n means n coordinates and n - 1 simple roots.

Weights are handled as tuples of *doubled* integers (see
``parablocks.weights``), so every pairing below divides by two exactly.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Iterable, Sequence

FAMILIES = ("A", "B", "C", "D")

DIFF = "diff"  # e_i - e_j
SUM = "sum"  # e_i + e_j
SHORT = "short"  # e_i   (type B)
LONG = "long"  # 2 e_i (type C)


class InvalidSystem(ValueError):
    """Raised for malformed root-system or parabolic input."""


@dataclass(frozen=True, order=True)
class Root:
    """A root of a classical system.

    ``kind`` is one of ``diff``, ``sum``, ``short``, ``long``; ``i``/``j`` are
    0-based coordinates (``j == i`` for the one-coordinate kinds).  The
    positive roots are exactly those with ``i <= j`` and ``sign == 1``.
    """

    kind: str
    i: int
    j: int
    sign: int = 1

    def __str__(self) -> str:
        a, b = self.i + 1, self.j + 1
        body = {
            DIFF: f"e{a}-e{b}",
            SUM: f"e{a}+e{b}",
            SHORT: f"e{a}",
            LONG: f"2e{a}",
        }[self.kind]
        return body if self.sign > 0 else f"-({body})"

    @property
    def coords(self) -> dict[int, int]:
        """Coefficient vector as a sparse ``{coordinate: coefficient}``."""
        if self.kind == DIFF:
            vec = {self.i: 1, self.j: -1}
        elif self.kind == SUM:
            vec = {self.i: 1, self.j: 1}
        elif self.kind == SHORT:
            vec = {self.i: 1}
        else:
            vec = {self.i: 2}
        return {k: self.sign * v for k, v in vec.items()}

    @property
    def is_positive(self) -> bool:
        return self.sign > 0

    def negated(self) -> "Root":
        return Root(self.kind, self.i, self.j, -self.sign)

    def shifted(self, coords: Sequence[int]) -> "Root":
        """Relabel coordinates through ``coords`` (child index -> parent index)."""
        return Root(self.kind, coords[self.i], coords[self.j], self.sign)


def root_from_coords(vec: dict[int, int]) -> Root:
    """Inverse of :attr:`Root.coords` for vectors that are roots."""
    items = sorted((k, v) for k, v in vec.items() if v != 0)
    if len(items) == 1:
        (k, v), = items
        kind = SHORT if abs(v) == 1 else LONG
        return Root(kind, k, k, 1 if v > 0 else -1)
    (i, vi), (j, vj) = items
    sign = 1 if vi > 0 else -1
    kind = DIFF if vi * vj < 0 else SUM
    return Root(kind, i, j, sign)


@dataclass(frozen=True)
class RootSystem:
    """A classical root system ``X_n``.

    Ranks below the usual minimum (D_1, rank 0) are accepted because they
    appear as factors of product decompositions; user-facing entry points
    enforce the conventional bounds separately.
    """

    family: str
    rank: int

    def __post_init__(self) -> None:
        if self.family not in FAMILIES:
            raise InvalidSystem(f"unknown family {self.family!r}")
        if self.rank < 0:
            raise InvalidSystem("rank must be non-negative")

    def __str__(self) -> str:
        return f"{self.family}{self.rank}"

    @property
    def n(self) -> int:
        return self.rank

    @property
    def simple_count(self) -> int:
        if self.family == "A":
            return max(self.rank - 1, 0)
        if self.family == "D" and self.rank == 1:
            return 0
        return self.rank

    def simple_root(self, index: int) -> Root:
        """Simple root alpha_index (1-based)."""
        if not 1 <= index <= self.simple_count:
            raise InvalidSystem(f"{self} has no simple root alpha_{index}")
        n = self.rank
        if index < n or self.family == "A":
            return Root(DIFF, index - 1, index)
        if self.family == "B":
            return Root(SHORT, n - 1, n - 1)
        if self.family == "C":
            return Root(LONG, n - 1, n - 1)
        return Root(SUM, n - 2, n - 1)

    def simple_roots(self) -> tuple[Root, ...]:
        return tuple(self.simple_root(k) for k in range(1, self.simple_count + 1))

    @property
    def weyl_order(self) -> int:
        from math import factorial

        n = self.rank
        if self.family == "A":
            return factorial(n)
        if self.family == "D":
            return factorial(n) * 2 ** max(n - 1, 0)
        return factorial(n) * 2**n


@lru_cache(maxsize=None)
def positive_roots(rs: RootSystem) -> tuple[Root, ...]:
    """All positive roots in a fixed order: differences, sums, then e_i / 2e_i."""
    n = rs.rank
    roots = [Root(DIFF, i, j) for i in range(n) for j in range(i + 1, n)]
    if rs.family in "BCD":
        roots += [Root(SUM, i, j) for i in range(n) for j in range(i + 1, n)]
    if rs.family == "B":
        roots += [Root(SHORT, i, i) for i in range(n)]
    if rs.family == "C":
        roots += [Root(LONG, i, i) for i in range(n)]
    return tuple(roots)


def coroot_pairing(twice: Sequence[int], root: Root) -> int:
    """<lambda, root^vee> for a weight given by doubled coordinates.

    The result is exact for integral weights; a non-integer value means the
    weight was not integral for the system and raises ``ValueError``.
    """
    i, j = root.i, root.j
    if root.kind == DIFF:
        num = twice[i] - twice[j]
    elif root.kind == SUM:
        num = twice[i] + twice[j]
    elif root.kind == SHORT:
        num = 2 * twice[i]
    else:
        num = twice[i]
    if num % 2:
        raise ValueError("weight is not integral for this root")
    return root.sign * (num // 2)


def reflect_twice(twice: Sequence[int], root: Root) -> tuple[int, ...]:
    """s_root applied to doubled coordinates.  Sign of the root is irrelevant."""
    out = list(twice)
    i, j = root.i, root.j
    if root.kind == DIFF:
        out[i], out[j] = twice[j], twice[i]
    elif root.kind == SUM:
        out[i], out[j] = -twice[j], -twice[i]
    else:
        out[i] = -twice[i]
    return tuple(out)


def _check_same_length(twice: Sequence[int], rs: RootSystem) -> None:
    if len(twice) != rs.rank:
        raise ValueError(f"weight of length {len(twice)} does not fit {rs}")


@dataclass(frozen=True)
class SignedPermutation:
    """A Weyl group element of a classical system as a signed permutation.

    Convention: ``w e_j = signs[j] * e_{perm[j]}``, hence
    ``(w x)[perm[j]] = signs[j] * x[j]``.  Type A elements carry no signs;
    type D elements carry an even number of ``-1``.
    """

    perm: tuple[int, ...]
    signs: tuple[int, ...]
    family: str = "B"

    def __post_init__(self) -> None:
        n = len(self.perm)
        if sorted(self.perm) != list(range(n)) or len(self.signs) != n:
            raise InvalidSystem("not a signed permutation")
        if any(s not in (1, -1) for s in self.signs):
            raise InvalidSystem("signs must be +1 or -1")
        if self.family == "A" and -1 in self.signs:
            raise InvalidSystem("type A elements cannot change signs")
        if self.family == "D" and self.signs.count(-1) % 2:
            raise InvalidSystem("type D elements change an even number of signs")

    @classmethod
    def identity(cls, n: int, family: str = "B") -> "SignedPermutation":
        return cls(tuple(range(n)), (1,) * n, family)

    @classmethod
    def reflection(cls, rs: RootSystem, root: Root) -> "SignedPermutation":
        perm = list(range(rs.rank))
        signs = [1] * rs.rank
        i, j = root.i, root.j
        if root.kind in (DIFF, SUM):
            perm[i], perm[j] = j, i
            if root.kind == SUM:
                signs[i] = signs[j] = -1
        else:
            signs[i] = -1
        return cls(tuple(perm), tuple(signs), rs.family)

    def __len__(self) -> int:
        return len(self.perm)

    def apply(self, twice: Sequence[int]) -> tuple[int, ...]:
        out = [0] * len(self.perm)
        for j, (k, s) in enumerate(zip(self.perm, self.signs)):
            out[k] = s * twice[j]
        return tuple(out)

    def apply_inverse(self, twice: Sequence[int]) -> tuple[int, ...]:
        return tuple(s * twice[k] for k, s in zip(self.perm, self.signs))

    def compose(self, other: "SignedPermutation") -> "SignedPermutation":
        """``self * other``: apply ``other`` first."""
        if len(self) != len(other):
            raise ValueError("size mismatch")
        perm = tuple(self.perm[other.perm[j]] for j in range(len(self)))
        signs = tuple(other.signs[j] * self.signs[other.perm[j]] for j in range(len(self)))
        family = self.family if self.family == other.family else "B"
        return SignedPermutation(perm, signs, family)

    def inverse(self) -> "SignedPermutation":
        n = len(self)
        perm = [0] * n
        signs = [1] * n
        for j, (k, s) in enumerate(zip(self.perm, self.signs)):
            perm[k] = j
            signs[k] = s
        return SignedPermutation(tuple(perm), tuple(signs), self.family)

    def act_on_root(self, root: Root) -> Root:
        vec: dict[int, int] = {}
        for k, v in root.coords.items():
            target = self.perm[k]
            vec[target] = vec.get(target, 0) + self.signs[k] * v
        return root_from_coords(vec)


def length_parity(
    w: SignedPermutation,
    rs: RootSystem,
    restricted_to: "ParabolicData | None" = None,
) -> tuple[int, int]:
    """Length of ``w`` and its parity, counting positive roots sent negative.

    With ``restricted_to`` the count runs over the Levi positive roots only;
    for ``w`` in the Levi subgroup the two counts agree because such ``w``
    permutes the remaining positive roots.
    """
    roots = positive_roots(rs) if restricted_to is None else restricted_to.levi_roots
    length = sum(1 for r in roots if not w.act_on_root(r).is_positive)
    return length, length % 2


def phi_indices(rs: RootSystem, indices: Iterable[int]) -> frozenset[int]:
    """The diagram automorphism of D_n swapping alpha_{n-1} and alpha_n."""
    if rs.family != "D":
        raise InvalidSystem("the phi twist only exists for type D")
    n = rs.rank
    out = set(indices)
    if n >= 2:
        has_a, has_b = (n - 1) in out, n in out
        out.discard(n - 1)
        out.discard(n)
        if has_a:
            out.add(n)
        if has_b:
            out.add(n - 1)
    return frozenset(out)


def phi_root(rs: RootSystem, root: Root) -> Root:
    """Image of a root under negation of the last coordinate."""
    last = rs.rank - 1
    vec = dict(root.coords)
    if last in vec:
        vec[last] = -vec[last]
    return root_from_coords(vec)


@dataclass(frozen=True)
class ParabolicData:
    """A parabolic subsystem Phi_I given by its simple roots I.

    Segment ``s`` (0-based here) covers coordinates ``segments[s]`` as a
    half-open range.  The last segment carries the B/C/D-type Levi factor
    and may be empty; for type A it is an ordinary block.  A nonstandard D
    parabolic (alpha_{n-1} not in I, alpha_n in I) stores the segment data of
    its phi-image together with ``nonstandard = True``.
    """

    rs: RootSystem
    included: frozenset[int]
    nonstandard: bool = field(default=False)

    @cached_property
    def standard_included(self) -> frozenset[int]:
        return phi_indices(self.rs, self.included) if self.nonstandard else self.included

    @cached_property
    def excluded(self) -> tuple[int, ...]:
        return tuple(k for k in range(1, self.rs.simple_count + 1) if k not in self.standard_included)

    @cached_property
    def segments(self) -> tuple[tuple[int, int], ...]:
        n = self.rs.rank
        # an excluded alpha_n leaves the last (B/C/D) segment empty
        bounds = [0, *self.excluded, n]
        return tuple((bounds[k], bounds[k + 1]) for k in range(len(bounds) - 1))

    @property
    def m(self) -> int:
        return len(self.segments)

    @cached_property
    def sizes(self) -> tuple[int, ...]:
        return tuple(b - a for a, b in self.segments)

    def segment_kind(self, s: int) -> str:
        """``A`` for ordinary blocks, the family letter for the last segment."""
        if self.rs.family == "A" or s < self.m - 1:
            return "A"
        return self.rs.family

    def segment_of(self, coord: int) -> int:
        for s, (a, b) in enumerate(self.segments):
            if a <= coord < b:
                return s
        raise IndexError(coord)

    @cached_property
    def standard(self) -> "ParabolicData":
        """The standard form (itself unless nonstandard)."""
        if not self.nonstandard:
            return self
        return make_parabolic(self.rs, self.standard_included)

    @cached_property
    def levi_roots(self) -> tuple[Root, ...]:
        """Positive roots of Phi_I in the order of :func:`positive_roots`."""
        roots = _standard_levi_roots(self.standard)
        if self.nonstandard:
            images = {phi_root(self.rs, r) for r in roots}
            return tuple(r for r in positive_roots(self.rs) if r in images)
        return roots

    @cached_property
    def levi_set(self) -> frozenset[Root]:
        return frozenset(self.levi_roots)

    @cached_property
    def nonlevi_roots(self) -> tuple[Root, ...]:
        return tuple(r for r in positive_roots(self.rs) if r not in self.levi_set)

    def contains_root(self, root: Root) -> bool:
        r = root if root.is_positive else root.negated()
        return r in self.levi_set

    def describe(self) -> str:
        inc = ",".join(str(k) for k in sorted(self.included)) or "-"
        tag = " (nonstandard)" if self.nonstandard else ""
        return f"{self.rs} I={{{inc}}}{tag} sizes={self.sizes}"


def _standard_levi_roots(pd: ParabolicData) -> tuple[Root, ...]:
    wanted = set()
    for s, (a, b) in enumerate(pd.segments):
        for i in range(a, b):
            for j in range(i + 1, b):
                wanted.add(Root(DIFF, i, j))
        kind = pd.segment_kind(s)
        if kind in "BCD":
            for i in range(a, b):
                for j in range(i + 1, b):
                    wanted.add(Root(SUM, i, j))
        if kind == "B":
            wanted.update(Root(SHORT, i, i) for i in range(a, b))
        if kind == "C":
            wanted.update(Root(LONG, i, i) for i in range(a, b))
    return tuple(r for r in positive_roots(pd.rs) if r in wanted)


@lru_cache(maxsize=None)
def _make_parabolic(rs: RootSystem, included: frozenset[int]) -> ParabolicData:
    bad = [k for k in included if not 1 <= k <= rs.simple_count]
    if bad:
        raise InvalidSystem(f"{rs} has no simple roots {sorted(bad)}")
    n = rs.rank
    nonstandard = rs.family == "D" and n >= 2 and (n - 1) not in included and n in included
    return ParabolicData(rs, included, nonstandard)


def make_parabolic(rs: RootSystem, included: Iterable[int]) -> ParabolicData:
    """Parabolic data for the simple roots ``included`` (1-based indices)."""
    return _make_parabolic(rs, frozenset(included))


def parabolic_from_excluded(rs: RootSystem, excluded: Iterable[int]) -> ParabolicData:
    drop = set(excluded)
    bad = [k for k in drop if not 1 <= k <= rs.simple_count]
    if bad:
        raise InvalidSystem(f"{rs} has no simple roots {sorted(bad)}")
    return make_parabolic(rs, [k for k in range(1, rs.simple_count + 1) if k not in drop])


def all_subsets(rs: RootSystem) -> list[frozenset[int]]:
    """Every subset of the simple roots, in a fixed order."""
    k = rs.simple_count
    return [frozenset(i + 1 for i in range(k) if mask >> i & 1) for mask in range(1 << k)]

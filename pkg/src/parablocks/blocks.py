"""Ground-truth blocks: connected components of the Jantzen linkage graph."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from functools import cached_property, lru_cache

from networkx.utils import UnionFind

from .jantzen import JantzenEntry, _row
from .rootsys import ParabolicData
from .weights import Weight, WeightNotInCoset, check_integral, enumerate_coset

log = logging.getLogger(__name__)


class EmptyCoset(ValueError):
    """The system has no simple modules for this central character."""


@dataclass(frozen=True)
class LinkageGraph:
    """Vertices are the coset weights; an edge joins i < j when c != 0 either way."""

    vertices: tuple[Weight, ...]
    edges: tuple[tuple[int, int], ...]
    entries: tuple[JantzenEntry, ...] = field(repr=False)

    @property
    def empty(self) -> bool:
        return not self.vertices

    def to_json(self) -> dict:
        return {
            "vertices": [v.to_json() for v in self.vertices],
            "edges": [
                {
                    "source": self.vertices.index(e.source),
                    "target": self.vertices.index(e.target),
                    "c": e.c,
                    "witnesses": e.to_json()["witnesses"],
                }
                for e in self.entries
            ],
        }


@dataclass(frozen=True)
class BlockDecomposition:
    """Blocks as sorted tuples of vertex indices, ordered by least member."""

    vertices: tuple[Weight, ...]
    blocks: tuple[tuple[int, ...], ...]
    predicted_count: int | None = None

    @property
    def oracle_count(self) -> int:
        return len(self.blocks)

    @property
    def agreement(self) -> bool | None:
        if self.predicted_count is None:
            return None
        return self.predicted_count == self.oracle_count

    @cached_property
    def _positions(self) -> dict[Weight, tuple[int, int]]:
        return {self.vertices[i]: (i, b) for b, members in enumerate(self.blocks) for i in members}

    def block_of(self, weight: Weight) -> int:
        return self._lookup(weight)[1]

    def index(self, weight: Weight) -> int:
        return self._lookup(weight)[0]

    def _lookup(self, weight: Weight) -> tuple[int, int]:
        try:
            return self._positions[weight]
        except KeyError:
            raise WeightNotInCoset(f"{weight} is not a vertex of this system") from None

    def labels(self) -> dict[Weight, int]:
        return {self.vertices[i]: b for b, members in enumerate(self.blocks) for i in members}


@lru_cache(maxsize=8192)
def _graph(pd: ParabolicData, dominant: tuple[int, ...]) -> LinkageGraph:
    vertices = tuple(enumerate_coset(pd, Weight(dominant)))
    index = {v: k for k, v in enumerate(vertices)}
    entries: list[JantzenEntry] = []
    directed: set[tuple[int, int]] = set()
    for k, v in enumerate(vertices):
        for target, entry in _row(pd, v).items():
            if entry.c != 0:
                entries.append(entry)
                directed.add((k, index[target]))
    both = {(i, j) for i, j in directed if (j, i) in directed and i < j}
    for i, j in sorted(both):
        # the coefficients follow a strict order, so two-way nonzero entries
        # point at a bug in normalization rather than at the mathematics
        log.warning("nonzero Jantzen coefficients in both directions: %s <-> %s", vertices[i], vertices[j])
    edges = sorted({(min(i, j), max(i, j)) for i, j in directed})
    return LinkageGraph(vertices, tuple(edges), tuple(entries))


def linkage_graph(pd: ParabolicData, dominant: Weight) -> LinkageGraph:
    check_integral(pd.rs, dominant)
    return _graph(pd, dominant.twice)


def components(count: int, edges: list[tuple[int, int]] | tuple[tuple[int, int], ...]) -> tuple[tuple[int, ...], ...]:
    """Connected components of a graph on ``range(count)``, least member first."""
    uf = UnionFind(range(count))
    for i, j in edges:
        uf.union(i, j)
    return tuple(sorted(tuple(sorted(c)) for c in uf.to_sets()))


@lru_cache(maxsize=8192)
def _oracle(pd: ParabolicData, dominant: tuple[int, ...]) -> BlockDecomposition:
    graph = _graph(pd, dominant)
    return BlockDecomposition(graph.vertices, components(len(graph.vertices), graph.edges))


def block_decomposition_oracle(pd: ParabolicData, dominant: Weight) -> BlockDecomposition:
    check_integral(pd.rs, dominant)
    return _oracle(pd, dominant.twice)


def same_block(pd: ParabolicData, dominant: Weight, x: Weight, y: Weight) -> bool:
    dec = block_decomposition_oracle(pd, dominant)
    return dec.block_of(x) == dec.block_of(y)

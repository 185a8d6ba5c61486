"""Blocks of parabolic category O for the classical families A, B, C and D.

Three pipelines answer the same question and are meant to be run against
each other:

* :mod:`parablocks.blocks` builds the linkage graph from Jantzen
  coefficients and takes connected components (ground truth);
* :mod:`parablocks.separability` predicts the count from separable pairs of
  segment/value sets;
* :mod:`parablocks.partitions` predicts it from orbit partitions.

:mod:`parablocks.decomposition` splits a system into pseudo-indecomposable
factors and :mod:`parablocks.sweep` checks everything exhaustively.
"""

from .blocks import BlockDecomposition, EmptyCoset, block_decomposition_oracle, linkage_graph, same_block
from .decomposition import FactorNode, FactorSystem, System, factorize, render_T_table, split
from .partitions import Partition, collapse, count_from_partitions, dual, nonempty_criterion
from .rootsys import ParabolicData, Root, RootSystem, SignedPermutation, make_parabolic, parabolic_from_excluded
from .separability import SeparablePair, all_separable_pairs, predicted_block_count
from .weights import Weight, canonical_dominant, enumerate_coset, singular_set

__all__ = [
    "BlockDecomposition",
    "EmptyCoset",
    "FactorNode",
    "FactorSystem",
    "ParabolicData",
    "Partition",
    "Root",
    "RootSystem",
    "SeparablePair",
    "SignedPermutation",
    "System",
    "Weight",
    "all_separable_pairs",
    "block_decomposition_oracle",
    "canonical_dominant",
    "collapse",
    "count_from_partitions",
    "dual",
    "enumerate_coset",
    "factorize",
    "linkage_graph",
    "make_parabolic",
    "nonempty_criterion",
    "parabolic_from_excluded",
    "predicted_block_count",
    "render_T_table",
    "same_block",
    "singular_set",
    "split",
]

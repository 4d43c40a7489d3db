import numpy as np

from tensors.hypergraph import Hypergraph, degree_table
from tensors.indexing import compositions
from tensors.symmetric import SymmetricTensor
from utils.errors import ArgumentError


def adjacency_tensor(h, r=None):
    """0/1 tensor whose entry at ``(i_1, ..., i_r)`` is 1 iff the set ``{i_1, ..., i_r}`` is an edge.

    An edge of cardinality ``c < r`` fills every multi-index of length ``r`` whose
    distinct entries are exactly that edge.
    """
    if r is None:
        r = max(h.rank, 1)
    if r < h.rank:
        raise ArgumentError(f'order {r} is below the largest edge cardinality {h.rank}')
    
    blocks = []
    for card in h.cardinalities:
        rows = h.edges_of(card)
        for counts in compositions(r, card):
            pattern = np.repeat(np.arange(card), counts)
            blocks.append(rows[:, pattern])
    indices = np.concatenate(blocks) if blocks else np.zeros((0, r), dtype=np.int64)
    return SymmetricTensor(r, h.n, indices, np.ones(len(indices)))


def hypergraph_from_tensor(t):
    """Inverse of ``adjacency_tensor`` on 0/1 tensors."""
    if t.nnz and not np.all(t.values == 1):
        raise ArgumentError('tensor is not 0/1-valued')
    return Hypergraph(t.dimension, [set(row.tolist()) for row in t.indices])


def normalize(t, scheme, s_n=None):
    """Rescaled copy of ``t`` under ``uniform`` (1/n), ``sparse`` (1/s_n) or ``degree``."""
    if scheme == 'uniform':
        return t.scaled(1.0 / t.dimension)
    if scheme == 'sparse':
        if s_n is None or not s_n > 0:
            raise ArgumentError(f'sparse normalization needs s_n > 0, got {s_n}')
        return t.scaled(1.0 / s_n)
    if scheme == 'degree':
        if t.order < 2:
            raise ArgumentError('degree normalization needs order >= 2')
        h = hypergraph_from_tensor(t)
        deg = degree_table(h, t.order - 1).astype(np.float64)
        scale = np.divide(1.0, deg, out=np.zeros_like(deg), where=deg > 0)
        return t.with_row_scale(scale)
    raise ArgumentError(f'unknown normalization scheme "{scheme}"')

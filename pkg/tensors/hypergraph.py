import itertools

import numpy as np
from pathlib2 import Path

from tensors.indexing import surjections
from utils.errors import ArgumentError


class Hypergraph:
    """Hypergraph on vertices ``0..n-1``; edges are kept per cardinality as sorted rows.

    Vertex ids are 0-based in memory and 1-based in files.
    """
    
    def __init__(self, n, edges=()):
        if n < 1:
            raise ArgumentError(f'vertex count must be positive, got {n}')
        
        if isinstance(edges, dict):
            edges = [row for rows in edges.values() for row in rows]
        by_card = {}
        for e in edges:
            row = sorted(set(int(v) for v in e))
            if not row:
                raise ArgumentError('edges must be nonempty')
            by_card.setdefault(len(row), []).append(row)
        
        self._n = int(n)
        self._edges = {}
        for card, rows in sorted(by_card.items()):
            if card > n:
                raise ArgumentError(f'edge of cardinality {card} on {n} vertices')
            arr = np.unique(np.array(rows, dtype=np.int64).reshape(-1, card), axis=0)
            if arr.min() < 0 or arr.max() >= n:
                raise ArgumentError(f'edge vertex out of range [0, {n})')
            self._edges[card] = arr
    
    @classmethod
    def from_arrays(cls, n, arrays):
        """Fast path for generators: ``arrays`` maps cardinality to sorted unique rows."""
        h = cls.__new__(cls)
        h._n = int(n)
        h._edges = {int(c): np.asarray(a, dtype=np.int64) for c, a in sorted(arrays.items()) if len(a)}
        return h
    
    def edges_of(self, card):
        return self._edges.get(card, np.zeros((0, card), dtype=np.int64))
    
    def edge_set(self, card=None):
        cards = self._edges if card is None else [card]
        return {tuple(int(v) for v in row) for c in cards for row in self.edges_of(c)}
    
    def relabel(self, psi):
        """Hypergraph whose edge ``{psi[v] : v in e}`` stands for every edge ``e``."""
        psi = np.asarray(psi, dtype=np.int64)
        assert sorted(psi.tolist()) == list(range(self._n)), f'{psi} is not a permutation of range({self._n})'
        arrays = {c: np.unique(np.sort(psi[e], axis=1), axis=0) for c, e in self._edges.items()}
        return Hypergraph.from_arrays(self._n, arrays)
    
    def is_uniform(self, card):
        return all(c == card for c in self._edges)
    
    def __contains__(self, edge):
        edge = np.array(sorted(set(edge)), dtype=np.int64)
        rows = self.edges_of(len(edge))
        return bool(len(rows)) and bool(np.any(np.all(rows == edge, axis=1)))
    
    def __eq__(self, other):
        if not isinstance(other, Hypergraph):
            return NotImplemented
        return self._n == other._n and self.edge_set() == other.edge_set()
    
    def __repr__(self):
        counts = ', '.join(f'{c}: {len(e)}' for c, e in self._edges.items())
        return f'Hypergraph(n={self._n}, edges={{{counts}}})'
    
    @property
    def n(self):
        return self._n
    
    @property
    def rank(self):
        return max(self._edges, default=0)
    
    @property
    def cardinalities(self):
        return tuple(self._edges)
    
    @property
    def num_edges(self):
        return sum(len(e) for e in self._edges.values())


def read_hypergraph(file):
    file = Path(file)
    with open(str(file), 'r', encoding='utf-8') as f:
        lines = [line.split() for line in f if line.strip()]
    if not lines or lines[0][0] != 'n' or len(lines[0]) != 2:
        raise ArgumentError(f'{file}: first line must be "n <vertex_count>"')
    n = int(lines[0][1])
    return Hypergraph(n, [[int(v) - 1 for v in line] for line in lines[1:]])


def write_hypergraph(h, file):
    file = Path(file)
    if not file.parent.exists():
        file.parent.mkdir(parents=True)
    with open(str(file), 'w', encoding='utf-8') as f:
        f.write(f'n {h.n}\n')
        for card in h.cardinalities:
            for row in h.edges_of(card):
                f.write(' '.join(str(int(v) + 1) for v in row) + '\n')


def degree_count(h, vertices):
    """Edges containing every listed vertex with exactly one vertex more than the tuple's distinct set."""
    support = sorted(set(int(v) for v in vertices))
    rows = h.edges_of(len(support) + 1)
    if not len(rows):
        return 0
    mask = np.ones(len(rows), dtype=bool)
    for v in support:
        mask &= np.any(rows == v, axis=1)
    return int(mask.sum())


def degree_table(h, length):
    """Dense array over ``[n]^length`` with ``degree_count`` at every tuple."""
    n = h.n
    table = np.zeros(n ** length, dtype=np.int64)
    shape = (n,) * length
    for size in range(1, length + 1):
        rows = h.edges_of(size + 1)
        if not len(rows):
            continue
        patterns = list(surjections(length, size))
        for cols in itertools.combinations(range(size + 1), size):
            sub = rows[:, cols]
            for pattern in patterns:
                flat = np.ravel_multi_index(tuple(sub[:, pattern].T), shape)
                table += np.bincount(flat, minlength=n ** length)
    return table.reshape(shape)

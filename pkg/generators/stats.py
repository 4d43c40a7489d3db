import itertools
import math
from collections import namedtuple

import numpy as np

from tensors.indexing import encode

EdgeStats = namedtuple('EdgeStats', ['edges', 'candidates', 'density'])


def edge_density_stats(h, r):
    edges = len(h.edges_of(r))
    candidates = math.comb(h.n, r)
    density = edges / candidates if candidates else 0.0
    return EdgeStats(edges, candidates, density)


def induced_edge_counts(h, size=4, card=3):
    """Histogram over all ``size``-subsets of vertices of the number of ``card``-edges inside them."""
    n = h.n
    hist = np.zeros(math.comb(size, card) + 1, dtype=np.int64)
    if n < size:
        return hist
    member = np.zeros(n ** card, dtype=bool)
    rows = h.edges_of(card)
    if len(rows):
        member[encode(rows, n)] = True
    
    subsets = np.array(list(itertools.combinations(range(n), size)), dtype=np.int64)
    inside = np.zeros(len(subsets), dtype=np.int64)
    for cols in itertools.combinations(range(size), card):
        inside += member[encode(subsets[:, cols], n)]
    return hist + np.bincount(inside, minlength=len(hist))

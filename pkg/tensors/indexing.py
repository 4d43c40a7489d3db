import itertools
import math

import numpy as np

from utils.errors import ArgumentError


def canonical_indices(n, r):
    """All sorted multi-indices of length ``r`` over ``range(n)`` in lexicographic order."""
    if r == 0:
        return np.zeros((1, 0), dtype=np.int64)
    rows = list(itertools.combinations_with_replacement(range(n), r))
    return np.array(rows, dtype=np.int64).reshape(len(rows), r)


def encode(indices, n):
    """Integer key of each sorted row, most significant position first."""
    indices = np.asarray(indices, dtype=np.int64)
    r = indices.shape[1]
    if n ** r >= 2 ** 62:
        raise ArgumentError(f'index space n^r = {n}^{r} is too large')
    weights = n ** np.arange(r - 1, -1, -1, dtype=np.int64)
    return indices @ weights


def stabilizer_size(indices):
    """Number of permutations fixing each sorted row (product of multiplicity factorials)."""
    indices = np.asarray(indices)
    size = np.ones(len(indices), dtype=np.int64)
    run = np.ones(len(indices), dtype=np.int64)
    for pos in range(1, indices.shape[1]):
        same = indices[:, pos] == indices[:, pos - 1]
        run = np.where(same, run + 1, 1)
        size *= run
    return size


def compositions(total, parts):
    """Positive integer vectors of length ``parts`` summing to ``total``."""
    for cuts in itertools.combinations(range(1, total), parts - 1):
        bounds = (0,) + cuts + (total,)
        yield tuple(bounds[i + 1] - bounds[i] for i in range(parts))


def surjections(length, size):
    """Maps ``range(length) -> range(size)`` hitting every target, as index patterns."""
    for pattern in itertools.product(range(size), repeat=length):
        if len(set(pattern)) == size:
            yield pattern


def num_permutations(r):
    return math.factorial(r)

from collections import namedtuple

import numpy as np
from tqdm import tqdm

from utils.errors import ArgumentError
from utils.seeding import make_rng

HomDensity = namedtuple('HomDensity', ['value', 'stderr', 'samples'])

DEFAULT_SAMPLES = 10 ** 6
DEFAULT_BATCHES = 20


def _pattern(f, ws, alpha):
    """For every edge of ``f``: its step function and the global coordinate of each of its axes."""
    ws = list(ws) if isinstance(ws, (list, tuple)) else [ws]
    if not ws:
        raise ArgumentError('at least one step function is needed')
    k = ws[0].k
    if any(w.k != k for w in ws):
        raise ArgumentError('all step functions must have the same order')
    if not f.is_uniform(k):
        raise ArgumentError(f'pattern hypergraph is not {k}-uniform')
    
    edges = [tuple(int(v) for v in e) for e in f.edges_of(k)]
    if alpha is None:
        alpha = [0] * len(edges)
    elif isinstance(alpha, dict):
        lookup = {tuple(sorted(int(v) for v in key)): idx for key, idx in alpha.items()}
        missing = [e for e in edges if e not in lookup]
        if missing:
            raise ArgumentError(f'alpha does not map edges {missing}')
        alpha = [lookup[e] for e in edges]
    alpha = [int(a) for a in alpha]
    if len(alpha) != len(edges) or any(not 0 <= a < len(ws) for a in alpha):
        raise ArgumentError(f'alpha must send each of {len(edges)} edges into range({len(ws)})')
    
    coordinates = {}
    factors = []
    for e, a in zip(edges, alpha):
        w = ws[a]
        axes = []
        for subset in w.coords.subsets:
            key = tuple(e[j] for j in subset)
            axes.append(coordinates.setdefault(key, len(coordinates)))
        factors.append((w, axes))
    return factors, coordinates


def hom_density(f, ws, alpha=None, samples=DEFAULT_SAMPLES, seed=0, batches=DEFAULT_BATCHES, progress=False):
    """Monte-Carlo estimate of ``t_alpha(F, W)`` with a batch-means standard error."""
    factors, coordinates = _pattern(f, ws, alpha)
    if samples < batches or batches < 2:
        raise ArgumentError(f'need at least {batches} samples in at least 2 batches')
    size = samples // batches
    
    means = np.empty(batches)
    for b in tqdm(range(batches), ascii=True, dynamic_ncols=True, disable=not progress):
        x = make_rng(seed, b).random((size, len(coordinates)))
        prod = np.ones(size)
        for w, axes in factors:
            cells = tuple(np.minimum((x[:, c] * m).astype(np.int64), m - 1) for c, m in zip(axes, w.shape))
            prod *= w.values[cells]
        means[b] = prod.mean()
    return HomDensity(float(means.mean()), float(means.std(ddof=1) / np.sqrt(batches)), size * batches)


def hom_density_exact(f, ws, alpha=None):
    """Exact ``t_alpha(F, W)`` for step functions by summation over the common grid."""
    factors, coordinates = _pattern(f, ws, alpha)
    res = [1] * len(coordinates)
    for w, axes in factors:
        for c, m in zip(axes, w.shape):
            res[c] = int(np.lcm(res[c], m))
    
    operands = []
    for w, axes in factors:
        values = w.values
        for axis, (c, m) in enumerate(zip(axes, w.shape)):
            values = np.repeat(values, res[c] // m, axis=axis)
        operands += [values, list(axes)]
    total = np.einsum(*operands, [], optimize=True)
    return float(total / np.prod(np.array(res, dtype=np.float64)))

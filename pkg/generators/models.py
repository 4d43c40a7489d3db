import itertools
import math
from collections import namedtuple

import numpy as np

from tensors.hypergraph import Hypergraph
from tensors.indexing import encode
from utils.errors import ArgumentError
from utils.seeding import make_rng

ModelSpec = namedtuple('ModelSpec', ['model', 'params'])
GeneratedHypergraph = namedtuple('GeneratedHypergraph', ['hypergraph', 'aux'])

INT_PARAMS = ('n', 'r')
SBM_LABELS = ('p111', 'p112', 'p122', 'p222')


def parse_model_spec(text):
    """``"er_uniform:n=200,p=0.125,r=3"`` -> ``ModelSpec('er_uniform', {...})``."""
    model, _, body = text.strip().partition(':')
    if model not in MODELS:
        raise ArgumentError(f'unknown model "{model}", expected one of {sorted(MODELS)}')
    params = {}
    for item in filter(None, (x.strip() for x in body.split(','))):
        key, sep, value = item.partition('=')
        if not sep:
            raise ArgumentError(f'malformed parameter "{item}" in "{text}"')
        key = key.strip()
        params[key] = int(value) if key in INT_PARAMS else float(value)
    return ModelSpec(model, params)


def format_model_spec(spec):
    body = ','.join(f'{k}={v}' for k, v in spec.params.items())
    return f'{spec.model}:{body}' if body else spec.model


def _probability(params, key):
    if key not in params:
        raise ArgumentError(f'missing probability "{key}"')
    p = float(params[key])
    if not 0.0 <= p <= 1.0:
        raise ArgumentError(f'probability {key}={p} outside [0, 1]')
    return p


def _size(params, at_least=1):
    n = int(params.get('n', 0))
    if n < at_least:
        raise ArgumentError(f'n={n} must be at least {at_least}')
    return n


def _tail_combinations(start, n, size):
    """Sorted ``size``-subsets of ``range(start, n)`` in lexicographic order."""
    if size == 0:
        return np.zeros((1, 0), dtype=np.int64)
    if size == 1:
        return np.arange(start, n, dtype=np.int64).reshape(-1, 1)
    if size == 2:
        a, b = np.triu_indices(n - start, k=1)
        return np.column_stack([a, b]).astype(np.int64) + start
    rows = list(itertools.combinations(range(start, n), size))
    return np.array(rows, dtype=np.int64).reshape(len(rows), size)


def candidate_chunks(n, r):
    """All ``r``-subsets of ``range(n)`` in lexicographic order, one chunk per first vertex."""
    for first in range(n - r + 1):
        tail = _tail_combinations(first + 1, n, r - 1)
        yield first, np.column_stack([np.full(len(tail), first, dtype=np.int64), tail])


def _bernoulli(n, r, seed, prob_of):
    """Keep each candidate ``r``-set with probability ``prob_of(chunk)``.

    Every chunk draws from its own counter-based stream keyed by ``(seed, first vertex)``.
    """
    kept = []
    for first, chunk in candidate_chunks(n, r):
        probs = prob_of(chunk)
        if np.all(probs >= 1.0):
            kept.append(chunk)
            continue
        draws = make_rng(seed, first).random(len(chunk))
        kept.append(chunk[draws < probs])
    if not kept:
        return np.zeros((0, r), dtype=np.int64)
    return np.concatenate(kept)


def er_edges(n, p, r, seed):
    return _bernoulli(n, r, seed, lambda chunk: np.full(len(chunk), p))


def clique_extension(n, edges, k, chunk_size=4096):
    """All ``(k+1)``-sets whose every ``k``-subset is a row of ``edges``."""
    if not len(edges):
        return np.zeros((0, k + 1), dtype=np.int64)
    dense = n ** k <= 1 << 24
    if dense:
        member = np.zeros(n ** k, dtype=bool)
        member[encode(edges, n)] = True
    else:
        keys = np.sort(encode(edges, n))
    
    found = []
    vertices = np.arange(n, dtype=np.int64)
    for start in range(0, len(edges), chunk_size):
        block = edges[start:start + chunk_size]
        base = np.repeat(block, n, axis=0)
        extra = np.tile(vertices, len(block))
        keep = extra > base[:, -1]
        cand = np.column_stack([base[keep], extra[keep]])
        ok = np.ones(len(cand), dtype=bool)
        for drop in range(k):
            sub = np.delete(cand, drop, axis=1)
            code = encode(sub, n)
            ok &= member[code] if dense else np.isin(code, keys, assume_unique=False)
        found.append(cand[ok])
    return np.concatenate(found)


def orientation(n, seed):
    """Random tournament: ``out[i, j]`` iff the pair is oriented ``i -> j``."""
    rng = make_rng(seed, 0)
    i, j = np.triu_indices(n, k=1)
    forward = rng.random(len(i)) < 0.5
    out = np.zeros((n, n), dtype=bool)
    out[i[forward], j[forward]] = True
    out[j[~forward], i[~forward]] = True
    return out


def complete(params, seed):
    n = _size(params)
    if n > 20:
        raise ArgumentError(f'complete hypergraph on n={n} vertices has 2^n - 1 edges, keep n <= 20')
    arrays = {r: _tail_combinations(0, n, r) for r in range(1, n + 1)}
    return GeneratedHypergraph(Hypergraph.from_arrays(n, arrays), {})


def complete_uniform(params, seed):
    r = int(params.get('r', 3))
    n = _size(params, r)
    return GeneratedHypergraph(Hypergraph.from_arrays(n, {r: _tail_combinations(0, n, r)}), {})


def er_graph(params, seed):
    n, p = _size(params, 2), _probability(params, 'p')
    return GeneratedHypergraph(Hypergraph.from_arrays(n, {2: er_edges(n, p, 2, seed)}), {})


def er_uniform(params, seed):
    r = int(params.get('r', 3))
    n, p = _size(params, r), _probability(params, 'p')
    return GeneratedHypergraph(Hypergraph.from_arrays(n, {r: er_edges(n, p, r, seed)}), {})


def iterated(params, seed):
    """R(n, p_1, ..., p_{r-1}, r): level 2 is G(n, p_1); level k+1 keeps each
    (k+1)-clique of level k with probability p_k."""
    r = int(params.get('r', 3))
    n = _size(params, r)
    probs = [_probability(params, f'p{i}') for i in range(1, r)]
    
    edges = er_edges(n, probs[0], 2, seed)
    aux = {'graph': edges.tolist()}
    for k in range(2, r):
        cliques = clique_extension(n, edges, k)
        p = probs[k - 1]
        if p < 1.0:
            cliques = cliques[make_rng(seed, n + k).random(len(cliques)) < p]
        edges = cliques
    return GeneratedHypergraph(Hypergraph.from_arrays(n, {r: edges}), aux)


def triangles_of_er(params, seed):
    """Triangles of G(n, p); the graph is returned as ``aux['graph']``."""
    n, p = _size(params, 3), _probability(params, 'p')
    return iterated({'n': n, 'r': 3, 'p1': p, 'p2': 1.0}, seed)


def tournament(params, seed):
    n = _size(params, 2)
    out = orientation(n, seed)
    arcs = np.argwhere(out)
    return GeneratedHypergraph(Hypergraph.from_arrays(n, {2: _tail_combinations(0, n, 2)}),
                               {'orientation': arcs.tolist()})


def tournament_cycles(params, seed):
    """Triples spanning a directed 3-cycle of a random tournament."""
    n = _size(params, 3)
    out = orientation(n, seed)
    kept = []
    for _, chunk in candidate_chunks(n, 3):
        i, j, k = chunk.T
        cyc = (out[i, j] == out[j, k]) & (out[j, k] == out[k, i])
        kept.append(chunk[cyc])
    edges = np.concatenate(kept) if kept else np.zeros((0, 3), dtype=np.int64)
    return GeneratedHypergraph(Hypergraph.from_arrays(n, {3: edges}), {'orientation': np.argwhere(out).tolist()})


def sbm3(params, seed):
    """3-uniform block model; the first ceil(n/2) vertices form block 1 and
    ``p1xy`` names the edge probability by the sorted block labels."""
    n = _size(params, 3)
    probs = np.array([_probability(params, key) for key in SBM_LABELS])
    blocks = (np.arange(n) >= math.ceil(n / 2)).astype(np.int64)
    edges = _bernoulli(n, 3, seed, lambda chunk: probs[blocks[chunk].sum(axis=1)])
    return GeneratedHypergraph(Hypergraph.from_arrays(n, {3: edges}), {'blocks': (blocks + 1).tolist()})


def colored_pairs(params, seed):
    """Pairs get white, black or grey uniformly; a triple with three white pairs is
    an edge, three grey pairs an edge with probability p, anything else is not."""
    n, p = _size(params, 3), _probability(params, 'p')
    rng = make_rng(seed, n)
    i, j = np.triu_indices(n, k=1)
    colour = np.zeros((n, n), dtype=np.int64)
    drawn = rng.integers(0, 3, len(i))
    colour[i, j] = drawn
    colour[j, i] = drawn
    
    def prob_of(chunk):
        a, b, c = chunk.T
        ab, bc, ac = colour[a, b], colour[b, c], colour[a, c]
        same = (ab == bc) & (bc == ac)
        return np.where(same, np.array([1.0, 0.0, p])[ab], 0.0)
    
    edges = _bernoulli(n, 3, seed, prob_of)
    names = np.array(['white', 'black', 'grey'])
    return GeneratedHypergraph(Hypergraph.from_arrays(n, {3: edges}),
                               {'colours': [[int(a), int(b), str(names[c])] for a, b, c in zip(i, j, drawn)]})


def tight_path(params, seed):
    n = _size(params, 3)
    first = np.arange(n - 2, dtype=np.int64)
    return GeneratedHypergraph(Hypergraph.from_arrays(n, {3: np.column_stack([first, first + 1, first + 2])}), {})


MODELS = {
    'complete': complete,
    'complete_uniform': complete_uniform,
    'er_graph': er_graph,
    'er_uniform': er_uniform,
    'triangles_of_er': triangles_of_er,
    'iterated': iterated,
    'tournament': tournament,
    'tournament_cycles': tournament_cycles,
    'sbm3': sbm3,
    'colored_pairs': colored_pairs,
    'tight_path': tight_path,
}


def generate(spec, seed):
    if isinstance(spec, str):
        spec = parse_model_spec(spec)
    if spec.model not in MODELS:
        raise ArgumentError(f'unknown model "{spec.model}", expected one of {sorted(MODELS)}')
    return MODELS[spec.model](spec.params, seed)

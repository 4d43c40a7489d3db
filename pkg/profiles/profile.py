from collections import namedtuple

from measures import MeasureSet, exact_law, hausdorff
from measures.metric import DEFAULT_TOL
from spaces.functions import draw
from utils.errors import ArgumentError
from utils.parallel import pool_map

# 64 tuples per k, stratified over the catalog
DEFAULT_SAMPLER = (
    {'entry': 'ones', 'count': 1},
    {'entry': 'uniform', 'count': 15},
    {'entry': 'rademacher', 'count': 16},
    {'entry': 'random_subset', 'count': 16},
    {'entry': 'rank_one', 'count': 8},
    {'entry': 'coordinate', 'count': 8},
)

DMEstimate = namedtuple('DMEstimate', ['value', 'truncation', 'terms'])


class ProfileSample:
    """Finite sample of the k-profile of one operator.

    ``tuples[j]`` holds ``k`` groups of ``r-1`` functions and ``measures[j]`` is the
    law of ``(f_1^(1), ..., f_1^(r-1), A[f_1], ..., f_k^(1), ..., A[f_k])``.
    """
    
    def __init__(self, operator_id, k, tuples, laws, metadata=None):
        self._operator_id = operator_id
        self._k = int(k)
        self._tuples = tuple(tuples)
        self._laws = tuple(laws)
        self._metadata = tuple(metadata) if metadata is not None else tuple({} for _ in laws)
        self._measures = None
    
    def to_json(self):
        return [dict(meta, measure=law.to_json()) for meta, law in zip(self._metadata, self._laws)]
    
    @property
    def operator_id(self):
        return self._operator_id
    
    @property
    def k(self):
        return self._k
    
    @property
    def tuples(self):
        return self._tuples
    
    @property
    def laws(self):
        return self._laws
    
    @property
    def metadata(self):
        return self._metadata
    
    @property
    def measures(self):
        if self._measures is None:
            self._measures = MeasureSet(self._laws)
        return self._measures


def _group(fns, k, arity):
    fns = list(fns)
    if len(fns) == k and all(isinstance(g, (list, tuple)) for g in fns):
        groups = [list(g) for g in fns]
    else:
        groups = [fns[i * arity:(i + 1) * arity] for i in range(k)]
    if len(groups) != k or any(len(g) != arity for g in groups):
        raise ArgumentError(f'a {k}-profile tuple needs {k} groups of {arity} functions')
    return groups


def tuple_law(a, groups):
    fns = []
    for group in groups:
        for fn in group:
            if not fn.clamped:
                raise ArgumentError('profile functions must be clamped to [-1, 1]')
        fns += list(group) + [a.apply(group)]
    return exact_law(a.space, fns)


def _tuple_law(args):
    a, groups = args
    return tuple_law(a, groups)


def sampled_tuples(space, arity, k, sampler, seed):
    """Function tuples and their metadata for a sampler spec, in sampler order."""
    tuples, metadata = [], []
    width = k * arity
    counter = 0
    for item in sampler:
        entry, count, subset = item['entry'], int(item.get('count', 1)), item.get('subset')
        if count < 1:
            raise ArgumentError(f'sampler count must be positive, got {count} for "{entry}"')
        for _ in range(count):
            fns = [draw(space, entry, seed, counter * width + slot, subset) for slot in range(width)]
            tuples.append([fns[i * arity:(i + 1) * arity] for i in range(k)])
            metadata.append({'entry': entry, 'index': counter, 'seed': seed})
            counter += 1
    return tuples, metadata


def k_profile(a, k, tuples=None, sampler=DEFAULT_SAMPLER, seed=0):
    """Exact laws of explicit function tuples, or of tuples drawn from ``sampler`` with ``seed``."""
    if k < 1:
        raise ArgumentError(f'k must be positive, got {k}')
    if tuples is not None:
        groups = [_group(t, k, a.arity) for t in tuples]
        metadata = [{'entry': 'explicit', 'index': j} for j in range(len(groups))]
    else:
        groups, metadata = sampled_tuples(a.space, a.arity, k, sampler, seed)
    if not groups:
        raise ArgumentError('a profile needs at least one function tuple')
    
    laws = pool_map(_tuple_law, [(a, g) for g in groups])
    return ProfileSample(a.name, k, groups, laws, metadata)


def profile_from_pair(a, b, k, sampler=DEFAULT_SAMPLER, seed=0):
    """Profiles of two operators with the same sampler and seed, each drawn on its own space."""
    if a.order != b.order:
        raise ArgumentError(f'operators of different order: {a.order} and {b.order}')
    return k_profile(a, k, sampler=sampler, seed=seed), k_profile(b, k, sampler=sampler, seed=seed)


def relabel_functions(tuples, space, psi):
    """Transport every function of every tuple through the vertex permutation ``psi``."""
    return [[[fn.relabel(space, psi) for fn in group] for group in t] for t in tuples]


def profile_hausdorff(a, b, k, sampler=DEFAULT_SAMPLER, seed=0, tol=DEFAULT_TOL):
    pa, pb = profile_from_pair(a, b, k, sampler, seed)
    return hausdorff(pa.measures, pb.measures, tol)


def dM_from_profiles(profiles_a, profiles_b, tol=DEFAULT_TOL):
    """``sum_k 2^-k d_H`` over paired profiles for ``k = 1, 2, ...``; the omitted tail is at most ``2^-k_max``."""
    if not profiles_a or len(profiles_a) != len(profiles_b):
        raise ArgumentError(f'need matching nonempty profile lists, got {len(profiles_a)} and {len(profiles_b)}')
    terms = []
    for k, (pa, pb) in enumerate(zip(profiles_a, profiles_b), start=1):
        if pa.k != k or pb.k != k:
            raise ArgumentError(f'profile {k} of the list has k={pa.k} and k={pb.k}')
        terms.append(hausdorff(pa.measures, pb.measures, tol))
    value = sum(2.0 ** -k * d for k, d in enumerate(terms, start=1))
    return DMEstimate(float(value), 2.0 ** -len(terms), tuple(terms))


def dM_estimate(a, b, k_max, sampler=DEFAULT_SAMPLER, seed=0, tol=DEFAULT_TOL):
    if k_max < 1:
        raise ArgumentError(f'k_max must be positive, got {k_max}')
    pairs = [profile_from_pair(a, b, k, sampler, seed) for k in range(1, k_max + 1)]
    return dM_from_profiles([pa for pa, _ in pairs], [pb for _, pb in pairs], tol)

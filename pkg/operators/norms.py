import numpy as np

from spaces.functions import draw, lp_norm
from utils.errors import ArgumentError
from utils.parallel import pool_map

NORM_SAMPLER = ('uniform', 'rademacher', 'rank_one', 'coordinate')


def trial_functions(space, arity, seed, trial, sampler=NORM_SAMPLER):
    entry = sampler[trial % len(sampler)]
    return [draw(space, entry, seed, trial * arity + slot) for slot in range(arity)]


def _trial_ratio(args):
    a, p, q, seed, trial = args
    fns = trial_functions(a.space, a.arity, seed, trial)
    denom = np.prod([lp_norm(fn, pi) for fn, pi in zip(fns, p)])
    if denom == 0:
        return 0.0
    return lp_norm(a.apply(fns), q) / denom


def norm_estimate(a, p, q, trials=64, seed=0):
    """Lower bound on the ``(p_1, ..., p_{r-1}, q)`` operator norm of ``a``.

    Trial ``t`` draws its functions from a fixed per-(seed, t) stream, so the
    estimate is nondecreasing in ``trials``.
    """
    p = [float(x) for x in p]
    if len(p) != a.arity:
        raise ArgumentError(f'{a.arity} input exponents expected, got {len(p)}')
    if any(x < 1 for x in p + [float(q)]):
        raise ArgumentError('norm exponents must lie in [1, inf]')
    if trials < 1:
        raise ArgumentError(f'trials must be positive, got {trials}')
    
    ratios = pool_map(_trial_ratio, [(a, p, float(q), seed, t) for t in range(trials)])
    return float(max(ratios))

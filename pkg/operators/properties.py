import itertools
from collections import namedtuple

import numpy as np

from spaces.functions import TestFunction, draw
from operators.norms import trial_functions
from utils.errors import ArgumentError

PROPERTIES = ('symmetric', 'positive', 'positivity_preserving', 'c_regular')


class PropertyCheck(namedtuple('PropertyCheck', ['holds', 'violation', 'witness'])):
    __slots__ = ()
    
    def __bool__(self):
        return bool(self.holds)


def _pairing(a, fns, other):
    return a.space.expectation(a.apply(fns).values * other.values)


def _check_symmetric(a, trials, seed, tol):
    worst = 0.0
    for trial in range(trials):
        fns = trial_functions(a.space, a.arity + 1, seed, trial, sampler=('uniform', 'rademacher', 'rank_one'))
        base = _pairing(a, fns[:-1], fns[-1])
        for perm in itertools.permutations(range(a.arity + 1)):
            moved = [fns[i] for i in perm]
            gap = abs(_pairing(a, moved[:-1], moved[-1]) - base)
            worst = max(worst, gap)
            if gap > tol:
                return PropertyCheck(False, worst, {'trial': trial, 'permutation': perm})
    return PropertyCheck(True, worst, None)


def _check_positive(a, trials, seed, tol):
    worst = 0.0
    for trial in range(trials):
        v = trial_functions(a.space, 1, seed, trial, sampler=('uniform', 'rademacher', 'rank_one'))[0]
        value = _pairing(a, [v] * a.arity, v)
        worst = max(worst, -value)
        if value < -tol:
            return PropertyCheck(False, worst, {'trial': trial, 'value': value})
    return PropertyCheck(True, worst, None)


def _check_positivity_preserving(a, trials, seed, tol):
    worst = 0.0
    sampler = ('ones', 'random_subset', 'uniform', 'coordinate')
    for trial in range(trials):
        fns = [TestFunction(a.space, np.abs(fn.values), clamped=True)
               for fn in trial_functions(a.space, a.arity, seed, trial, sampler=sampler)]
        low = float(a.apply(fns).values.min())
        worst = max(worst, -low)
        if low < -tol:
            return PropertyCheck(False, worst, {'trial': trial, 'min': low})
    return PropertyCheck(True, worst, None)


def _check_c_regular(a, c, tol):
    ones = draw(a.space, 'ones', 0, 0)
    out = a.apply([ones] * a.arity).values[a.space.masses > 0]
    if c is None:
        c = 0.5 * (out.max() + out.min())
    worst = float(np.abs(out - c).max())
    return PropertyCheck(worst <= tol, worst, {'c': float(c)})


def check_property(a, prop, trials=16, seed=0, tol=1e-10, c=None):
    """Randomized certificate for one operator property; returns ``(holds, violation, witness)``.

    ``symmetric`` compares ``E[A[v_1, ..., v_{r-1}] v_r]`` across all permutations of
    the ``v``; for ``r = 2`` this is self-adjointness. ``c_regular`` fits ``c``
    when it is not given and reports it in the witness.
    """
    if trials < 1:
        raise ArgumentError(f'trials must be positive, got {trials}')
    if prop == 'symmetric':
        return _check_symmetric(a, trials, seed, tol)
    if prop == 'positive':
        return _check_positive(a, trials, seed, tol)
    if prop == 'positivity_preserving':
        return _check_positivity_preserving(a, trials, seed, tol)
    if prop == 'c_regular':
        return _check_c_regular(a, c, tol)
    raise ArgumentError(f'unknown property "{prop}", expected one of {PROPERTIES}')

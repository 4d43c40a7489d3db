import itertools
from collections import namedtuple

import numpy as np

from hypergraphon.quotient import face_labels, stepping
from spaces.grid import GridSpace
from utils.seeding import make_rng

CutNormEstimate = namedtuple('CutNormEstimate', ['value', 'witness', 'exhaustive'])
RegularityCheck = namedtuple('RegularityCheck', ['holds', 'estimate', 'witness'])

EXHAUSTIVE_BUDGET = 1 << 12


class _CutObjective:
    """``|int W prod_i u_i(face_i)|`` for 0/1 class labelings ``u_i`` of the ``[k-1]`` grid."""
    
    def __init__(self, w):
        self._space = GridSpace(w.k, w.resolutions)
        faces = [w.coords.face(i) for i in range(w.k)]
        classes = face_labels(w.shape, faces, self._space.orbit_index, [1] * len(w.shape))
        self._classes = [np.broadcast_to(c, w.shape).reshape(-1) for c in classes]
        self._values = w.values.reshape(-1)
        self._cells = float(self._values.size)
        self._k = w.k
    
    def best_response(self, us):
        """Value and last labeling maximizing ``|I|`` given the first ``k-1`` labelings."""
        weight = self._values.copy()
        for u, cls in zip(us, self._classes):
            weight *= u[cls]
        gain = np.bincount(self._classes[-1], weights=weight, minlength=self.num_classes) / self._cells
        up, down = gain[gain > 0].sum(), -gain[gain < 0].sum()
        if up >= down:
            return up, (gain > 0).astype(np.float64)
        return down, (gain < 0).astype(np.float64)
    
    @property
    def num_classes(self):
        return len(self._space)
    
    @property
    def k(self):
        return self._k


def _greedy(objective, us):
    value, last = objective.best_response(us)
    improved = True
    while improved:
        improved = False
        for u in us:
            for c in range(len(u)):
                u[c] = 1.0 - u[c]
                trial, trial_last = objective.best_response(us)
                if trial > value + 1e-15:
                    value, last, improved = trial, trial_last, True
                else:
                    u[c] = 1.0 - u[c]
    return value, [u.copy() for u in us] + [last]


def cut_norm_estimate(w, trials=32, seed=0, budget=EXHAUSTIVE_BUDGET):
    """Lower bound on the cut norm of the step function ``w`` over symmetric 0/1 step labelings.

    Enumerates the first ``k-1`` labelings when at most ``budget`` combinations exist
    (then the value is exact for labelings at ``w``'s resolution, the last one being
    a best response). Otherwise random restarts each followed by single-flip ascent.
    """
    objective = _CutObjective(w)
    free = objective.num_classes * (objective.k - 1)
    
    if 2 ** free <= budget:
        best, witness = -1.0, None
        for bits in itertools.product((0.0, 1.0), repeat=free):
            us = list(np.array(bits).reshape(objective.k - 1, objective.num_classes))
            value, last = objective.best_response(us)
            if value > best:
                best, witness = value, us + [last]
        return CutNormEstimate(float(best), witness, True)
    
    best, witness = -1.0, None
    for trial in range(trials):
        rng = make_rng(seed, trial)
        if trial == 0:
            us = [np.ones(objective.num_classes) for _ in range(objective.k - 1)]
        else:
            us = [(rng.random(objective.num_classes) < 0.5).astype(np.float64) for _ in range(objective.k - 1)]
        value, labels = _greedy(objective, us)
        if value > best:
            best, witness = value, labels
    return CutNormEstimate(float(best), witness, False)


def weak_regular_check(w, partition, eps, trials=32, seed=0):
    """Is ``||w - w_Q||`` at most ``eps``? A rejection comes with the labelings exceeding ``eps``;
    an acceptance only says no sampled labeling did."""
    estimate = cut_norm_estimate(w - stepping(w, partition), trials, seed)
    holds = estimate.value <= eps + 1e-12
    return RegularityCheck(holds, estimate.value, None if holds else estimate.witness)

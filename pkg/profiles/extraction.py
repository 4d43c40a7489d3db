import itertools

import numpy as np

from hypergraphon.bridge import as_multi_op
from hypergraphon.quotient import Quotient
from hypergraphon.step import StepHypergraphon
from measures import exact_law
from spaces.functions import TestFunction
from utils.errors import ArgumentError


def _pairing_moment(a, fns, last):
    """``E[A[fns] * last]`` read off the exact law of ``(fns, A[fns], last)``."""
    law = exact_law(a.space, list(fns) + [a.apply(fns), last])
    return law.expectation(lambda x: x[:, -2] * x[:, -1])


def quotient_from_profile(w, partition):
    """Volumes and averages of ``w`` on ``partition`` read off laws of its operator.

    ``v_f w_f = E[W~[1_{Q_f1}, ..., 1_{Q_f(k-1)}] 1_{Q_fk}]`` and ``v_f`` is the same
    moment for the constant-one hypergraphon.
    """
    if (w.k, w.resolutions) != (partition.k, partition.resolutions):
        raise ArgumentError('partition must live on the hypergraphon grid')
    a = as_multi_op(w)
    ones = as_multi_op(StepHypergraphon.constant(w.k, 1.0).refine(w.resolutions))
    parts = [TestFunction(a.space, partition.indicator(p), clamped=True) for p in range(partition.q)]
    
    q, k = partition.q, w.k
    volumes, mass = np.zeros((q,) * k), np.zeros((q,) * k)
    for f in itertools.product(range(q), repeat=k):
        fns, last = [parts[i] for i in f[:-1]], parts[f[-1]]
        volumes[f] = _pairing_moment(ones, fns, last)
        mass[f] = _pairing_moment(a, fns, last)
    weights = np.divide(mass, volumes, out=np.zeros_like(mass), where=volumes > 1e-15)
    return Quotient(volumes, weights)

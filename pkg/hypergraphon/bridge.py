import functools
import itertools
import math

import numpy as np

from operators.multi_op import MultiPOperator
from spaces.grid import GridSpace
from utils.errors import ArgumentError


def _hypergraphon_action(values, faces, integrated, arrays):
    k = len(faces)
    out_face = faces[-1]
    total = 0.0
    perms = list(itertools.permutations(range(k - 1)))
    for sigma in perms:
        operands = [values, list(range(values.ndim))]
        for i in range(k - 1):
            operands += [arrays[sigma[i]], faces[i]]
        total = total + np.einsum(*operands, out_face, optimize=True)
    return total / (len(perms) * integrated)


def as_multi_op(w, n=None):
    """The operator ``W~``: integrate ``W * prod_i f_sigma(i)(face i)`` over the coordinates
    outside face ``k``, averaged over ``sigma`` in ``S_{k-1}``.

    Inputs and output live on the ``[0,1]^{r[k-1]}`` grid at ``w``'s resolution, or at
    vertex resolution ``n`` when given.
    """
    if n is not None:
        if n % w.resolutions[0]:
            raise ArgumentError(f'vertex resolution {n} is not a multiple of {w.resolutions[0]}')
        w = w.refine((n,) + w.resolutions[1:])
    faces = [w.coords.face(i) for i in range(w.k)]
    outside = [a for a in range(len(w.shape)) if a not in faces[-1]]
    integrated = math.prod(w.shape[a] for a in outside)
    space = GridSpace(w.k, w.resolutions)
    evaluator = functools.partial(_hypergraphon_action, w.values, faces, integrated)
    return MultiPOperator(space, w.k - 1, evaluator, name=f'hypergraphon-k{w.k}')

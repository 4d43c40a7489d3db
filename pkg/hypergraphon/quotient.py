from collections import namedtuple

import numpy as np

from hypergraphon.step import StepFunction, StepHypergraphon
from utils.errors import ArgumentError

Quotient = namedtuple('Quotient', ['volumes', 'weights'])


def face_labels(shape, faces, labels, ratios):
    """Per face, the part label of every cell of a grid of ``shape``, broadcastable to ``shape``."""
    mesh = np.ogrid[tuple(slice(0, s) for s in shape)]
    return [labels[tuple(mesh[a] // ratios[a] for a in face)] for face in faces]


def cell_codes(w, partition):
    """Index into ``[q]^k`` (C order) of the induced cell containing every grid cell of ``w``."""
    if w.k != partition.k:
        raise ArgumentError(f'hypergraphon of order {w.k} with a partition for order {partition.k}')
    ratios = []
    for subset in w.coords.subsets:
        size = len(subset) - 1
        mine, theirs = w.resolutions[size], partition.resolutions[size]
        if mine % theirs:
            raise ArgumentError(f'partition resolution {theirs} does not divide {mine}')
        ratios.append(mine // theirs)
    
    faces = [w.coords.face(i) for i in range(w.k)]
    code = np.zeros(w.shape, dtype=np.int64)
    for lab in face_labels(w.shape, faces, partition.labels, ratios):
        code = code * partition.q + lab
    return code


def quotient(w, partition):
    """Volume and average of ``w`` on each induced cell ``f`` in ``[q]^k``; averages on empty cells are 0."""
    q, k = partition.q, w.k
    code = cell_codes(w, partition).reshape(-1)
    cells = float(code.size)
    volumes = np.bincount(code, minlength=q ** k) / cells
    mass = np.bincount(code, weights=w.values.reshape(-1), minlength=q ** k) / cells
    weights = np.divide(mass, volumes, out=np.zeros_like(mass), where=volumes > 0)
    return Quotient(volumes.reshape((q,) * k), weights.reshape((q,) * k))


def d1_quotient(a, b):
    if a.volumes.shape != b.volumes.shape:
        raise ArgumentError(f'quotients over {a.volumes.shape} and {b.volumes.shape}')
    return float(np.abs(a.volumes - b.volumes).sum()
                 + np.abs(a.volumes * a.weights - b.volumes * b.weights).sum())


def stepping(w, partition):
    """Average of ``w`` over each induced cell; a list of hypergraphons is stepped elementwise."""
    if isinstance(w, (list, tuple)):
        return [stepping(x, partition) for x in w]
    code = cell_codes(w, partition)
    values = quotient(w, partition).weights.reshape(-1)[code]
    cls = StepHypergraphon if isinstance(w, StepHypergraphon) else StepFunction
    return cls(w.k, w.resolutions, values)

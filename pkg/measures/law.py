import numpy as np

from measures.discrete import DiscreteMeasure
from utils.errors import ArgumentError, DomainError


def exact_law(space, fns):
    """Law of ``(fns[0], ..., fns[d-1])`` under the class masses of ``space``."""
    fns = list(fns)
    if not fns:
        raise ArgumentError('exact_law needs at least one function')
    for fn in fns:
        if fn.space != space:
            raise DomainError(f'function on {fn.space!r} evaluated on {space!r}')
    
    points = np.column_stack([fn.values for fn in fns])
    return DiscreteMeasure(points, space.masses, dimension=len(fns))

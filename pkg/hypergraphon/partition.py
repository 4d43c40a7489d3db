import numpy as np

from spaces.grid import GridSpace
from utils.errors import ArgumentError


class SymmetricGridPartition:
    """Partition of the ``[0,1]^{r[k-1]}`` grid into ``q`` parts, constant on permutation orbits."""
    
    def __init__(self, k, resolution, labels, q=None):
        self._space = GridSpace(k, resolution)
        labels = np.asarray(labels, dtype=np.int64)
        if labels.shape != self._space.shape:
            raise ArgumentError(f'labels of shape {labels.shape}, expected {self._space.shape}')
        if labels.min() < 0:
            raise ArgumentError('part labels must be nonnegative')
        q = int(labels.max()) + 1 if q is None else int(q)
        if labels.max() >= q:
            raise ArgumentError(f'label {labels.max()} outside [0, {q})')
        if not np.array_equal(labels, labels.reshape(-1)[self._canonical_cells()]):
            raise ArgumentError('partition labels are not symmetric')
        self._labels = labels
        self._labels.flags.writeable = False
        self._q = q
    
    def _canonical_cells(self):
        reps = self._space.representatives
        flat = np.ravel_multi_index(tuple(reps.T), self._space.shape)
        return flat[self._space.orbit_index]
    
    @classmethod
    def trivial(cls, k):
        return cls(k, 1, np.zeros(GridSpace(k, 1).shape, dtype=np.int64), q=1)
    
    @classmethod
    def from_classes(cls, space, class_labels, q=None):
        class_labels = np.asarray(class_labels, dtype=np.int64)
        return cls(space.k, space.resolutions, class_labels[space.orbit_index], q)
    
    def indicator(self, part):
        """0/1 class values of part ``part`` on ``self.space``."""
        reps = self._space.representatives
        return (self._labels[tuple(reps.T)] == part).astype(np.float64)
    
    def __repr__(self):
        return f'SymmetricGridPartition(k={self.k}, resolutions={self.resolutions}, q={self._q})'
    
    @property
    def k(self):
        return self._space.k
    
    @property
    def resolutions(self):
        return self._space.resolutions
    
    @property
    def space(self):
        return self._space
    
    @property
    def labels(self):
        return self._labels
    
    @property
    def q(self):
        return self._q

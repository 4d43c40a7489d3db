import itertools
import math

import numpy as np

from tensors.hypergraph import degree_table
from utils.errors import ArgumentError, DegenerateMeasureError

FAMILIES = ('uniform', 'diagonal_weighted', 'degree_weighted')


class SymmetricSpace:
    """Finite grid modulo a group of axis permutations, with a probability on the orbits.

    Classes are numbered by their lexicographically least cell, which is also the
    class representative. ``orbit_index`` maps every grid cell to its class.
    """
    
    def __init__(self, shape, axis_perms):
        shape = tuple(int(x) for x in shape)
        flat = np.arange(math.prod(shape), dtype=np.int64).reshape(shape)
        low = flat.copy()
        for perm in axis_perms:
            np.minimum(low, np.transpose(flat, perm), out=low)
        uniq, inverse, counts = np.unique(low, return_inverse=True, return_counts=True)
        
        self._shape = shape
        self._orbit_index = inverse.reshape(shape)
        self._representatives = np.column_stack(np.unravel_index(uniq, shape)).astype(np.int64)
        self._class_sizes = counts
        self._masses = counts / float(flat.size)
        self._key = None
    
    def _set_masses(self, masses):
        masses = np.asarray(masses, dtype=np.float64)
        assert masses.shape == self._class_sizes.shape, f'{masses.shape} masses for {len(self)} classes'
        assert abs(math.fsum(masses) - 1.0) <= 1e-12, f'class masses sum to {math.fsum(masses)}'
        self._masses = masses
        self._masses.flags.writeable = False
        self._key = None
    
    def key(self):
        if self._key is None:
            self._key = (type(self).__name__, self._shape, self.family, self._masses.tobytes())
        return self._key
    
    def expectation(self, values):
        return float(np.dot(self._masses, values))
    
    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, SymmetricSpace):
            return NotImplemented
        return self.key() == other.key()
    
    def __hash__(self):
        return hash(self.key()[:3])
    
    def __len__(self):
        return len(self._masses)
    
    @property
    def family(self):
        return 'uniform'
    
    @property
    def shape(self):
        return self._shape
    
    @property
    def representatives(self):
        return self._representatives
    
    @property
    def class_sizes(self):
        return self._class_sizes
    
    @property
    def masses(self):
        return self._masses
    
    @property
    def orbit_index(self):
        return self._orbit_index


class FiniteSymmetricSpace(SymmetricSpace):
    """``([n]^s, Sym, P)`` with P one of the uniform, diagonal-weighted or degree-weighted families."""
    
    def __init__(self, n, s, family='uniform', h=None):
        if n < 1 or s < 1:
            raise ArgumentError(f'n and s must be positive, got n={n}, s={s}')
        if family not in FAMILIES:
            raise ArgumentError(f'unknown measure family "{family}", expected one of {FAMILIES}')
        if family != 'uniform' and s != 2:
            raise ArgumentError(f'{family} is defined for s=2 only, got s={s}')
        if family == 'degree_weighted':
            if h is None or h.n != n:
                raise ArgumentError('degree_weighted needs a hypergraph on the same vertex set')
        
        super().__init__((n,) * s, list(itertools.permutations(range(s))))
        self._n = int(n)
        self._s = int(s)
        self._family = family
        
        if family == 'diagonal_weighted':
            self._set_masses(self._weighted(np.ones(n), np.ones((n, n))))
        elif family == 'degree_weighted':
            deg = degree_table(h, 2).astype(np.float64)
            self._set_masses(self._weighted(np.diag(deg).copy(), deg))
    
    def _weighted(self, diag_weight, pair_weight):
        """Diagonal classes get ``diag_weight[i]``, off-diagonal ones ``pair_weight[i, j]``,
        each family normalized to total mass 1/2. An empty family passes its half on."""
        i, j = self._representatives[:, 0], self._representatives[:, 1]
        on_diag = i == j
        diag = np.where(on_diag, diag_weight[i], 0.0)
        off = np.where(on_diag, 0.0, pair_weight[i, j])
        diag_total, off_total = diag.sum(), off.sum()
        if diag_total <= 0 and off_total <= 0:
            raise DegenerateMeasureError('all degrees are zero, no probability to distribute')
        if diag_total <= 0:
            return off / off_total
        if off_total <= 0:
            return diag / diag_total
        return 0.5 * diag / diag_total + 0.5 * off / off_total
    
    def __repr__(self):
        return f'FiniteSymmetricSpace(n={self._n}, s={self._s}, {self._family})'
    
    def describe(self):
        return {'n': self._n, 's': self._s, 'family': self._family}
    
    @property
    def family(self):
        return self._family
    
    @property
    def n(self):
        return self._n
    
    @property
    def s(self):
        return self._s


def build_space(n, s, family='uniform', h=None):
    return FiniteSymmetricSpace(n, s, family, h)

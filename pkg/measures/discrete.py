import math

import numpy as np

from utils.errors import ArgumentError, DomainError

MERGE_DECIMALS = 12
MASS_TOL = 1e-12


class DiscreteMeasure:
    """Finitely supported probability measure on R^d.

    Points are snapped to the 12-decimal grid and atoms on the same grid point are merged.
    Two points closer than 1e-12 that round to neighbouring grid points stay apart.
    Zero-mass atoms are dropped and the remaining atoms are stored in lexicographic
    point order.
    """
    
    def __init__(self, points, masses, dimension=None):
        masses = np.asarray(masses, dtype=np.float64).reshape(-1)
        points = np.asarray(points, dtype=np.float64)
        if dimension is None:
            dimension = points.shape[-1] if points.ndim == 2 else 1
        points = points.reshape(len(masses), dimension)
        
        if dimension < 1:
            raise ArgumentError(f'dimension must be positive, got {dimension}')
        if np.any(masses < 0) or not np.all(np.isfinite(masses)):
            raise ArgumentError('atom masses must be finite and nonnegative')
        if not np.all(np.isfinite(points)):
            raise ArgumentError('atom points must be finite')
        total = math.fsum(masses)
        if abs(total - 1.0) > MASS_TOL:
            raise ArgumentError(f'atom masses sum to {total!r}, expected 1')
        
        keep = masses > 0
        points, masses = points[keep], masses[keep]
        rounded = np.round(points, MERGE_DECIMALS) + 0.0
        uniq, inverse = np.unique(rounded, axis=0, return_inverse=True)
        merged = np.bincount(inverse.reshape(-1), weights=masses, minlength=len(uniq))
        
        self._dimension = int(dimension)
        self._points = uniq
        self._masses = merged
        self._points.flags.writeable = False
        self._masses.flags.writeable = False
    
    @classmethod
    def dirac(cls, point):
        point = np.atleast_1d(np.asarray(point, dtype=np.float64))
        return cls(point.reshape(1, -1), [1.0])
    
    @classmethod
    def mixture(cls, atoms):
        """Build from ``[(point, mass), ...]``."""
        points = [np.atleast_1d(np.asarray(p, dtype=np.float64)) for p, _ in atoms]
        masses = [m for _, m in atoms]
        dims = {len(p) for p in points}
        if len(dims) != 1:
            raise DomainError(f'atoms of different dimensions: {sorted(dims)}')
        return cls(np.stack(points), masses)
    
    def marginal(self, coords):
        coords = list(coords)
        if not coords or min(coords) < 0 or max(coords) >= self._dimension:
            raise ArgumentError(f'invalid marginal coordinates {coords} for dimension {self._dimension}')
        return self.pushforward(lambda points: points[:, coords], len(coords))
    
    def pushforward(self, func, dimension):
        """Image under ``func``, which maps the ``(atoms, d)`` point array to ``(atoms, dimension)``."""
        points = np.asarray(func(self._points), dtype=np.float64).reshape(len(self._masses), dimension)
        return DiscreteMeasure(points, self._masses, dimension=dimension)
    
    def expectation(self, func):
        values = np.asarray(func(self._points), dtype=np.float64).reshape(len(self._masses))
        return float(np.dot(self._masses, values))
    
    def key(self):
        return (self._dimension, self._points.tobytes(), np.round(self._masses, MERGE_DECIMALS).tobytes())
    
    def to_json(self):
        atoms = [{'point': [float(x) for x in p], 'mass': float(m)} for p, m in zip(self._points, self._masses)]
        return {'dimension': self._dimension, 'atoms': atoms}
    
    @classmethod
    def from_json(cls, data):
        dimension = int(data['dimension'])
        atoms = data['atoms']
        points = np.array([a['point'] for a in atoms], dtype=np.float64).reshape(len(atoms), dimension)
        return cls(points, [a['mass'] for a in atoms], dimension=dimension)
    
    def __eq__(self, other):
        if not isinstance(other, DiscreteMeasure):
            return NotImplemented
        return (self._dimension == other._dimension
                and self._points.shape == other._points.shape
                and np.array_equal(self._points, other._points)
                and np.allclose(self._masses, other._masses, rtol=0, atol=MASS_TOL))
    
    def __hash__(self):
        return hash((self._dimension, self._points.tobytes()))
    
    def __len__(self):
        return len(self._masses)
    
    def __repr__(self):
        atoms = ', '.join(f'{m:.4g}*{tuple(np.round(p, 4))}' for p, m in zip(self._points[:4], self._masses[:4]))
        more = ', ...' if len(self) > 4 else ''
        return f'DiscreteMeasure(d={self._dimension}, [{atoms}{more}])'
    
    @property
    def dimension(self):
        return self._dimension
    
    @property
    def points(self):
        return self._points
    
    @property
    def masses(self):
        return self._masses


class MeasureSet:
    def __init__(self, members, dimension=None):
        members = list(members)
        if dimension is None:
            if not members:
                raise ArgumentError('dimension is required for an empty measure set')
            dimension = members[0].dimension
        
        uniq = []
        seen = set()
        for mu in members:
            if mu.dimension != dimension:
                raise DomainError(f'member of dimension {mu.dimension} in a set of dimension {dimension}')
            key = mu.key()
            if key not in seen:
                seen.add(key)
                uniq.append(mu)
        
        self._dimension = int(dimension)
        self._members = tuple(uniq)
    
    def to_json(self):
        return {'dimension': self._dimension, 'members': [mu.to_json() for mu in self._members]}
    
    @classmethod
    def from_json(cls, data):
        return cls([DiscreteMeasure.from_json(m) for m in data['members']], dimension=int(data['dimension']))
    
    def __iter__(self):
        return iter(self._members)
    
    def __len__(self):
        return len(self._members)
    
    def __getitem__(self, idx):
        return self._members[idx]
    
    @property
    def dimension(self):
        return self._dimension
    
    @property
    def members(self):
        return self._members


def tau(mu):
    """Maximal expectation of the absolute marginals."""
    return float(np.max(mu.masses @ np.abs(mu.points)))

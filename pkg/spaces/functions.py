import numpy as np

from utils.errors import ArgumentError, DomainError
from utils.seeding import make_rng

CATALOG = ('ones', 'uniform', 'rademacher', 'random_subset', 'indicator', 'rank_one', 'coordinate')


class TestFunction:
    """Symmetric real function on a space, one value per class."""
    
    __test__ = False
    
    def __init__(self, space, values, clamped=False):
        values = np.asarray(values, dtype=np.float64).reshape(-1)
        if values.shape != (len(space),):
            raise ArgumentError(f'{len(values)} values for a space with {len(space)} classes')
        if clamped and np.any(np.abs(values) > 1):
            raise ArgumentError('clamped function with values outside [-1, 1]')
        self._space = space
        self._values = values
        self._values.flags.writeable = False
        self._clamped = bool(clamped)
    
    @classmethod
    def from_dense(cls, space, arr, clamped=False):
        """Read one value per class at its representative cell; ``arr`` must be orbit-constant."""
        arr = np.asarray(arr, dtype=np.float64)
        if arr.shape != space.shape:
            raise ArgumentError(f'array of shape {arr.shape} on a space of shape {space.shape}')
        return cls(space, arr[tuple(space.representatives.T)], clamped)
    
    @classmethod
    def constant(cls, space, value=1.0):
        return cls(space, np.full(len(space), float(value)), clamped=abs(value) <= 1)
    
    def to_dense(self):
        return self._values[self._space.orbit_index]
    
    def clamp(self):
        return TestFunction(self._space, np.clip(self._values, -1.0, 1.0), clamped=True)
    
    def relabel(self, space, psi):
        """Transport through the vertex permutation ``psi`` onto ``space``: ``g(psi(x)) = f(x)``."""
        psi = np.asarray(psi, dtype=np.int64)
        dense = self.to_dense()
        inv = np.argsort(psi)
        moved = dense[np.ix_(*([inv] * dense.ndim))]
        return TestFunction.from_dense(space, moved, self._clamped)
    
    def lp_norm(self, p):
        return lp_norm(self, p)
    
    def expectation(self):
        return self._space.expectation(self._values)
    
    def _check(self, other):
        if other._space != self._space:
            raise DomainError(f'functions on different spaces: {self._space!r} and {other._space!r}')
    
    def __add__(self, other):
        self._check(other)
        return TestFunction(self._space, self._values + other._values)
    
    def __sub__(self, other):
        self._check(other)
        return TestFunction(self._space, self._values - other._values)
    
    def __mul__(self, scalar):
        return TestFunction(self._space, self._values * float(scalar))
    
    __rmul__ = __mul__
    
    def __neg__(self):
        return TestFunction(self._space, -self._values, self._clamped)
    
    def to_json(self):
        values = {','.join(str(int(i) + 1) for i in rep): float(v)
                  for rep, v in zip(self._space.representatives, self._values)}
        return {'space': self._space.describe(), 'values': values}
    
    @classmethod
    def from_json(cls, data, space):
        if data['space'] != space.describe():
            raise DomainError(f'function on {data["space"]} loaded onto {space.describe()}')
        lookup = {tuple(int(i) - 1 for i in key.split(',')): v for key, v in data['values'].items()}
        values = [lookup.get(tuple(int(i) for i in rep), 0.0) for rep in space.representatives]
        return cls(space, values, clamped=bool(np.all(np.abs(values) <= 1)))
    
    def __repr__(self):
        return f'TestFunction({self._space!r}, {len(self._values)} classes, clamped={self._clamped})'
    
    @property
    def space(self):
        return self._space
    
    @property
    def values(self):
        return self._values
    
    @property
    def clamped(self):
        return self._clamped


def lp_norm(fn, p):
    """``(sum P(class) |f|^p)^(1/p)``; ``p = inf`` is the max over classes of positive mass."""
    masses, values = fn.space.masses, np.abs(fn.values)
    if np.isinf(p):
        charged = values[masses > 0]
        return float(charged.max()) if charged.size else 0.0
    if p < 1:
        raise ArgumentError(f'norm exponent must be >= 1, got {p}')
    return float(np.dot(masses, values ** p) ** (1.0 / p))


def _vertex_axes(space):
    axes = getattr(space, 'axes', None)
    if axes is None:
        return list(range(len(space.shape)))
    return [a for a, subset in enumerate(axes) if len(subset) == 1]


def draw(space, entry, seed, index, subset=None):
    """The ``index``-th function of catalog ``entry`` for ``seed``."""
    rng = make_rng(seed, index)
    size = len(space)
    if entry == 'ones':
        values = np.ones(size)
    elif entry == 'uniform':
        values = rng.uniform(-1.0, 1.0, size)
    elif entry == 'rademacher':
        values = 2.0 * rng.integers(0, 2, size) - 1.0
    elif entry == 'random_subset':
        values = (rng.random(size) < 0.5).astype(np.float64)
    elif entry == 'indicator':
        if subset is None:
            raise ArgumentError('catalog entry "indicator" needs a subset of cells')
        cells = np.asarray(subset, dtype=np.int64).reshape(-1, len(space.shape))
        values = np.zeros(size)
        values[space.orbit_index[tuple(cells.T)]] = 1.0
    elif entry == 'rank_one':
        axes = _vertex_axes(space)
        vec = rng.uniform(-1.0, 1.0, max(space.shape[a] for a in axes))
        values = np.prod(vec[space.representatives[:, axes]], axis=1)
    elif entry == 'coordinate':
        values = np.zeros(size)
        values[rng.integers(0, size)] = 1.0
    else:
        raise ArgumentError(f'unknown catalog entry "{entry}", expected one of {CATALOG}')
    return TestFunction(space, values, clamped=True)


def sample_test_functions(space, entry, count, seed, subset=None, start=0):
    if count < 1:
        raise ArgumentError(f'count must be positive, got {count}')
    return [draw(space, entry, seed, start + i, subset) for i in range(count)]

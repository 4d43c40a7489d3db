
import numpy as np
from pathlib2 import Path

from hypergraphon.coords import CoordinateIndex
from spaces.grid import as_resolutions
from spaces.space import SymmetricSpace
from tensors.adjacency import adjacency_tensor
from utils.errors import ArgumentError


class StepFunction:
    """Real step function on the grid of ``[0,1]^{r_<[k]}``.

    An axis indexed by a subset of size ``j`` is cut into ``resolutions[j-1]``
    equal cells; ``values`` holds one number per grid cell.
    """
    
    def __init__(self, k, resolution, values):
        self._coords = CoordinateIndex(k)
        self._resolutions = as_resolutions(resolution, k - 1)
        values = np.asarray(values, dtype=np.float64)
        shape = self._coords.axis_sizes(self._resolutions)
        if values.shape != shape:
            raise ArgumentError(f'values of shape {values.shape}, expected {shape}')
        self._values = values
        self._values.flags.writeable = False
    
    @classmethod
    def constant(cls, k, value):
        return cls(k, 1, np.full((1,) * (2 ** k - 2), float(value)))
    
    def refine(self, resolution):
        resolutions = as_resolutions(resolution, self.k - 1)
        values = self._values
        for axis, subset in enumerate(self._coords.subsets):
            old, new = self._resolutions[len(subset) - 1], resolutions[len(subset) - 1]
            if new % old:
                raise ArgumentError(f'resolution {new} does not refine {old}')
            values = np.repeat(values, new // old, axis=axis)
        return type(self)(self.k, resolutions, values)
    
    def is_symmetric(self, atol=1e-12):
        return all(np.allclose(self._values, np.transpose(self._values, perm), rtol=0, atol=atol)
                   for perm in self._coords.permutations())
    
    def mean(self):
        return float(self._values.mean())
    
    def _aligned(self, other):
        if other.k != self.k:
            raise ArgumentError(f'step functions of different order: {self.k} and {other.k}')
        common = tuple(int(np.lcm(a, b)) for a, b in zip(self._resolutions, other._resolutions))
        return self.refine(common), other.refine(common)
    
    def __sub__(self, other):
        a, b = self._aligned(other)
        return StepFunction(self.k, a.resolutions, a.values - b.values)
    
    def __add__(self, other):
        a, b = self._aligned(other)
        return StepFunction(self.k, a.resolutions, a.values + b.values)
    
    def __repr__(self):
        return f'{type(self).__name__}(k={self.k}, resolutions={self._resolutions})'
    
    @property
    def k(self):
        return self._coords.k
    
    @property
    def coords(self):
        return self._coords
    
    @property
    def resolutions(self):
        return self._resolutions
    
    @property
    def values(self):
        return self._values
    
    @property
    def shape(self):
        return self._values.shape


class StepHypergraphon(StepFunction):
    """Symmetric ``[0,1]``-valued step function."""
    
    def __init__(self, k, resolution, values):
        super().__init__(k, resolution, values)
        if np.any(self._values < 0) or np.any(self._values > 1):
            raise ArgumentError('hypergraphon values must lie in [0, 1]')
        if not self.is_symmetric():
            raise ArgumentError('hypergraphon is not symmetric under permutations of [k]')


def from_hypergraph(h, k):
    """Step hypergraphon of a k-uniform hypergraph, constant along every coordinate of size >= 2."""
    if not h.is_uniform(k):
        raise ArgumentError(f'hypergraph is not {k}-uniform: cardinalities {h.cardinalities}')
    dense = adjacency_tensor(h, k).to_dense()
    values = dense.reshape(dense.shape + (1,) * (2 ** k - 2 - k))
    return StepHypergraphon(k, (h.n,) + (1,) * (k - 2), values)


def threshold_pairs(k, m, level=0.5):
    """``prod over pairs S of 1[x_S <= level]`` at resolution ``m`` on pair coordinates."""
    if k < 3:
        raise ArgumentError(f'pair coordinates exist for k >= 3, got {k}')
    cut = level * m
    if abs(cut - round(cut)) > 1e-12:
        raise ArgumentError(f'level {level} is not a cell boundary at resolution {m}')
    coords = CoordinateIndex(k)
    resolutions = tuple(m if size == 2 else 1 for size in range(1, k))
    shape = coords.axis_sizes(resolutions)
    below = (np.arange(m) < round(cut)).astype(np.float64)
    values = np.ones(shape)
    for axis, subset in enumerate(coords.subsets):
        if len(subset) == 2:
            view = [1] * len(shape)
            view[axis] = m
            values = values * below.reshape(view)
    return StepHypergraphon(k, resolutions, values)


def _orbits(w):
    return SymmetricSpace(w.shape, w.coords.permutations())


def write_hypergraphon(w, file):
    file = Path(file)
    if not file.parent.exists():
        file.parent.mkdir(parents=True)
    orbits = _orbits(w)
    with open(str(file), 'w', encoding='utf-8') as f:
        f.write(' '.join(str(x) for x in (w.k,) + w.resolutions) + '\n')
        for cell in orbits.representatives:
            value = float(w.values[tuple(cell)])
            f.write(' '.join(str(int(c) + 1) for c in cell) + f' {value!r}\n')


def read_hypergraphon(file):
    file = Path(file)
    with open(str(file), 'r', encoding='utf-8') as f:
        lines = [line.split() for line in f if line.strip()]
    header = [int(x) for x in lines[0]]
    k, resolutions = header[0], tuple(header[1:])
    if len(resolutions) == 1:
        resolutions = resolutions * (k - 1)
    shape = CoordinateIndex(k).axis_sizes(as_resolutions(resolutions, k - 1))
    orbits = SymmetricSpace(shape, CoordinateIndex(k).permutations())
    
    lookup = {tuple(int(c) - 1 for c in line[:-1]): float(line[-1]) for line in lines[1:]}
    class_values = np.array([lookup.get(tuple(int(c) for c in rep), 0.0) for rep in orbits.representatives])
    return StepHypergraphon(k, resolutions, class_values[orbits.orbit_index])

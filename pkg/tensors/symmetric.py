import itertools

import numpy as np
from pathlib2 import Path

from tensors.indexing import canonical_indices, encode, stabilizer_size, num_permutations
from utils.errors import ArgumentError

DENSE_MAX_DIMENSION = 64
DENSE_MAX_ENTRIES = 1 << 24


class SymmetricTensor:
    """Order-r, dimension-n symmetric tensor stored by sorted multi-index.

    ``row_scale`` is an optional dense order-(r-1) array multiplying the entry at
    ``(i_1, ..., i_r)`` by ``row_scale[i_1, ..., i_{r-1}]``. It carries degree
    normalisation, which breaks the symmetry in the last slot; only the
    (r-1)-action is defined for such tensors.
    """
    
    def __init__(self, order, dimension, indices=None, values=None, row_scale=None):
        if order < 1 or dimension < 1:
            raise ArgumentError(f'order and dimension must be positive, got ({order}, {dimension})')
        if indices is None:
            indices = np.zeros((0, order), dtype=np.int64)
            values = np.zeros(0)
        indices = np.sort(np.asarray(indices, dtype=np.int64).reshape(-1, order), axis=1)
        values = np.asarray(values, dtype=np.float64).reshape(-1)
        if len(indices) != len(values):
            raise ArgumentError(f'{len(indices)} indices for {len(values)} values')
        if len(indices) and (indices.min() < 0 or indices.max() >= dimension):
            raise ArgumentError(f'index out of range [0, {dimension})')
        
        keep = values != 0
        indices, values = indices[keep], values[keep]
        keys = encode(indices, dimension)
        order_ = np.argsort(keys, kind='stable')
        keys, indices, values = keys[order_], indices[order_], values[order_]
        dup = np.flatnonzero(keys[1:] == keys[:-1])
        if len(dup):
            if not np.array_equal(values[dup], values[dup + 1]):
                raise ArgumentError('conflicting values for one symmetric entry')
            uniq = np.ones(len(keys), dtype=bool)
            uniq[dup + 1] = False
            keys, indices, values = keys[uniq], indices[uniq], values[uniq]
        
        if row_scale is not None:
            row_scale = np.asarray(row_scale, dtype=np.float64)
            if row_scale.shape != (dimension,) * (order - 1):
                raise ArgumentError(f'row scale of shape {row_scale.shape} for order {order} dimension {dimension}')
        
        self._order = int(order)
        self._dimension = int(dimension)
        self._keys = keys
        self._indices = indices
        self._values = values
        self._row_scale = row_scale
        self._dense = None
    
    @classmethod
    def from_dense(cls, arr, atol=1e-12):
        arr = np.asarray(arr, dtype=np.float64)
        r, n = arr.ndim, arr.shape[0]
        if arr.shape != (n,) * r:
            raise ArgumentError(f'tensor of shape {arr.shape} is not cubical')
        for perm in itertools.permutations(range(r)):
            if not np.allclose(arr, np.transpose(arr, perm), rtol=0, atol=atol):
                raise ArgumentError('dense tensor is not symmetric, use symmetrize')
        idx = canonical_indices(n, r)
        return cls(r, n, idx, arr[tuple(idx.T)])
    
    def entry(self, idx):
        idx = tuple(int(i) for i in idx)
        assert len(idx) == self._order, f'{idx} is not an order-{self._order} index'
        key = encode(np.sort(np.array(idx)).reshape(1, -1), self._dimension)[0]
        pos = np.searchsorted(self._keys, key)
        value = self._values[pos] if pos < len(self._keys) and self._keys[pos] == key else 0.0
        if self._row_scale is not None:
            value = value * self._row_scale[idx[:-1]]
        return float(value)
    
    def expand(self):
        """Yields ``(ordered_indices, weights)`` per permutation; the weights of every
        ordered index sum to its entry over all yielded blocks."""
        weights = self._values / stabilizer_size(self._indices)
        for perm in itertools.permutations(range(self._order)):
            yield self._indices[:, perm], weights
    
    def to_dense(self):
        if self._dense is None:
            dense = np.zeros((self._dimension,) * self._order)
            for perm in itertools.permutations(range(self._order)):
                dense[tuple(self._indices[:, perm].T)] = self._values
            if self._row_scale is not None:
                dense = dense * self._row_scale[..., np.newaxis]
            dense.flags.writeable = False
            self._dense = dense
        return self._dense
    
    def scaled(self, factor):
        return SymmetricTensor(self._order, self._dimension, self._indices, self._values * factor, self._row_scale)
    
    def with_row_scale(self, row_scale):
        return SymmetricTensor(self._order, self._dimension, self._indices, self._values, row_scale)
    
    def relabel(self, psi):
        """Tensor ``U`` with ``U[psi[i_1], ..., psi[i_r]] = T[i_1, ..., i_r]``."""
        psi = np.asarray(psi, dtype=np.int64)
        assert sorted(psi.tolist()) == list(range(self._dimension)), f'{psi} is not a permutation'
        row_scale = None
        if self._row_scale is not None:
            inv = np.argsort(psi)
            row_scale = self._row_scale[np.ix_(*([inv] * (self._order - 1)))]
        return SymmetricTensor(self._order, self._dimension, psi[self._indices], self._values, row_scale)
    
    def allclose(self, other, atol=1e-12):
        if (self._order, self._dimension) != (other._order, other._dimension):
            return False
        if self._row_scale is not None or other._row_scale is not None:
            return np.allclose(self.to_dense(), other.to_dense(), rtol=0, atol=atol)
        keys = np.union1d(self._keys, other._keys)
        return np.allclose(self._lookup(keys), other._lookup(keys), rtol=0, atol=atol)
    
    def _lookup(self, keys):
        out = np.zeros(len(keys))
        if len(self._keys):
            pos = np.clip(np.searchsorted(self._keys, keys), 0, len(self._keys) - 1)
            hit = self._keys[pos] == keys
            out[hit] = self._values[pos[hit]]
        return out
    
    def __repr__(self):
        scale = ', row-scaled' if self._row_scale is not None else ''
        return f'SymmetricTensor(r={self._order}, n={self._dimension}, nnz={self.nnz}, {self.backend}{scale})'
    
    @property
    def order(self):
        return self._order
    
    @property
    def dimension(self):
        return self._dimension
    
    @property
    def indices(self):
        return self._indices
    
    @property
    def values(self):
        return self._values
    
    @property
    def row_scale(self):
        return self._row_scale
    
    @property
    def nnz(self):
        return len(self._values)
    
    @property
    def backend(self):
        small = self._dimension <= DENSE_MAX_DIMENSION and self._dimension ** self._order <= DENSE_MAX_ENTRIES
        return 'dense' if small else 'sparse'


def symmetrize(t):
    """Symmetric part of an arbitrary dense order-r tensor."""
    t = np.asarray(t, dtype=np.float64)
    r, n = t.ndim, t.shape[0]
    if t.shape != (n,) * r:
        raise ArgumentError(f'tensor of shape {t.shape} is not cubical')
    total = np.zeros_like(t)
    for perm in itertools.permutations(range(r)):
        total += np.transpose(t, perm)
    idx = canonical_indices(n, r)
    return SymmetricTensor(r, n, idx, (total / num_permutations(r))[tuple(idx.T)])


def read_tensor(file):
    file = Path(file)
    with open(str(file), 'r', encoding='utf-8') as f:
        lines = [line.split() for line in f if line.strip()]
    if not lines or len(lines[0]) != 2:
        raise ArgumentError(f'{file}: first line must be "<order> <dimension>"')
    r, n = int(lines[0][0]), int(lines[0][1])
    body = lines[1:]
    if any(len(line) != r + 1 for line in body):
        raise ArgumentError(f'{file}: every entry line needs {r} indices and a value')
    indices = np.array([[int(i) - 1 for i in line[:r]] for line in body], dtype=np.int64).reshape(-1, r)
    values = np.array([float(line[r]) for line in body])
    return SymmetricTensor(r, n, indices, values)


def write_tensor(t, file):
    if t.row_scale is not None:
        raise ArgumentError('row-scaled tensors have no symmetric COO form')
    file = Path(file)
    if not file.parent.exists():
        file.parent.mkdir(parents=True)
    with open(str(file), 'w', encoding='utf-8') as f:
        f.write(f'{t.order} {t.dimension}\n')
        for idx, value in zip(t.indices, t.values):
            f.write(' '.join(str(int(i) + 1) for i in idx) + f' {float(value)!r}\n')

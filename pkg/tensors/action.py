import itertools

import numpy as np

from tensors.symmetric import SymmetricTensor
from utils.errors import ArgumentError


def windows(r, s):
    """Index positions read by each function slot.

    A multi-index ``c`` of length ``r`` is read cyclically: the output takes
    ``c[0:s]`` and slot ``p`` (1-based) takes the window ``c[p:p+s]`` modulo ``r``.
    For ``s = 1`` this is the usual contraction of every trailing index with one
    vector; for ``s = r - 1`` every slot shares exactly one contracted index.
    """
    return [[(p + q) % r for q in range(s)] for p in range(1, r)]


def symmetrize_output(out):
    s = out.ndim
    if s < 2:
        return out
    perms = list(itertools.permutations(range(s)))
    return sum(np.transpose(out, perm) for perm in perms) / len(perms)


def _check(t, s, arrays):
    r, n = t.order, t.dimension
    if not 1 <= s <= r - 1:
        raise ArgumentError(f'action order s={s} outside [1, {r - 1}]')
    if len(arrays) != r - 1:
        raise ArgumentError(f'{r - 1} functions expected, got {len(arrays)}')
    for arr in arrays:
        if arr.shape != (n,) * s:
            raise ArgumentError(f'function of shape {arr.shape}, expected {(n,) * s}')
    if t.row_scale is not None and s != r - 1:
        raise ArgumentError('degree-normalized tensors only support the (r-1)-action')


def contract(t, s, arrays):
    """Dense ``T[f^(1), ..., f^(r-1)]`` of the s-action, symmetrized over the output slots."""
    arrays = [np.asarray(a, dtype=np.float64) for a in arrays]
    _check(t, s, arrays)
    r, n = t.order, t.dimension
    wins = windows(r, s)
    
    if t.backend == 'dense':
        operands = [t.to_dense(), list(range(r))]
        for arr, win in zip(arrays, wins):
            operands += [arr, win]
        out = np.einsum(*operands, list(range(s)), optimize=True)
        return symmetrize_output(out)
    
    shape = (n,) * s
    out = np.zeros(n ** s)
    for idx, weights in t.expand():
        contrib = weights.copy()
        for arr, win in zip(arrays, wins):
            contrib *= arr[tuple(idx[:, win].T)]
        flat = np.ravel_multi_index(tuple(idx[:, :s].T), shape)
        out += np.bincount(flat, weights=contrib, minlength=n ** s)
    out = symmetrize_output(out.reshape(shape))
    if t.row_scale is not None:
        out = out * t.row_scale
    return out


def s_action_apply(t, s, fns):
    """s-action of ``t`` on symmetric order-s tensors, returned as a SymmetricTensor."""
    arrays = [f.to_dense() if isinstance(f, SymmetricTensor) else np.asarray(f) for f in fns]
    out = contract(t, s, arrays)
    return SymmetricTensor.from_dense(out, atol=1e-9)

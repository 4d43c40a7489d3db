import numpy as np

from utils.errors import ArgumentError


def _signatures(dense):
    """Sorted slice through each vertex; equal for vertices matched by an isomorphism."""
    n = dense.shape[0]
    return [np.sort(dense[v].ravel()) for v in range(n)]


def _consistent(t, u, assigned, images):
    r = t.ndim
    sub_t = t[np.ix_(*([assigned] * r))]
    sub_u = u[np.ix_(*([images] * r))]
    return np.array_equal(sub_t, sub_u)


def tensor_isomorphism_oracle(t, u):
    """Lexicographically least ``psi`` with ``t[i_1, ..., i_r] == u[psi[i_1], ..., psi[i_r]]``, or None.

    Depth-first over vertex images in increasing order, pruned by slice signatures and
    by entrywise equality on the already assigned vertices. Meant for n <= 10.
    """
    if (t.order, t.dimension) != (u.order, u.dimension):
        raise ArgumentError(f'tensors of different shape: ({t.order}, {t.dimension}) and ({u.order}, {u.dimension})')
    td, ud = t.to_dense(), u.to_dense()
    if not np.array_equal(np.sort(td.ravel()), np.sort(ud.ravel())):
        return None
    
    n = t.dimension
    sig_t, sig_u = _signatures(td), _signatures(ud)
    candidates = [[w for w in range(n) if np.array_equal(sig_t[v], sig_u[w])] for v in range(n)]
    if any(not c for c in candidates):
        return None
    
    psi = []
    used = [False] * n
    
    def extend(v):
        if v == n:
            return True
        for w in candidates[v]:
            if used[w]:
                continue
            psi.append(w)
            if _consistent(td, ud, list(range(v + 1)), psi):
                used[w] = True
                if extend(v + 1):
                    return True
                used[w] = False
            psi.pop()
        return False
    
    if not extend(0):
        return None
    return np.array(psi, dtype=np.int64)

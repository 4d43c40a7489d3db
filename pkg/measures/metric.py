import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import maximum_flow
from scipy.spatial import cKDTree

from utils.errors import ArgumentError, DomainError
from utils.parallel import pool_map

DEFAULT_TOL = 1e-9
FIRST_RADIUS = 1.0 / 64
# integer flow unit; each atom mass is rounded to a multiple of 2^-30, so the flow value
# carries an error of at most one unit per atom
FLOW_SCALE = 2 ** 30


def _integer_masses(masses):
    """Masses in units of ``1 / FLOW_SCALE`` by largest remainder, summing to ``FLOW_SCALE``."""
    scaled = np.asarray(masses, dtype=np.float64) * FLOW_SCALE
    units = np.floor(scaled).astype(np.int64)
    deficit = FLOW_SCALE - int(units.sum())
    if deficit > 0:
        order = np.argsort(-(scaled - units), kind='stable')
        units[order[:min(deficit, len(units))]] += 1
    return units


class _Transport:
    """Sub-couplings of ``(mu, nu)`` supported on pairs at distance <= eps.
    
    Pairs come from a kd-tree query and are cached at the largest radius asked
    so far, so a shrinking search only filters.
    """
    
    def __init__(self, mu, nu):
        self._mu = mu
        self._nu = nu
        self._mu_tree = cKDTree(mu.points)
        self._nu_tree = cKDTree(nu.points)
        self._mu_units = _integer_masses(mu.masses)
        self._nu_units = _integer_masses(nu.masses)
        self._radius = -1.0
        self._pairs = None
    
    def pairs(self, eps):
        if eps > self._radius:
            found = self._mu_tree.sparse_distance_matrix(self._nu_tree, eps, output_type='ndarray')
            self._pairs = (found['i'].astype(np.int64), found['j'].astype(np.int64), found['v'])
            self._radius = eps
        rows, cols, dist = self._pairs
        keep = dist <= eps
        return rows[keep], cols[keep], dist[keep]
    
    def capacity(self, eps):
        """Largest mass of a sub-coupling on pairs at distance <= eps."""
        rows, cols, _ = self.pairs(eps)
        if rows.size == 0:
            return 0.0
        m, k = len(self._mu), len(self._nu)
        if m == 1:
            return float(min(1.0, self._nu.masses[np.unique(cols)].sum()))
        if k == 1:
            return float(min(1.0, self._mu.masses[np.unique(rows)].sum()))
    
        # nodes: source 0, mu atoms 1..m, nu atoms m+1..m+k, sink m+k+1
        sink = m + k + 1
        mu_nodes, nu_nodes = np.arange(1, m + 1), np.arange(m + 1, m + k + 1)
        tails = np.concatenate([np.zeros(m, dtype=np.int64), rows + 1, nu_nodes])
        heads = np.concatenate([mu_nodes, cols + m + 1, np.full(k, sink, dtype=np.int64)])
        caps = np.concatenate([self._mu_units, np.full(len(rows), FLOW_SCALE, dtype=np.int64), self._nu_units])
        graph = csr_matrix((caps.astype(np.int32), (tails, heads)), shape=(sink + 1, sink + 1))
        graph.eliminate_zeros()
        return maximum_flow(graph, 0, sink).flow_value / FLOW_SCALE
    
    def excess(self, eps):
        return 1.0 - self.capacity(eps)
    
    def within(self, eps):
        return eps >= 1.0 or (eps >= 0.0 and self.excess(eps) <= eps)


def lp_distance(mu, nu, tol=DEFAULT_TOL):
    """Lévy-Prokhorov distance between two discrete measures.
    
    By Strassen's theorem ``d <= eps`` iff some coupling leaves at most ``eps`` mass on
    pairs farther apart than ``eps``, i.e. ``excess(eps) <= eps``. The radius doubles
    from 1/64 until feasible and is then bisected to width ``tol``; only pairs inside the
    current radius are ever built. The bracket is finally resolved exactly over the atom
    distances inside it, where ``excess`` is a step function.
    """
    if not tol > 0:
        raise ArgumentError(f'tol must be positive, got {tol}')
    if mu.dimension != nu.dimension:
        raise DomainError(f'dimension mismatch: {mu.dimension} vs {nu.dimension}')
    if mu == nu:
        return 0.0
    
    transport = _Transport(mu, nu)
    lo, hi = 0.0, FIRST_RADIUS
    while not transport.within(hi):
        lo, hi = hi, min(1.0, 2.0 * hi)
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if transport.within(mid):
            hi = mid
        else:
            lo = mid
    
    levels = np.array([])
    if hi < 1.0:
        _, _, dist = transport.pairs(hi)
        levels = np.unique(dist[(dist > lo) & (dist <= hi)])
    start, value = lo, transport.excess(lo)
    for level in levels:
        candidate = max(start, value)
        if candidate < level:
            return float(np.clip(candidate, 0.0, 1.0))
        start, value = level, transport.excess(level)
    return float(np.clip(max(start, value), 0.0, 1.0))


def lp_within(mu, nu, eps):
    """Whether ``lp_distance(mu, nu) <= eps``, from a single feasibility test."""
    if mu.dimension != nu.dimension:
        raise DomainError(f'dimension mismatch: {mu.dimension} vs {nu.dimension}')
    return mu == nu or _Transport(mu, nu).within(eps)


def lp_coupling_bound(joint):
    """Upper bound ``tau(X - Y)^(1/2) * k^(3/4)`` on the distance of the two marginals."""
    if joint.dimension % 2:
        raise ArgumentError(f'joint measure must have even dimension, got {joint.dimension}')
    k = joint.dimension // 2
    diff = joint.points[:, :k] - joint.points[:, k:]
    tau_diff = float(np.max(joint.masses @ np.abs(diff)))
    return float(np.sqrt(tau_diff) * k ** 0.75)


def _pair_distance(args):
    mu, nu, tol = args
    return lp_distance(mu, nu, tol)


def distance_matrix(a, b, tol=DEFAULT_TOL):
    pairs = [(mu, nu, tol) for mu in a for nu in b]
    values = pool_map(_pair_distance, pairs)
    return np.array(values, dtype=np.float64).reshape(len(a), len(b))


def _nearest(args):
    """Distance from ``mu`` to the closest candidate; candidates that cannot beat the
    current best by more than ``tol`` are rejected with one feasibility test."""
    mu, candidates, tol = args
    best = lp_distance(mu, candidates[0], tol)
    for nu in candidates[1:]:
        if best <= tol:
            break
        if lp_within(mu, nu, best - tol):
            best = min(best, lp_distance(mu, nu, tol))
    return best


def _directed(a, b, tol):
    # the member at the same position goes first: matched samplers put the closest law there
    tasks = []
    for i, mu in enumerate(a):
        order = [i] + [j for j in range(len(b)) if j != i] if i < len(b) else list(range(len(b)))
        tasks.append((mu, [b[j] for j in order], tol))
    return max(pool_map(_nearest, tasks))


def hausdorff(a, b, tol=DEFAULT_TOL):
    """Hausdorff distance of two finite measure sets under ``lp_distance``, within ``tol``.
    
    For sampled profiles this under-estimates the distance of the full profiles.
    """
    if len(a) == 0 or len(b) == 0:
        raise ArgumentError('hausdorff distance needs two nonempty measure sets')
    if a.dimension != b.dimension:
        raise DomainError(f'dimension mismatch: {a.dimension} vs {b.dimension}')
    
    value = max(_directed(a, b, tol), _directed(b, a, tol))
    return float(np.clip(value, 0.0, 1.0))

import itertools

from spaces.space import SymmetricSpace
from utils.errors import ArgumentError


def ordered_subsets(elements, proper=False):
    """Nonempty subsets ordered by size, then lexicographically."""
    elements = tuple(elements)
    top = len(elements) - 1 if proper else len(elements)
    return [c for size in range(1, top + 1) for c in itertools.combinations(elements, size)]


def subset_permutations(subsets, points):
    """Axis permutations induced on ``subsets`` by every permutation of ``points``."""
    lookup = {s: a for a, s in enumerate(subsets)}
    perms = []
    for sigma in itertools.permutations(points):
        image = dict(zip(points, sigma))
        perms.append([lookup[tuple(sorted(image[v] for v in s))] for s in subsets])
    return perms


def as_resolutions(resolution, levels):
    if isinstance(resolution, int):
        resolution = (resolution,) * levels
    resolution = tuple(int(m) for m in resolution)
    if len(resolution) != levels or min(resolution) < 1:
        raise ArgumentError(f'need {levels} positive resolutions, got {resolution}')
    return resolution


class GridSpace(SymmetricSpace):
    """Cell grid of ``[0,1]^{r[k-1]}`` with Lebesgue cell masses, symmetric under permutations of ``[k-1]``.

    Axes are the nonempty subsets of ``[k-1]`` (size-then-lex order) and an axis
    indexed by a subset of size ``j`` is cut into ``resolutions[j-1]`` cells.
    """
    
    def __init__(self, k, resolution):
        if k < 2:
            raise ArgumentError(f'grid spaces need k >= 2, got {k}')
        resolutions = as_resolutions(resolution, k - 1)
        axes = ordered_subsets(range(k - 1))
        shape = tuple(resolutions[len(a) - 1] for a in axes)
        super().__init__(shape, subset_permutations(axes, tuple(range(k - 1))))
        self._k = int(k)
        self._resolutions = resolutions
        self._axes = axes
    
    def __repr__(self):
        return f'GridSpace(k={self._k}, resolutions={self._resolutions})'
    
    def describe(self):
        return {'k': self._k, 'resolutions': list(self._resolutions), 'family': self.family}
    
    @property
    def family(self):
        return 'lebesgue'
    
    @property
    def k(self):
        return self._k
    
    @property
    def resolutions(self):
        return self._resolutions
    
    @property
    def axes(self):
        return self._axes

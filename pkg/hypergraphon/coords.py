from spaces.grid import ordered_subsets, subset_permutations
from utils.errors import ArgumentError


class CoordinateIndex:
    """Coordinates of ``[0,1]^{r_<[k]}``: the nonempty proper subsets of ``[k]`` by size, then lexicographically."""
    
    def __init__(self, k):
        if k < 2:
            raise ArgumentError(f'hypergraphons need k >= 2, got {k}')
        self._k = int(k)
        self._subsets = ordered_subsets(range(k), proper=True)
        self._position = {s: a for a, s in enumerate(self._subsets)}
    
    def face(self, i):
        """Axes of the subsets of ``[k] - {i}``, listed in the axis order of the ``[k-1]`` grid."""
        rest = [v for v in range(self._k) if v != i]
        return [self._position[tuple(rest[j] for j in sub)] for sub in ordered_subsets(range(self._k - 1))]
    
    def permutations(self):
        return subset_permutations(self._subsets, tuple(range(self._k)))
    
    def axis_sizes(self, resolutions):
        return tuple(resolutions[len(s) - 1] for s in self._subsets)
    
    def __len__(self):
        return len(self._subsets)
    
    @property
    def k(self):
        return self._k
    
    @property
    def subsets(self):
        return self._subsets

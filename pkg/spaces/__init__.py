from .space import SymmetricSpace, FiniteSymmetricSpace, build_space, FAMILIES
from .grid import GridSpace, ordered_subsets, subset_permutations, as_resolutions
from .functions import TestFunction, lp_norm, draw, sample_test_functions, CATALOG

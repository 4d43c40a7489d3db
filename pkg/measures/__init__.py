from .discrete import DiscreteMeasure, MeasureSet, tau
from .law import exact_law
from .metric import lp_distance, lp_within, lp_coupling_bound, hausdorff, distance_matrix

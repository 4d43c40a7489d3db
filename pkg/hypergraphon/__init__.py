from .coords import CoordinateIndex
from .step import StepFunction, StepHypergraphon, from_hypergraph, threshold_pairs, read_hypergraphon, \
    write_hypergraphon
from .partition import SymmetricGridPartition
from .quotient import Quotient, quotient, d1_quotient, stepping, cell_codes
from .cut_norm import CutNormEstimate, RegularityCheck, cut_norm_estimate, weak_regular_check
from .homomorphism import HomDensity, hom_density, hom_density_exact
from .bridge import as_multi_op

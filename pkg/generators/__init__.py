from .models import ModelSpec, GeneratedHypergraph, MODELS, SBM_LABELS, parse_model_spec, format_model_spec, \
    generate, orientation, clique_extension
from .stats import EdgeStats, edge_density_stats, induced_edge_counts

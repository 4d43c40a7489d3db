from .config import ExperimentConfig
from .runner import run_experiment, run_point, build_operator, resolve_sampler, COLUMNS

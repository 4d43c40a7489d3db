from .multi_op import MultiPOperator, from_tensor_action
from .norms import norm_estimate, trial_functions, NORM_SAMPLER
from .properties import check_property, PropertyCheck, PROPERTIES

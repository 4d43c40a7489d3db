from .profile import ProfileSample, DMEstimate, DEFAULT_SAMPLER, k_profile, tuple_law, sampled_tuples, \
    profile_from_pair, relabel_functions, profile_hausdorff, dM_from_profiles, dM_estimate
from .isomorphism import tensor_isomorphism_oracle
from .extraction import quotient_from_profile

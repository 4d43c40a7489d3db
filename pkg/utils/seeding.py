import numpy as np


def derive_seed(seed, index):
    # one child stream per (seed, index)
    sequence = np.random.SeedSequence([int(seed) & 0xFFFFFFFF, int(index)])
    return int(sequence.generate_state(1, dtype=np.uint32)[0])


def make_rng(seed, index=None):
    if index is not None:
        seed = derive_seed(seed, index)
    return np.random.Generator(np.random.Philox(key=int(seed)))

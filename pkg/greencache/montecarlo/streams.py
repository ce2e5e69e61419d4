"""
Counter-based random streams. Every (seed, stream, index) triple maps to its
own Philox generator, so a trial draws the same numbers whichever process
runs it and in whatever order.
"""

import numpy as np

GEOMETRY_STREAM = 0
REQUEST_STREAM = 1


def generator(seed, stream, index=0):
    sequence = np.random.SeedSequence(seed, spawn_key=(stream, index))
    return np.random.Generator(np.random.Philox(sequence))


def trial_generator(seed, trial_index):
    return generator(seed, GEOMETRY_STREAM, trial_index)


def request_generator(seed):
    return generator(seed, REQUEST_STREAM)

import numpy as np


def stream(seed, *keys):
    """Independent generator for ``(seed, *keys)``.

    Streams for distinct key tuples are statistically independent, so
    trials can be evaluated in any order (or in parallel) without changing
    results. A ``Generator`` is passed through unchanged when no keys are
    given.
    """
    if isinstance(seed, np.random.Generator):
        if keys:
            raise TypeError("keyed streams need an integer seed")
        return seed
    return np.random.default_rng(np.random.SeedSequence([int(seed), *map(int, keys)]))

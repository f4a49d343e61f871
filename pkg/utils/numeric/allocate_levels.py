import numpy as np

_SLACK = 1e-12


def allocate_levels(budget_bits: float, dims: int) -> np.ndarray:
    """Quantizer level counts per real dimension, as even as possible, with sum(log2 L) <= budget_bits.

    Levels are raised one at a time, smallest first, until no single increment
    fits; the unspent remainder is therefore below one bit.
    """
    levels = np.ones(dims, dtype=int)
    if budget_bits <= 0:
        return levels
    levels[:] = max(int(np.floor(2.0 ** (budget_bits / dims))), 1)
    while np.log2(levels).sum() > budget_bits + _SLACK:
        levels[np.argmax(levels)] -= 1

    while True:
        used = np.log2(levels).sum()
        for k in np.argsort(levels, kind="stable"):
            if used + np.log2((levels[k] + 1) / levels[k]) <= budget_bits + _SLACK:
                levels[k] += 1
                break
        else:
            return levels

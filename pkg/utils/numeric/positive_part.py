import numpy as np


def positive_part(x):
    """(x)^+ element-wise; plain floats stay floats."""
    if np.isscalar(x):
        return max(float(x), 0.0)
    return np.maximum(np.asarray(x, dtype=float), 0.0)

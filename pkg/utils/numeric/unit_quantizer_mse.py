import numpy as np
from scipy.stats import norm


def unit_quantizer_mse(levels: int, step: float) -> float:
    """Mean squared error of a `levels`-cell uniform quantizer with cell width `step` on N(0, 1).

    Cells are centred on zero; the two outer cells run to infinity.
    """
    half = levels * step / 2.0
    centres = -half + (np.arange(levels) + 0.5) * step
    inner = -half + np.arange(1, levels) * step
    lower = np.concatenate([[-np.inf], inner])
    upper = np.concatenate([inner, [np.inf]])
    # x * pdf(x) is zero on the infinite edges; only finite edges are multiplied
    edge_term = inner * norm.pdf(inner)

    mass = norm.cdf(upper) - norm.cdf(lower)
    first_moment = norm.pdf(lower) - norm.pdf(upper)
    second_moment = mass + np.concatenate([[0.0], edge_term]) - np.concatenate([edge_term, [0.0]])
    return float(np.sum(second_moment - 2 * centres * first_moment + centres ** 2 * mass))

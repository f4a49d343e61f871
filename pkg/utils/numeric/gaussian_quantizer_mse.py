import numpy as np

from utils.numeric.gaussian_step import gaussian_step
from utils.numeric.unit_quantizer_mse import unit_quantizer_mse


def gaussian_quantizer_mse(sigma, levels) -> np.ndarray:
    """Expected squared error of uniform_quantize on N(0, sigma^2) inputs, element-wise."""
    sigma = np.asarray(sigma, dtype=float)
    levels = np.broadcast_to(np.asarray(levels, dtype=int), sigma.shape)
    table = {int(L): unit_quantizer_mse(int(L), gaussian_step(int(L))) for L in np.unique(levels)}
    factors = np.vectorize(lambda L: table[int(L)], otypes=[float])(levels)
    return sigma ** 2 * factors

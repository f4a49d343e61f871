from functools import lru_cache

from scipy.optimize import minimize_scalar

from utils.numeric._constants import STEP_BOUNDS, STEP_XATOL
from utils.numeric.unit_quantizer_mse import unit_quantizer_mse


@lru_cache(maxsize=None)
def gaussian_step(levels: int) -> float:
    """Cell width, in standard deviations, that minimises the uniform quantizer's MSE on a Gaussian source."""
    levels = int(levels)
    if levels < 2:
        return 1.0
    result = minimize_scalar(
        lambda step: unit_quantizer_mse(levels, step),
        bounds=STEP_BOUNDS,
        method="bounded",
        options={"xatol": STEP_XATOL},
    )
    return float(result.x)

import numpy as np

from utils.numeric.gaussian_step import gaussian_step


def uniform_quantize(values, sigma, levels) -> tuple[np.ndarray, np.ndarray]:
    """Quantize real values with `levels` equal cells of width gaussian_step(levels) * sigma, centred on zero.

    Reconstruction is at cell centres; inputs beyond the outer edges go to the
    outer cells. Returns (quantized, overload) where overload marks those inputs.
    One level reconstructs zero.
    """
    values = np.asarray(values, dtype=float)
    sigma = np.broadcast_to(np.asarray(sigma, dtype=float), values.shape)
    levels = np.broadcast_to(np.asarray(levels, dtype=int), values.shape)
    step = np.vectorize(gaussian_step, otypes=[float])(levels) * sigma
    half = levels * step / 2.0
    live = half > 0

    clipped = np.clip(values, -half, half)
    index = np.zeros(values.shape)
    np.floor_divide(clipped + half, step, out=index, where=live)
    index = np.minimum(index, levels - 1)
    quantized = np.where(live, -half + (index + 0.5) * step, 0.0)
    overload = live & (np.abs(values) > half) & (levels > 1)
    return quantized, overload

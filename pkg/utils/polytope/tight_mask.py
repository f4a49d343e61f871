import numpy as np

from utils.polytope._constants import GEOMETRY_TOL


def tight_mask(normals: np.ndarray, offsets: np.ndarray, point, tol: float = GEOMETRY_TOL) -> np.ndarray:
    """Which half-planes hold with equality at point."""
    slack = np.asarray(offsets, dtype=float) - np.asarray(normals, dtype=float) @ np.asarray(point, dtype=float)
    return np.abs(slack) <= tol

import numpy as np

from utils.polytope._constants import GEOMETRY_TOL


def contains_point(normals: np.ndarray, offsets: np.ndarray, point, tol: float = GEOMETRY_TOL) -> bool:
    values = np.asarray(normals, dtype=float) @ np.asarray(point, dtype=float)
    return bool(np.all(values <= np.asarray(offsets, dtype=float) + tol))

import numpy as np

from utils.polytope._constants import GEOMETRY_TOL, MIN_TIGHT_VERTICES
from utils.polytope.tight_mask import tight_mask


def flag_redundant(normals: np.ndarray, offsets: np.ndarray, vertices: np.ndarray, tol: float = GEOMETRY_TOL) -> np.ndarray:
    """True for half-planes that do not support an edge of the polygon."""
    counts = np.zeros(len(offsets), dtype=int)
    for v in vertices:
        counts += tight_mask(normals, offsets, v, tol)
    return counts < MIN_TIGHT_VERTICES

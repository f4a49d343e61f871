import numpy as np
from scipy.spatial import ConvexHull

from utils.polytope._constants import GEOMETRY_TOL, VERTEX_DECIMALS


def enumerate_vertices(normals: np.ndarray, offsets: np.ndarray, tol: float = GEOMETRY_TOL) -> np.ndarray:
    """Vertices of {x : normals @ x <= offsets}, counter-clockwise, starting nearest the origin.

    Every pair of boundary lines is intersected; points violating any half-plane
    by more than tol are dropped.
    """
    normals = np.asarray(normals, dtype=float)
    offsets = np.asarray(offsets, dtype=float)
    first, second = np.triu_indices(len(offsets), k=1)
    systems = np.stack([normals[first], normals[second]], axis=1)
    solvable = np.abs(np.linalg.det(systems)) > tol
    rhs = np.stack([offsets[first], offsets[second]], axis=1)[solvable]
    points = np.linalg.solve(systems[solvable], rhs[..., None])[..., 0]

    feasible = np.all(points @ normals.T <= offsets + tol, axis=1)
    points = np.round(points[feasible], VERTEX_DECIMALS) + 0.0

    unique = []
    for p in points:
        if all(np.linalg.norm(p - q) > tol for q in unique):
            unique.append(p)
    unique = np.array(unique).reshape(-1, 2)
    if len(unique) < 3:
        return unique

    ordered = unique[ConvexHull(unique).vertices]
    start = int(np.argmin(np.linalg.norm(ordered, axis=1)))
    return np.roll(ordered, -start, axis=0)

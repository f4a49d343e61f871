from utils.polytope.contains_point import contains_point
from utils.polytope.enumerate_vertices import enumerate_vertices
from utils.polytope.flag_redundant import flag_redundant
from utils.polytope.tight_mask import tight_mask

__all__ = [
    "contains_point",
    "enumerate_vertices",
    "flag_redundant",
    "tight_mask",
]

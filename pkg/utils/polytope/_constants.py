GEOMETRY_TOL = 1e-9

# Intersection points are rounded to this many decimals before deduplication.
VERTEX_DECIMALS = 12

# Redundancy: a facet-defining half-plane is tight at two distinct vertices.
MIN_TIGHT_VERTICES = 2

from fastapi import APIRouter, HTTPException

from controllers import region as region_controller
from models.config import RunConfig
from services.artifacts.client import get_out_dir
from services.artifacts.service import ArtifactStore

router = APIRouter(prefix="/regions")


@router.post("")
def compute_regions(body: RunConfig):
    """Outer, inner and baseline DoF regions with the active case and corner points.

    Returns the region summary and writes the vertex CSV alongside it.
    Raises 422 if the exponents or antenna counts are out of range.
    """
    try:
        return region_controller.run_region(ArtifactStore(get_out_dir(body.out_dir)), body)
    except ValueError as e:
        raise HTTPException(status_code=422, detail=str(e))

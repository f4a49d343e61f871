from fastapi import APIRouter, HTTPException

from controllers import plan as plan_controller
from models.config import RunConfig
from services.artifacts.client import get_out_dir
from services.artifacts.service import ArtifactStore
from services.scheme_plan import DeltaBarOutOfRangeError, InfeasibleError, TargetInactiveError

router = APIRouter(prefix="/plans")


@router.post("")
def build_plan(body: RunConfig):
    """Calibrate the scheme for a target corner point (or an explicit delta_bar/omega).

    Returns the plan summary with its bit ledger.
    Raises 409 if the target is inactive, delta_bar is out of range or no delta sequence exists.
    Raises 422 if the configuration is invalid.
    """
    try:
        return plan_controller.run_plan(ArtifactStore(get_out_dir(body.out_dir)), body)
    except (TargetInactiveError, DeltaBarOutOfRangeError, InfeasibleError) as e:
        raise HTTPException(status_code=409, detail=str(e))
    except ValueError as e:
        raise HTTPException(status_code=422, detail=str(e))

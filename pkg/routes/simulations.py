from fastapi import APIRouter, HTTPException

from controllers import simulate as simulate_controller
from models.config import RunConfig
from services.artifacts.client import get_out_dir
from services.artifacts.service import ArtifactStore
from services.scheme_plan import DeltaBarOutOfRangeError, InfeasibleError, TargetInactiveError

router = APIRouter(prefix="/simulations")


@router.post("")
def run_simulation(body: RunConfig):
    """Run the scheme over the SNR ladder and regress delivered rates against log2 P.

    Returns d1_hat, d2_hat, their standard errors and the per-SNR margins.
    Raises 409 if the plan cannot be built.
    Raises 422 if the configuration or SNR ladder is invalid.
    """
    try:
        return simulate_controller.run_simulation(ArtifactStore(get_out_dir(body.out_dir)), body)
    except (TargetInactiveError, DeltaBarOutOfRangeError, InfeasibleError) as e:
        raise HTTPException(status_code=409, detail=str(e))
    except ValueError as e:
        raise HTTPException(status_code=422, detail=str(e))

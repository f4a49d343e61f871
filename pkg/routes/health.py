from fastapi import APIRouter

from services.artifacts.client import get_out_dir

router = APIRouter()


@router.get("/health")
def health():
    out_dir = get_out_dir()
    if out_dir.exists() and not out_dir.is_dir():
        return {"status": "error", "out_dir": str(out_dir), "detail": "output path is not a directory"}
    return {"status": "ok", "out_dir": str(out_dir)}

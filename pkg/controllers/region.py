"""DoF region pipeline: outer/inner/baseline regions, case analysis and corner points."""
import logging

from models.config import RunConfig
from models.region import BaselineMode, DofRegion
from services.artifacts.service import ArtifactStore
from services.dof_regions import (
    active_case,
    baseline_region,
    corner_points,
    delayed_csit_sufficient,
    inner_region,
    max_sum_dof,
    outer_region,
    region_equal,
    sufficient_delayed_threshold,
)
from utils.report import format_number

logger = logging.getLogger(__name__)

REGION_CSV = "regions.csv"
REGION_JSON = "region_summary.json"
REGION_COLUMNS = ["region", "vertex_index", "d1", "d2"]


def compute_regions(config: RunConfig) -> dict[str, DofRegion]:
    cfg, q = config.antenna_config(), config.quality_exponents()
    return {
        "outer": outer_region(cfg, q, config.tol),
        "inner": inner_region(cfg, q, config.tol),
        "full_csit": baseline_region(cfg, BaselineMode.FULL_CSIT, config.tol),
        "no_csit": baseline_region(cfg, BaselineMode.NO_CSIT, config.tol),
    }


def vertex_rows(regions: dict[str, DofRegion]) -> list[dict]:
    return [
        {"region": name, "vertex_index": i, "d1": format_number(d1), "d2": format_number(d2)}
        for name, region in regions.items()
        for i, (d1, d2) in enumerate(region.vertices)
    ]


def region_summary(config: RunConfig, regions: dict[str, DofRegion]) -> dict:
    cfg, q = config.antenna_config(), config.quality_exponents()
    report = active_case(cfg, q)
    return {
        "config": config.model_dump(mode="json"),
        "case": report.name,
        "threshold": sufficient_delayed_threshold(cfg, q),
        "delayed_csit_sufficient": delayed_csit_sufficient(cfg, q),
        "inner_equals_outer": region_equal(regions["inner"], regions["outer"], config.tol),
        "corner_points": [{"label": p.label.value, "d1": p.d1, "d2": p.d2} for p in corner_points(cfg, q)],
        "regions": {
            name: {
                "halfplanes": [
                    {"name": h.name, "a": h.a, "b": h.b, "c": h.c, "redundant": h.redundant}
                    for h in region.halfplanes
                ],
                "vertices": [list(v) for v in region.vertices],
                "max_sum_dof": max_sum_dof(region),
            }
            for name, region in regions.items()
        },
    }


def run_region(store: ArtifactStore, config: RunConfig) -> dict:
    logger.info("Computing DoF regions...")
    regions = compute_regions(config)
    for name, region in regions.items():
        logger.info("  %s: %s vertices, %s active half-planes", name, len(region.vertices), len(region.active_halfplanes))

    summary = region_summary(config, regions)
    logger.info("  case %s, threshold %.4g", summary["case"], summary["threshold"])
    store.write_rows(REGION_CSV, REGION_COLUMNS, vertex_rows(regions))
    store.write_json(REGION_JSON, summary)
    logger.info("  wrote %s and %s to %s", REGION_CSV, REGION_JSON, store.root)
    return summary

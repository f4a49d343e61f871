"""Scheme planning pipeline: calibrate, build the phase plan and write its bit ledger."""
import logging

from models.channel import ChannelKind
from models.config import RunConfig
from models.plan import SYMBOLS, PhasePlan
from services.artifacts.service import ArtifactStore
from services.dof_regions import active_case
from services.scheme_plan import build_phase_plan, delta_bar_bound, plan_for_point
from utils.report import format_number, to_jsonable

logger = logging.getLogger(__name__)

LEDGER_CSV = "plan_ledger.csv"
SLOTS_CSV = "plan_slots.csv"
PLAN_JSON = "plan_summary.json"
LEDGER_COLUMNS = ["basis", "private_1", "private_2", "common", "quantized", "delta_com"]
IC_LEDGER_COLUMNS = LEDGER_COLUMNS + ["common_tx1", "common_tx2"]


def build_plan(config: RunConfig) -> PhasePlan:
    """Plan for an explicit (delta_bar, omega) when given, else for the target corner point.

    Raises ValueError if neither is set.
    """
    cfg, q = config.antenna_config(), config.quality_exponents()
    if config.delta_bar is not None:
        return plan_for_point(cfg, q, config.delta_bar, config.omega, config.t_slots, config.s_phases, target=config.target)
    if config.target is None:
        raise ValueError("a plan needs a target corner point or delta_bar/omega")
    return build_phase_plan(cfg, q, config.target, config.t_slots, config.s_phases)


def ledger_columns(plan: PhasePlan) -> list[str]:
    return IC_LEDGER_COLUMNS if plan.kind == ChannelKind.IC else LEDGER_COLUMNS


def ledger_rows(plan: PhasePlan) -> list[dict]:
    return [
        {"basis": basis, **{k: format_number(v) for k, v in values.items()}}
        for basis, values in plan.ledger().items()
    ]


def slot_columns() -> list[str]:
    exponents = [f"{name}_{i}" for name in ("delta", "alpha", "beta") for i in (1, 2)]
    tables = [f"{table}_{symbol}" for table in ("power", "rate") for symbol in SYMBOLS]
    return ["slot"] + exponents + tables + ["quant_bits_1", "quant_bits_2"]


def slot_rows(plan: PhasePlan) -> list[dict]:
    quant = plan.quant_slot_budget
    rows = []
    for t in range(plan.t_slots):
        row = {"slot": t}
        for name, values in (("delta", plan.delta_seq), ("alpha", plan.alpha_seq), ("beta", plan.beta_seq)):
            for i in range(2):
                row[f"{name}_{i + 1}"] = format_number(values[i, t])
        for symbol in SYMBOLS:
            row[f"power_{symbol}"] = format_number(plan.power_table[symbol][t])
            row[f"rate_{symbol}"] = format_number(plan.rate_table[symbol][t])
        row["quant_bits_1"] = format_number(quant[0, t])
        row["quant_bits_2"] = format_number(quant[1, t])
        rows.append(row)
    return rows


def plan_summary(config: RunConfig, plan: PhasePlan) -> dict:
    cfg, q = config.antenna_config(), config.quality_exponents()
    return {
        "config": config.model_dump(mode="json"),
        "case": active_case(cfg, q).name,
        "target": plan.target.value if plan.target is not None else None,
        "delta_bar": plan.delta_bar,
        "delta_bar_bound": delta_bar_bound(cfg, q),
        "omega": plan.omega,
        "dof_point": list(plan.dof_point),
        "ledger": to_jsonable(plan.ledger()),
        "ic_common_split": to_jsonable(plan.ic_common_split),
        "sequence_residual": plan.sequence_residual,
    }


def run_plan(store: ArtifactStore, config: RunConfig) -> dict:
    logger.info("Building phase plan...")
    plan = build_plan(config)
    per_slot = plan.ledger()["per_slot"]
    logger.info("  common %.4g, quantized %.4g, delta_com %.4g per slot", per_slot["common"], per_slot["quantized"], per_slot["delta_com"])

    summary = plan_summary(config, plan)
    store.write_rows(LEDGER_CSV, ledger_columns(plan), ledger_rows(plan))
    store.write_rows(SLOTS_CSV, slot_columns(), slot_rows(plan))
    store.write_json(PLAN_JSON, summary)
    logger.info("  wrote %s, %s and %s to %s", LEDGER_CSV, SLOTS_CSV, PLAN_JSON, store.root)
    return summary

"""Command line entry point: region, plan and simulate.

Settings come from RunConfig defaults, then a JSON file given by --config, then
explicit flags. Exit codes: 0 success, 2 invalid input, 3 infeasible plan, 4 runtime error.
"""
from dotenv import load_dotenv
load_dotenv()

import argparse
import json
import logging
import os
import sys

from pydantic import ValidationError

from controllers.plan import run_plan
from controllers.region import run_region
from controllers.simulate import run_simulation
from models.config import RunConfig
from services.artifacts.client import get_out_dir
from services.artifacts.service import ArtifactStore
from services.scheme_plan import DeltaBarOutOfRangeError, InfeasibleError, TargetInactiveError

logger = logging.getLogger("cli")

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_INFEASIBLE = 3
EXIT_RUNTIME = 4

COMMANDS = {
    "region": run_region,
    "plan": run_plan,
    "simulate": run_simulation,
}

# flags that map one-to-one onto RunConfig fields
FLAG_FIELDS = (
    "kind",
    "m",
    "n",
    "alpha",
    "beta",
    "target",
    "delta_bar",
    "omega",
    "t_slots",
    "s_phases",
    "snr",
    "trials",
    "seed",
    "eta",
    "backoff_bits",
    "tol",
    "out_dir",
)


def _corner_label(value: str) -> str:
    """Accept E*, Estar or E; starred labels map to their enum value."""
    return value[:-1] + "star" if value.endswith("*") else value


def build_parser() -> argparse.ArgumentParser:
    shared = argparse.ArgumentParser(add_help=False, argument_default=argparse.SUPPRESS)
    shared.add_argument("--config", help="JSON file with RunConfig fields")
    shared.add_argument("--kind", choices=["bc", "ic"])
    shared.add_argument("--m", type=int, help="transmit antennas per transmitter")
    shared.add_argument("--n", type=int, help="receive antennas per receiver")
    shared.add_argument("--alpha", type=float, nargs=2, metavar=("A1", "A2"), help="average current-CSIT exponents")
    shared.add_argument("--beta", type=float, nargs=2, metavar=("B1", "B2"), help="average delayed-CSIT exponents")
    shared.add_argument("--target", type=_corner_label, help="corner point, e.g. Estar or E*")
    shared.add_argument("--delta-bar", dest="delta_bar", type=float)
    shared.add_argument("--omega", type=float)
    shared.add_argument("--t-slots", dest="t_slots", type=int)
    shared.add_argument("--s-phases", dest="s_phases", type=int)
    shared.add_argument("--snr", type=float, nargs="+", help="linear SNR ladder")
    shared.add_argument("--trials", type=int, help="phases per SNR point")
    shared.add_argument("--seed", type=int)
    shared.add_argument("--eta", type=int, help="delayed CSIT lag in slots")
    shared.add_argument("--backoff-bits", dest="backoff_bits", type=float)
    shared.add_argument("--tol", type=float)
    shared.add_argument("--out-dir", dest="out_dir", help="output directory (default $DOF_OUT_DIR or ./out)")
    shared.add_argument("--log-level", dest="log_level")

    parser = argparse.ArgumentParser(prog="dof", description="DoF regions and phase-Markov scheme under imperfect delayed CSIT")
    commands = parser.add_subparsers(dest="command", required=True)
    commands.add_parser("region", parents=[shared], help="write inner/outer/baseline regions and corner points")
    commands.add_parser("plan", parents=[shared], help="write the calibrated phase plan and bit ledger")
    commands.add_parser("simulate", parents=[shared], help="simulate the scheme and regress DoF slopes")
    return parser


def load_config(args: argparse.Namespace) -> RunConfig:
    """RunConfig from defaults, then the --config file, then explicit flags."""
    data = {}
    config_path = getattr(args, "config", None)
    if config_path:
        with open(config_path) as f:
            data = json.load(f)
        if not isinstance(data, dict):
            raise ValueError(f"{config_path}: expected a JSON object")
    for name in FLAG_FIELDS:
        if hasattr(args, name):
            data[name] = getattr(args, name)
    return RunConfig.model_validate(data)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    level = getattr(args, "log_level", None) or os.environ.get("DOF_LOG_LEVEL") or "INFO"

    try:
        logging.basicConfig(level=level.upper(), format="%(levelname)s %(name)s: %(message)s")
        config = load_config(args)
        store = ArtifactStore(get_out_dir(config.out_dir))
        COMMANDS[args.command](store, config)
    except (TargetInactiveError, DeltaBarOutOfRangeError, InfeasibleError) as e:
        print(f"infeasible plan: {e}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except (ValidationError, ValueError, FileNotFoundError) as e:
        print(f"invalid input: {e}", file=sys.stderr)
        return EXIT_INVALID
    except Exception as e:
        logger.exception("run failed")
        print(f"error: {e}", file=sys.stderr)
        return EXIT_RUNTIME
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())

from utils.numeric.allocate_levels import allocate_levels
from utils.numeric.complex_gaussian import complex_gaussian
from utils.numeric.gaussian_quantizer_mse import gaussian_quantizer_mse
from utils.numeric.gaussian_step import gaussian_step
from utils.numeric.mutual_information import mutual_information
from utils.numeric.positive_part import positive_part
from utils.numeric.solve_slot_deltas import solve_slot_deltas
from utils.numeric.uniform_quantize import uniform_quantize
from utils.numeric.unit_columns import unit_columns
from utils.numeric.unit_quantizer_mse import unit_quantizer_mse

__all__ = [
    "allocate_levels",
    "complex_gaussian",
    "gaussian_quantizer_mse",
    "gaussian_step",
    "mutual_information",
    "positive_part",
    "solve_slot_deltas",
    "uniform_quantize",
    "unit_columns",
    "unit_quantizer_mse",
]

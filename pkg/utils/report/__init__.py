from utils.report.format_number import format_number
from utils.report.to_jsonable import to_jsonable

__all__ = [
    "format_number",
    "to_jsonable",
]

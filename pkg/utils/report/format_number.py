def format_number(value: float) -> str:
    """Nine significant digits, as written to every CSV; negative zero prints as 0."""
    return "%.9g" % (float(value) + 0.0)

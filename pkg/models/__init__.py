"""
Pydantic models and dataclasses shared by the region, plan and simulation layers.
"""

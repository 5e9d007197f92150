"""Existence tests and searches for cyclic (v, k, lambda) difference sets."""

from .battery import BatteryConfig, run_battery
from .params import InvalidParameters, ParamSet, make_params
from .results import Certificate, Status, TestResult, Verdict

__all__ = [
    "BatteryConfig",
    "Certificate",
    "InvalidParameters",
    "ParamSet",
    "Status",
    "TestResult",
    "Verdict",
    "make_params",
    "run_battery",
]
